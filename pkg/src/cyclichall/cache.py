"""Optional on-disk cache for interpolated counting polynomials.

When the environment variable AHS_CACHE names a file, fitted polynomials are
persisted there as versioned JSON together with the primes used for the fit
and for verification.  Writers publish atomically (write to a sibling temp
file, then rename); concurrent readers always see a complete document.
Values are canonical, so last-writer-wins races are harmless.
"""

from __future__ import annotations

import json
import os
import tempfile

CACHE_ENV = "AHS_CACHE"
CACHE_VERSION = 1

_loaded: dict | None = None
_loaded_path: str | None = None


def cache_path() -> str | None:
    return os.environ.get(CACHE_ENV) or None


def _encode_key(key) -> str:
    """Flatten a tuple of matrix keys / ints into a stable string."""

    def enc(part):
        if isinstance(part, tuple):
            return "(" + ",".join(enc(x) for x in part) + ")"
        return str(part)

    return enc(key)


def _empty_doc() -> dict:
    return {"version": CACHE_VERSION, "hall": {}, "aut": {}}


def _load() -> dict:
    global _loaded, _loaded_path
    path = cache_path()
    if path is None:
        return _empty_doc()
    if _loaded is not None and _loaded_path == path:
        return _loaded
    doc = _empty_doc()
    if os.path.exists(path):
        try:
            with open(path, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
            if raw.get("version") == CACHE_VERSION:
                doc = raw
        except (OSError, json.JSONDecodeError):
            pass
    _loaded, _loaded_path = doc, path
    return doc


def _save(doc: dict):
    path = cache_path()
    if path is None:
        return
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ahs-cache-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, sort_keys=True, separators=(",", ":"))
        os.replace(tmp, path)
    except OSError:
        try:
            os.unlink(tmp)
        except OSError:
            pass


def load_entry(section: str, key) -> dict[int, int] | None:
    if cache_path() is None:
        return None
    doc = _load()
    entry = doc.get(section, {}).get(_encode_key(key))
    if entry is None:
        return None
    return {int(e): int(c) for e, c in entry["poly"].items()}


def store_entry(section: str, key, poly: dict[int, int], fit_primes=(), verify_primes=()):
    if cache_path() is None:
        return
    doc = _load()
    doc.setdefault(section, {})[_encode_key(key)] = {
        "poly": {str(e): str(c) for e, c in sorted(poly.items())},
        "fit_primes": list(fit_primes),
        "verify_primes": list(verify_primes),
    }
    _save(doc)


def stats() -> dict:
    doc = _load()
    return {
        "path": cache_path(),
        "version": doc.get("version"),
        "hall_entries": len(doc.get("hall", {})),
        "aut_entries": len(doc.get("aut", {})),
    }


def clear():
    global _loaded
    path = cache_path()
    _loaded = None
    if path and os.path.exists(path):
        os.unlink(path)
