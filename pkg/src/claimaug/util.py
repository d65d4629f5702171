"""Small shared helpers: seed derivation, atomic file writes, config parsing."""

from __future__ import annotations

import hashlib
import os
import tempfile

from .errors import ParseError


def derive_seed(*parts: object) -> int:
    """Derive a stable 64-bit seed from arbitrary parts.

    The same parts always give the same seed on any platform or process, so
    everything downstream of one master seed stays reproducible.
    """
    h = hashlib.blake2b(digest_size=8)
    for part in parts:
        h.update(repr(part).encode("utf-8"))
        h.update(b"\x1f")
    return int.from_bytes(h.digest(), "big")


def atomic_write_bytes(path: str, data: bytes) -> None:
    """Write bytes to path via a temp file + rename in the same directory."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def atomic_write_text(path: str, text: str) -> None:
    atomic_write_bytes(path, text.encode("utf-8"))


def parse_kv_config(text: str) -> dict[str, str]:
    """Parse a `key = value` config file.

    Blank lines and lines starting with `#` are ignored. Keys may repeat only
    if that is meaningful to the caller; later values win here.
    """
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {line!r}", line=lineno)
        key, value = line.split("=", 1)
        key = key.strip()
        if not key:
            raise ParseError("empty key", line=lineno)
        out[key] = value.strip()
    return out
