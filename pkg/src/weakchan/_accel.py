"""Backend switch for the hot kernels.

Set ``WEAKCHAN_NUMBA=0`` to force the pure-numpy path. The numba path is
used by default whenever numba imports cleanly.
"""
import os

_FLAG = os.environ.get("WEAKCHAN_NUMBA", "1").strip().lower()

try:
    import numba  # noqa: F401

    HAS_NUMBA = True
except ImportError:  # pragma: no cover
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and _FLAG not in ("0", "false", "no", "off")


def thread_cap():
    """Worker cap from ``WEAKCHAN_THREADS`` (default 1)."""
    raw = os.environ.get("WEAKCHAN_THREADS")
    if raw is None or raw.strip() == "":
        return 1
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        from .errors import InvalidArgs

        raise InvalidArgs(f"WEAKCHAN_THREADS must be a positive integer, got {raw!r}")
    return value
