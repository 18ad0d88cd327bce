import os

DEFAULT_MAX_PATHS = 10**6
DEFAULT_MAX_POLYTOPE_VERTICES = 12
DEFAULT_DEPTH = 8


def max_paths() -> int:
    """Enumeration cap, overridable through ``GAUGE_TRACE_MAX_PATHS``."""
    raw = os.environ.get("GAUGE_TRACE_MAX_PATHS")
    if not raw:
        return DEFAULT_MAX_PATHS
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_MAX_PATHS
    return value if value > 0 else DEFAULT_MAX_PATHS
