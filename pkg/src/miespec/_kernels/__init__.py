"""Hot kernels for tridiagonal eigenvalue bisection.

A compiled Cython extension is preferred; when it is not importable (no
compiler at install time, unusual platform) a pure-Python twin with identical
semantics takes over.  ``BACKEND`` records which one is active.
"""

try:
    from ._sturm import bisect_lowest, sturm_count
    BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on build environment
    from ._sturm_py import bisect_lowest, sturm_count
    BACKEND = "python"


def available_backends():
    """Map backend name -> module, for benchmarks and cross-checks."""
    from . import _sturm_py
    found = {"python": _sturm_py}
    try:
        from . import _sturm
        found["compiled"] = _sturm
    except ImportError:  # pragma: no cover
        pass
    return found


__all__ = ["bisect_lowest", "sturm_count", "BACKEND", "available_backends"]
