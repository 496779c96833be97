import pytest

try:
    import mpmath  # noqa: F401

    HAVE_MPMATH = True
except ImportError:  # pragma: no cover
    HAVE_MPMATH = False

needs_mpmath = pytest.mark.skipif(not HAVE_MPMATH, reason="mpmath not installed")
