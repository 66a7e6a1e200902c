"""Select the prime-field elimination backend at import time."""

try:
    from . import _modp_c as _backend

    BACKEND = "cython"
except ImportError:  # extension not built; numpy fallback
    from . import _modp_py as _backend

    BACKEND = "python"


def rref_mod_p(a, p):
    """In-place RREF of an int64 array mod p; returns (rank, pivot columns)."""
    return _backend.rref_mod_p(a, p)
