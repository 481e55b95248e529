"""Hot numeric kernels, dispatched to numba or numpy by ``WEAKCHAN_NUMBA``."""
from .._accel import USE_NUMBA
from . import _numpy

if USE_NUMBA:
    from . import _numba as _impl

    BACKEND = "numba"
else:
    _impl = _numpy
    BACKEND = "numpy"

jacobi_eigh = _impl.jacobi_eigh
mixture_logpdf = _impl.mixture_logpdf
blahut_arimoto = _impl.blahut_arimoto
nearest_codeword = _impl.nearest_codeword

__all__ = [
    "BACKEND",
    "jacobi_eigh",
    "mixture_logpdf",
    "blahut_arimoto",
    "nearest_codeword",
]
