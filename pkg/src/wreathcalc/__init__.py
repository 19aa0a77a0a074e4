"""Coloured partition categories, their linear realizations and the
representation semiring of amalgamated free wreath products."""

import os as _os

_threads = _os.environ.get("WREATHCALC_THREADS")
if _threads:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        _os.environ.setdefault(_var, _threads)

from .errors import InputError, ResourceError, StructuralError, VerificationError, WreathError  # noqa: E402

__version__ = "0.1.0"

__all__ = ["InputError", "ResourceError", "StructuralError", "VerificationError", "WreathError"]
