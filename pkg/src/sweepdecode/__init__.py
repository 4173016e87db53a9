"""Approximate maximum-likelihood decoding of 2D Pauli codes by sweep-line
tensor network contraction."""

__version__ = "0.1.0"

from .tensor import DenseTensor, contract_pair, normalize_scale, svd_split

__all__ = [
    "DenseTensor",
    "contract_pair",
    "normalize_scale",
    "svd_split",
    "__version__",
]
