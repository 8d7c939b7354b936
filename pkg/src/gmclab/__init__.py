"""gmclab: multiple gamma functions, Barnes beta distributions and the laws
of total mass of one-dimensional Gaussian multiplicative chaos."""
from gmclab.kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
