"""Idempotent semiring algebra: free semimodules, kernel operators and tensor products."""

from .exttensor import (
    ExtTensor,
    FinSemimodule,
    PolyMapTable,
    all_tensors,
    canonical_pi,
    direct_product,
    factorize_ext,
    from_free,
    full_cube,
    is_tensor,
    span,
    tau_hull,
    tensor_add,
    tensor_scalar,
    to_free,
    validate_polylinear,
    validate_semimodule,
)
from .freemod import FreeVector, IndexMismatch, IndexSet, delta, vec_add, vector
from .freetensor import PureSum, TensorKernel, from_pure_sum, outer, structural_iso, to_pure_sum
from .kernelop import Kernel, apply, canonical_p, compose, extract, kron, nuclear_decompose
from .semiring import (
    DomainError,
    Semiring,
    UnsupportedSemiring,
    boolean,
    builtin,
    chain,
    rmax,
    rmax_top,
    rmin,
    validate_semiring,
)

__version__ = "0.1.0"
