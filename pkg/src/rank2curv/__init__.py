"""Exact computations with rank 2 algebraic curvature tensors.

Everything is done over the rationals: curvature identities, plane operators
and their Jordan types, the Ivanov-Petrova test for R_phi, reconstruction of
a rank 2 skew map as T_{chi,xi} or +-mu T_phi, and realization of R_phi by a
graph hypersurface.
"""

from .classify import ip_class, is_admissible_chi_xi, is_admissible_phi, is_ip_by_sampling, is_self_adjoint
from .curvature import (
    BilinearSkewMap,
    CurvatureTensor4,
    JordanTag,
    JordanType,
    jordan_type,
    make_R_phi,
    make_T_chi_xi,
    make_T_phi,
    plane_operator,
    validate_symmetries,
)
from .errors import Rank2Error
from .exactlin import LinearMap, SignatureSpace, Subspace, Q
from .fixtures import fixture
from .realize import embed, gauss_curvature_tensor, verify_realization
from .reconstruct import ChiXi, PhiForm, decompose, verify_decomposition

__version__ = "0.1.0"

__all__ = [
    "BilinearSkewMap", "ChiXi", "CurvatureTensor4", "JordanTag", "JordanType", "LinearMap",
    "PhiForm", "Q", "Rank2Error", "SignatureSpace", "Subspace", "decompose", "embed",
    "fixture", "gauss_curvature_tensor", "ip_class", "is_admissible_chi_xi",
    "is_admissible_phi", "is_ip_by_sampling", "is_self_adjoint", "jordan_type",
    "make_R_phi", "make_T_chi_xi", "make_T_phi", "plane_operator", "validate_symmetries",
    "verify_decomposition", "verify_realization",
]
