"""Exact symbolic engine for generalized Macdonald functions on N-fold Fock
tensor spaces and the matrix elements of the multi-valent vertex operator
defined by its exchange relations with the generating currents.

Everything is exact rational-function arithmetic over Q(p, s, u_i, v_i, w)
with q = p^2, t = s^2; the package verifies, at desk scale, the factorization
of the integral-form matrix elements into Nekrasov factors together with the
supporting identity layer (Pieri, Kac determinants, screened-vertex
constructions, Kajihara-Noumi transformations, singular vectors).
"""

from .scalar import Field, PoleError, Scalar, ScalarParseError
from .partitions import (NTuple, Partition, mk_ntuple, mk_partition,
                         ntuples, partitions, star_compare)
from .fock import FockRep, FockVector, apply_mode, fock_pairing, kac_check
from .macdonald import SymFunc, macdonald_P, macdonald_Q, pieri_multiply, qt_inner
from .genmac import GenMac
from .nekrasov import conformal_block, nekrasov, nekrasov_vanishes
from .hyper import (apply_D1, duality_pairing, euler_check_fast, fn_series,
                    kn_phi_series, nmulti, pn_series, principal_specialization_check,
                    transform_check)
from .screened import (R_coefficient, ScreenedProduct, genmac_via_screened,
                       screened_matrix_element, singular_vector)
from .mukade import Mukade, factorized_element, two_point

__version__ = "0.1.0"

__all__ = [
    "Field", "Scalar", "PoleError", "ScalarParseError",
    "Partition", "NTuple", "mk_partition", "mk_ntuple", "partitions", "ntuples",
    "star_compare",
    "FockVector", "FockRep", "apply_mode", "fock_pairing", "kac_check",
    "SymFunc", "macdonald_P", "macdonald_Q", "qt_inner", "pieri_multiply",
    "GenMac",
    "nekrasov", "nekrasov_vanishes", "conformal_block",
    "pn_series", "fn_series", "apply_D1", "kn_phi_series", "nmulti",
    "euler_check_fast", "duality_pairing", "principal_specialization_check",
    "transform_check",
    "ScreenedProduct", "genmac_via_screened", "R_coefficient",
    "screened_matrix_element", "singular_vector",
    "Mukade", "factorized_element", "two_point",
]
