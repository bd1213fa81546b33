"""Exact post-Lie algebra structures on pairs of rational Lie algebras."""

from .exactla import Matrix, det, kernel, parse_rational, rref, solve_affine
from .liealg import Fingerprint, LieAlgebra, Subspace, check_jacobi, classify, direct_sum, semidirect
from .structures import AxiomReport, BilinearProduct, LiePair, check_postlie, check_prelie, induced_g

__all__ = [
    "AxiomReport", "BilinearProduct", "Fingerprint", "LieAlgebra", "LiePair", "Matrix", "Subspace",
    "check_jacobi", "check_postlie", "check_prelie", "classify", "det", "direct_sum", "induced_g",
    "kernel", "parse_rational", "rref", "semidirect", "solve_affine",
]
