"""Tropical differential algebra over truncated power series with exact rational coefficients."""

from .diffalg import DiffMonomial, DiffPolynomial, ResiduePolynomial
from .errors import TropdiffError
from .initial import initial_part, initial_part_hu_gao, lift_initial_combination, q_sub
from .parse import parse_natset, parse_poly, parse_series
from .series import INF, TruncatedSeries
from .solver import CandidateUniverse, check_basis, solve_diff_ideal, solve_system, theorem_pp_compare
from .tropical import NatSet, TropDiffPolynomial, is_tropical_solution, trop_eval, tropicalize

__all__ = [
    "INF", "TruncatedSeries", "DiffMonomial", "DiffPolynomial", "ResiduePolynomial",
    "NatSet", "TropDiffPolynomial", "tropicalize", "trop_eval", "is_tropical_solution",
    "q_sub", "initial_part", "initial_part_hu_gao", "lift_initial_combination",
    "CandidateUniverse", "solve_system", "solve_diff_ideal", "check_basis", "theorem_pp_compare",
    "parse_poly", "parse_natset", "parse_series", "TropdiffError",
]
