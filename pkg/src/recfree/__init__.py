"""Exact tools for free, inductively free and recursively free rank-3 hyperplane arrangements."""

__version__ = "0.1.0"

from .arrangement import Arrangement, Hyperplane, MultiArrangement2D, make_arrangement  # noqa: E402
from .catalog import builtin, builtin_names  # noqa: E402
from .exactfield import QQ, cyclotomic_field, prime_field  # noqa: E402
from .freeness import is_free_rank3, multi_exponents  # noqa: E402
from .induction import find_if_certificate  # noqa: E402
from .lattice import build_lattice, char_poly, factor_exponents, lattice_isomorphic  # noqa: E402
from .recursion import candidate_hyperplanes, refute_recursive_freeness  # noqa: E402
