"""Prime-field arithmetic, exact linear algebra and truncated jets."""

from .field import DEFAULT_PRIME, check_prime, inv, is_prime
from .jets import (Jet, JetSpace, OrderBudgetError, Subspace, add, colon, embed,
                   multiplication_matrix,
                   ideal_span, jet_compose, jet_mul, jet_partial, jet_set_var_zero,
                   jet_space, quotient_dim, set_var_zero)
from .linalg import left_nullspace, matmul, nullspace, rank, reduce_rows, rref

__all__ = [
    "DEFAULT_PRIME", "check_prime", "inv", "is_prime",
    "Jet", "JetSpace", "OrderBudgetError", "Subspace", "add", "colon", "embed",
    "ideal_span", "multiplication_matrix", "jet_compose", "jet_mul", "jet_partial", "jet_set_var_zero",
    "jet_space", "quotient_dim", "set_var_zero",
    "left_nullspace", "matmul", "nullspace", "rank", "reduce_rows", "rref",
]
