"""Eigenvalue multiplicities of bipartite graphs and the rank sandwich.

The multiplicity of an eigenvalue mu (given through mu^2) in a bipartite
adjacency spectrum is obtained as the exact nullity of the Gram matrix minus
mu^2 times the identity, computed on the smaller side.  For a matrix of the
two-valued ensemble this multiplicity nu pins the exact rank inside
[m+n-2-nu, m+n+2-nu], with the lower bound floored at max(m, n).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateEnsembleError, GoodPairError, VerificationError
from .exactfield import as_fraction, format_scalar, scalar_sign, solve_monic_quadratic
from .ensemble import BipartiteGraph, TwoValuePair, matrix_from_bigraph, mu_squared
from .linalg import Matrix, _rank_rows_int


@dataclass
class SpectralReport:
    """Exact rank of an ensemble matrix together with its multiplicity bounds."""

    m: int
    n: int
    mu_squared: object
    nu: int
    rank_lower: int
    rank_upper: int
    exact_rank: int

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "mu_squared": format_scalar(self.mu_squared),
            "nu": self.nu,
            "rank_lower": self.rank_lower,
            "rank_upper": self.rank_upper,
            "exact_rank": self.exact_rank,
        }


def _gram_smaller_side(g: BipartiteGraph) -> list[list[int]]:
    """Gram matrix (B B^T or B^T B, whichever is smaller) via bitmask dots."""
    masks = g.row_masks if g.m <= g.n else g.column_masks()
    size = len(masks)
    return [[(masks[i] & masks[j]).bit_count() for j in range(size)] for i in range(size)]


def bigraph_multiplicity(g: BipartiteGraph, mu2) -> int:
    """Multiplicity of +sqrt(mu2) in the adjacency spectrum of the bipartite graph.

    Negative mu2 means the eigenvalue is imaginary and the multiplicity is 0.
    mu2 == 0 is rejected; positive mu2 must be rational and the count is the
    exact nullity of (Gram - mu2 * I) on the smaller side.
    """
    sign = scalar_sign(mu2)
    if sign == 0:
        raise ValueError("mu^2 == 0 is outside the supported multiplicity computation")
    if sign < 0:
        return 0
    mu2 = as_fraction(mu2)
    p, q = mu2.numerator, mu2.denominator
    s = _gram_smaller_side(g)
    size = len(s)
    if size == 0:
        return 0
    rows = []
    for i in range(size):
        row = [q * v for v in s[i]]
        row[i] -= p
        if any(row):
            rows.append(row)
    return size - _rank_rows_int(rows)


def rank_sandwich(pair: TwoValuePair, g: BipartiteGraph) -> SpectralReport:
    """Exact rank of the ensemble matrix of g, verified against its nu bounds.

    Requires f(a,a), f(b,b) and f(a,b) - f(b,a) all nonzero.  Raises
    VerificationError if the computed rank ever escapes the sandwich, which
    would indicate a genuine bug.
    """
    if not pair.is_good():
        raise GoodPairError("rank sandwich requires f(a,a) != 0 and f(b,b) != 0")
    if pair.value_ab() == pair.value_ba():
        raise DegenerateEnsembleError("rank sandwich requires f(a,b) != f(b,a)")
    mu2 = mu_squared(pair)
    nu = bigraph_multiplicity(g, mu2)
    m, n = g.m, g.n
    matrix = matrix_from_bigraph(pair, g)
    exact = matrix.rank()
    lower = max(max(m, n), m + n - 2 - nu)
    upper = m + n + 2 - nu
    if not lower <= exact <= upper:
        raise VerificationError(
            f"rank {exact} escapes [{lower}, {upper}] for m={m}, n={n}, nu={nu}, "
            f"mu^2={format_scalar(mu2)}"
        )
    return SpectralReport(
        m=m, n=n, mu_squared=mu2, nu=nu, rank_lower=lower, rank_upper=upper, exact_rank=exact
    )


def complete_minus_matching(n: int) -> BipartiteGraph:
    """K_{n,n} minus a perfect matching (biadjacency J - I)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    full = (1 << n) - 1
    return BipartiteGraph(n, n, [full ^ (1 << i) for i in range(n)])


def low_rank_matching_instance(theta, n: int, sign: str = "+"):
    """A rank <= n+3 member of the ensemble over (1^(n), beta^(n)).

    beta is the chosen root of x^2 - (2 + (1/theta - 1)^2) x + 1 = 0, which
    makes mu^2 == 1 an eigenvalue of K_{n,n} minus a perfect matching with
    multiplicity n - 1.  Returns (beta, matrix, report).
    """
    theta = Fraction(theta)
    if not 0 < theta < 1:
        raise ValueError(f"theta must lie in (0, 1), got {theta}")
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    coeff = 2 + (1 / theta - 1) ** 2
    plus, minus = solve_monic_quadratic(-coeff, 1)
    beta = plus if sign == "+" else minus
    pair = TwoValuePair.linear(theta, Fraction(1), beta)
    g = complete_minus_matching(n)
    report = rank_sandwich(pair, g)
    matrix = matrix_from_bigraph(pair, g)
    return beta, matrix, report


@dataclass
class RowlinsonReport:
    """Result of the multiplicity-versus-degree bound checks."""

    applicable: bool
    reason: str | None
    order: int
    nu: int | None = None
    max_degree: int | None = None
    bound_a_holds: bool | None = None
    bound_b_applicable: bool | None = None
    bound_b_holds: bool | None = None

    def to_dict(self) -> dict:
        return {
            "applicable": self.applicable,
            "reason": self.reason,
            "order": self.order,
            "nu": self.nu,
            "max_degree": self.max_degree,
            "bound_a_holds": self.bound_a_holds,
            "bound_b_applicable": self.bound_b_applicable,
            "bound_b_holds": self.bound_b_holds,
        }


def rowlinson_check(
    g: BipartiteGraph, mu2, assume_positive_root: bool = False
) -> RowlinsonReport:
    """Check nu <= order - 1 - d and, on equality, nu <= d - 1.

    Applies only to connected graphs of order > 5 with an eigenvalue mu not
    in {-1, 0} of multiplicity nu > 1.  Since only mu^2 is supplied, mu2 == 1
    is ambiguous between mu = 1 and mu = -1; it is treated as applicable only
    when the caller asserts the positive root is intended.  Unmet
    preconditions yield an inapplicable report, not a failure.
    """
    order = g.m + g.n
    if not g.is_connected():
        return RowlinsonReport(False, "graph is not connected", order)
    if order <= 5:
        return RowlinsonReport(False, "order must exceed 5", order)
    sign = scalar_sign(mu2)
    if sign == 0:
        return RowlinsonReport(False, "mu == 0 is excluded", order)
    if sign < 0:
        return RowlinsonReport(False, "mu^2 < 0 has no real eigenvalue", order)
    if mu2 == 1 and not assume_positive_root:
        return RowlinsonReport(
            False, "mu^2 == 1 is ambiguous between mu = 1 and mu = -1", order
        )
    nu = bigraph_multiplicity(g, mu2)
    if nu <= 1:
        return RowlinsonReport(False, f"multiplicity {nu} is not > 1", order, nu=nu)
    d = max(g.degrees())
    a_holds = nu <= order - 1 - d
    b_applicable = nu == order - 1 - d
    b_holds = nu <= d - 1 if b_applicable else None
    return RowlinsonReport(
        True,
        None,
        order,
        nu=nu,
        max_degree=d,
        bound_a_holds=a_holds,
        bound_b_applicable=b_applicable,
        bound_b_holds=b_holds,
    )
