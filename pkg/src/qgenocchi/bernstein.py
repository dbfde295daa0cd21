"""Weighted q-Bernstein basis values and their exact moment calculus.

The basis element of degree n and lower index k is

    B_{k,n}(x, q) = C(n,k) [x]_{q^alpha}^k [1-x]_{q^(-alpha)}^(n-k).

Products of basis elements integrate, against the alternating
(beta-weighted) measure behind the genocchi module, into signed binomial
combinations of the moments g_{m+1}/(m+1). The workhorse is the exact
bracket identity [1-x]_{q^(-alpha)} = 1 - [x]_{q^alpha}: it turns every
such product into a polynomial in [x]_{q^alpha}, and the integral of
q^(-beta*x) [x]_{q^alpha}^m is g_{m+1}/(m+1) by definition of the family.
That expansion route (``moment_integral_exact``/``moment_expansion_sum``)
is the oracle every branch formula (``moment_theorem_rhs``/
``moment_branch_rhs``) is compared against, in both its printed and
corrected variants.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .genocchi import TablePool, _require_variant, _table, VARIANT_PRINTED
from .qnum import QPoint, Rat, Weights, binom, q_bracket, q_pow, two_bracket


@dataclass(frozen=True)
class BernsteinSpec:
    """A product of same-k basis elements: degrees (n_1..n_s), index k, weight alpha."""

    k: int
    degrees: tuple[int, ...]
    alpha: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "degrees", tuple(self.degrees))
        if self.k < 0:
            raise ValueError(f"k must be >= 0, got {self.k}")
        if not self.degrees:
            raise ValueError("degrees must be non-empty")
        if any(d < 0 for d in self.degrees):
            raise ValueError(f"degrees must be >= 0, got {self.degrees}")
        if self.alpha < 1:
            raise ValueError(f"alpha must be >= 1, got {self.alpha}")

    @property
    def fold(self) -> int:
        return len(self.degrees)

    @property
    def total_degree(self) -> int:
        return sum(self.degrees)

    @property
    def admissible(self) -> bool:
        """Whether the branch formulas apply: sum(degrees) > s*k."""
        return self.total_degree > self.fold * self.k


def bernstein_eval(k: int, n: int, alpha: int, x: int, q: QPoint) -> Rat:
    """B_{k,n}(x, q) exactly; zero outside 0 <= k <= n (the binomial
    coefficient vanishes there, so the basis symmetry stays total).

    Endpoints collapse to Kronecker deltas: x = 0 gives 1 iff k = 0,
    x = 1 gives 1 iff k = n.
    """
    if n < 0:
        raise ValueError(f"degree must be >= 0, got n={n}")
    if alpha < 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    coeff = binom(n, k)
    if coeff == 0:
        return Rat(0)
    bracket_x = q_bracket(x, q.raised(alpha))
    bracket_1x = q_bracket(1 - x, q.raised(-alpha))
    return coeff * bracket_x**k * bracket_1x ** (n - k)


def symmetry_sides(k: int, n: int, alpha: int, x: int, q: QPoint) -> tuple[Rat, Rat]:
    """(B_{k,n}(x, q), B_{n-k,n}(1-x, 1/q)) — equal by the basis symmetry."""
    lhs = bernstein_eval(k, n, alpha, x, q)
    rhs = bernstein_eval(n - k, n, alpha, 1 - x, q.inverse())
    return lhs, rhs


def basis_moment(power: int, w: Weights, q: QPoint, pool: TablePool | None = None) -> Rat:
    """The single moment: the alternating-measure integral of
    q^(-beta*x) [x]_{q^alpha}^power, which equals g_{power+1}/(power+1)."""
    if power < 0:
        raise ValueError(f"moment power must be >= 0, got {power}")
    return _table(pool, w, q).number(power + 1) / (power + 1)


def moment_expansion_sum(
    power: int, width: int, w: Weights, q: QPoint, pool: TablePool | None = None
) -> Rat:
    """Integral of q^(-beta*x) [x]_{q^alpha}^power [1-x]_{q^(-alpha)}^width,
    by binomial expansion of [1-x] = 1 - [x]:

        sum_{l=0}^{width} C(width, l) (-1)^l g_{l+power+1} / (l+power+1).
    """
    if width < 0:
        raise ValueError(f"expansion width must be >= 0, got {width}")
    acc = Rat(0)
    sign = 1
    for l in range(width + 1):
        acc += sign * binom(width, l) * basis_moment(power + l, w, q, pool)
        sign = -sign
    return acc


def moment_integral_exact(
    spec: BernsteinSpec, beta: int, q: QPoint, pool: TablePool | None = None
) -> Rat:
    """Exact integral of q^(-beta*x) * prod_i B_{k, n_i}(x, q) against the
    alternating measure. Zero whenever some n_i < k (the binomial
    prefactor vanishes); otherwise the expansion route applies verbatim.
    """
    w = Weights(spec.alpha, beta)
    prefactor = prod(binom(d, spec.k) for d in spec.degrees)
    if prefactor == 0:
        return Rat(0)
    sk = spec.fold * spec.k
    return prefactor * moment_expansion_sum(sk, spec.total_degree - sk, w, q, pool)


def moment_branch_rhs(
    total_degree: int,
    sk: int,
    w: Weights,
    q: QPoint,
    variant: str,
    pool: TablePool | None = None,
) -> Rat:
    """The prefactor-free branch formula with numbers taken at 1/q:

        sk = 0:  (1 + q^beta) + F * g_{N+1, 1/q} / (N+1)
        sk > 0:  sum_{l=0}^{sk} C(sk, l) (-1)^(sk+l)
                    ((1 + q^beta) + F * g_{N-l+1, 1/q} / (N-l+1))

    with N = total_degree and F = q^(alpha-beta) for the printed variant,
    q^beta for the corrected one. Requires N > sk so every index stays
    positive.
    """
    _require_variant(variant)
    if total_degree <= sk:
        raise ValueError(
            f"inadmissible: total degree {total_degree} must exceed s*k = {sk}"
        )
    if variant == VARIANT_PRINTED:
        factor = q_pow(q, w.alpha - w.beta)
    else:
        factor = q_pow(q, w.beta)
    bracket2 = two_bracket(w.beta, q)
    inv_table = _table(pool, w, q.inverse())
    if sk == 0:
        return bracket2 + factor * inv_table.number(total_degree + 1) / (total_degree + 1)
    acc = Rat(0)
    for l in range(sk + 1):
        sign = -1 if (sk + l) % 2 else 1
        index = total_degree - l + 1
        acc += sign * binom(sk, l) * (bracket2 + factor * inv_table.number(index) / index)
    return acc


def moment_theorem_rhs(
    spec: BernsteinSpec,
    beta: int,
    q: QPoint,
    variant: str,
    pool: TablePool | None = None,
) -> Rat:
    """The branch formula for the full integral, i.e. ``moment_branch_rhs``
    carrying the binomial prefactor prod_i C(n_i, k) on the k > 0 branch.

    Rejects inadmissible specs (sum(degrees) <= s*k), naming the violated
    inequality. With the corrected variant this equals
    ``moment_integral_exact`` on every admissible spec; the printed
    variant differs whenever q^(alpha-beta) != q^beta multiplies a nonzero
    number sum.
    """
    if not spec.admissible:
        raise ValueError(
            f"inadmissible degrees: sum(degrees) = {spec.total_degree} "
            f"must exceed s*k = {spec.fold * spec.k}"
        )
    w = Weights(spec.alpha, beta)
    bare = moment_branch_rhs(spec.total_degree, spec.fold * spec.k, w, q, variant, pool)
    if spec.k == 0:
        return bare
    return prod(binom(d, spec.k) for d in spec.degrees) * bare
