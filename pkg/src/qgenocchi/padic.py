"""p-adic valuations and truncated alternating (fermionic-style) sums.

The truncated sum at level N is exact rational arithmetic:

    S_N(f) = (1 / [p^N]_{-q^beta}) * sum_{xi=0}^{p^N - 1} q^(beta*xi) f(xi) (-1)^xi,

where the integrand f carries its own q^(-beta*xi) factor per its
``IntegrandSpec`` and the normalizer is the bracket of p^N in base
-q^beta. Convergence is diagnosed p-adically: only the *error* of S_N
against an exact closed-form reference is measured, via its valuation,
and a healthy profile has non-decreasing valuations that strictly grow
from first to last truncation level. Contexts require q = 1 + p*t with
nonzero integer t, so q-powers are p-adically close to 1 and the limits
exist.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from . import bernstein
from .genocchi import TablePool, genocchi_poly
from .qnum import QPoint, Rat, Weights, format_rat, q_bracket, q_pow

KIND_CONSTANT_ONE = "constant_one"
KIND_GENOCCHI_KERNEL = "genocchi_kernel"
KIND_REFLECTED_KERNEL = "reflected_kernel"
KIND_BERNSTEIN_PRODUCT = "bernstein_product"
INTEGRAND_KINDS = (
    KIND_CONSTANT_ONE,
    KIND_GENOCCHI_KERNEL,
    KIND_REFLECTED_KERNEL,
    KIND_BERNSTEIN_PRODUCT,
)

#: Largest truncation level worth running by default: p^N stays <= 700 terms.
_DEFAULT_TERM_BUDGET = 700


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def valuation(r: Rat, p: int) -> int | float:
    """The p-adic valuation of a rational; +infinity (math.inf) for 0."""
    if not is_odd_prime(p) and p != 2:
        raise ValueError(f"p must be prime, got {p}")
    r = Rat(r)
    if r == 0:
        return math.inf
    v = 0
    numerator = abs(r.numerator)
    while numerator % p == 0:
        numerator //= p
        v += 1
    denominator = r.denominator
    while denominator % p == 0:
        denominator //= p
        v -= 1
    return v


def default_n_max(p: int) -> int:
    """Largest N with p^N <= the default term budget (5 for p=3, 4 for p=5)."""
    n = 1
    while p ** (n + 1) <= _DEFAULT_TERM_BUDGET:
        n += 1
    return n


@dataclass(frozen=True)
class PadicContext:
    """An odd prime p, a truncation ceiling, and a compatible q = 1 + p*t."""

    p: int
    n_max: int
    q: QPoint

    def __post_init__(self) -> None:
        if not is_odd_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")
        qv = self.q.value
        if qv.denominator != 1 or (qv.numerator - 1) % self.p != 0:
            raise ValueError(
                f"q must be an integer of the form 1 + {self.p}*t, "
                f"got q={format_rat(qv)}"
            )

    @classmethod
    def make(cls, p: int, q_value: int | Rat, n_max: int | None = None) -> PadicContext:
        """Context with the default truncation ceiling for p."""
        return cls(p, n_max if n_max is not None else default_n_max(p), QPoint(q_value))


@dataclass(frozen=True)
class IntegrandSpec:
    """One member of the integrand battery; ``kind`` selects the shape.

    constant_one:            f(xi) = 1
    genocchi_kernel(n, x):   f(xi) = q^(-beta*xi) [x+xi]_{q^alpha}^n
    reflected_kernel(n):     f(xi) = q^(-beta*xi) [1-xi]_{q^(-alpha)}^n
    bernstein_product(k, degrees):
                             f(xi) = q^(-beta*xi) prod_i B_{k, n_i}(xi, q)
    """

    kind: str
    w: Weights
    n: int = 0
    x: int = 0
    k: int = 0
    degrees: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "degrees", tuple(self.degrees))
        if self.kind not in INTEGRAND_KINDS:
            raise ValueError(f"unknown integrand kind {self.kind!r}")
        if self.kind in (KIND_GENOCCHI_KERNEL, KIND_REFLECTED_KERNEL) and self.n < 0:
            raise ValueError(f"kernel power must be >= 0, got n={self.n}")
        if self.kind == KIND_BERNSTEIN_PRODUCT:
            if self.k < 0:
                raise ValueError(f"k must be >= 0, got {self.k}")
            if not self.degrees:
                raise ValueError("bernstein_product needs a non-empty degree list")
            if any(d < 0 for d in self.degrees):
                raise ValueError(f"degrees must be >= 0, got {self.degrees}")


def integrand_value(f: IntegrandSpec, xi: int, q: QPoint) -> Rat:
    """f(xi) exactly, including the integrand's own q^(-beta*xi) factor."""
    if f.kind == KIND_CONSTANT_ONE:
        return Rat(1)
    twist = q_pow(q, -f.w.beta * xi)
    if f.kind == KIND_GENOCCHI_KERNEL:
        return twist * q_bracket(f.x + xi, q.raised(f.w.alpha)) ** f.n
    if f.kind == KIND_REFLECTED_KERNEL:
        return twist * q_bracket(1 - xi, q.raised(-f.w.alpha)) ** f.n
    value = twist
    for degree in f.degrees:
        value *= bernstein.bernstein_eval(f.k, degree, f.w.alpha, xi, q)
    return value


def reference_value(f: IntegrandSpec, q: QPoint, pool: TablePool | None = None) -> Rat:
    """The exact closed-form limit the truncated sums converge to."""
    if f.kind == KIND_CONSTANT_ONE:
        return Rat(1)
    if f.kind == KIND_GENOCCHI_KERNEL:
        return genocchi_poly(f.n + 1, f.x, f.w, q) / (f.n + 1)
    if f.kind == KIND_REFLECTED_KERNEL:
        return bernstein.moment_expansion_sum(0, f.n, f.w, q, pool)
    spec = bernstein.BernsteinSpec(f.k, f.degrees, f.w.alpha)
    return bernstein.moment_integral_exact(spec, f.w.beta, q, pool)


def _normalizer(p: int, big_n: int, q: QPoint, beta: int) -> Rat:
    """[p^N]_{-q^beta} = (1 - (-q^beta)^(p^N)) / (1 + q^beta)."""
    q_beta = q_pow(q, beta)
    return (1 - (-q_beta) ** (p**big_n)) / (1 + q_beta)


def fermionic_partial_sum(f: IntegrandSpec, ctx: PadicContext, big_n: int) -> Rat:
    """S_N(f) for 1 <= N <= ctx.n_max, exactly."""
    if not 1 <= big_n <= ctx.n_max:
        raise ValueError(f"N must satisfy 1 <= N <= {ctx.n_max}, got {big_n}")
    q_beta = q_pow(ctx.q, f.w.beta)
    weight = Rat(1)
    total = Rat(0)
    for xi in range(ctx.p**big_n):
        total += weight * integrand_value(f, xi, ctx.q)
        weight *= -q_beta
    return total / _normalizer(ctx.p, big_n, ctx.q, f.w.beta)


class ProfileEntry(NamedTuple):
    level: int
    partial_sum: Rat
    valuation: int | float


@dataclass(frozen=True)
class ConvergenceProfile:
    """Truncated sums S_1..S_{n_max} with the valuation of each error."""

    entries: tuple[ProfileEntry, ...]

    @property
    def valuations(self) -> tuple[int | float, ...]:
        return tuple(entry.valuation for entry in self.entries)


def convergence_profile(
    f: IntegrandSpec, ctx: PadicContext, reference: Rat
) -> ConvergenceProfile:
    """Profile S_N and valuation(S_N - reference, p) for N = 1..ctx.n_max.

    ``reference`` must be the exact closed-form value (see
    ``reference_value``); the raw sums are accumulated once and snapshotted
    at each power of p, which agrees with ``fermionic_partial_sum`` level
    by level.
    """
    q_beta = q_pow(ctx.q, f.w.beta)
    weight = Rat(1)
    total = Rat(0)
    entries = []
    next_level = 1
    cutoff = ctx.p**next_level
    for xi in range(ctx.p**ctx.n_max):
        total += weight * integrand_value(f, xi, ctx.q)
        weight *= -q_beta
        if xi + 1 == cutoff:
            partial = total / _normalizer(ctx.p, next_level, ctx.q, f.w.beta)
            entries.append(
                ProfileEntry(next_level, partial, valuation(partial - reference, ctx.p))
            )
            next_level += 1
            cutoff = ctx.p**next_level
    return ConvergenceProfile(tuple(entries))


def monotone_convergent(profile: ConvergenceProfile) -> bool:
    """The suite's convergence verdict for a profile: valuations never
    decrease and the final strictly exceeds the first — or every error is
    exactly zero (all valuations infinite)."""
    vals = profile.valuations
    if not vals:
        return False
    if all(v == math.inf for v in vals):
        return True
    if any(b < a for a, b in zip(vals, vals[1:])):
        return False
    return vals[-1] > vals[0]
