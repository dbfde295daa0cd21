"""Exact rational scalars and the q-bracket calculus.

Every exact-mode quantity in this package is an arbitrary-precision
rational (``Rat``, which is ``fractions.Fraction``): automatically in
lowest terms, denominator positive, zero canonicalized to 0/1. Identities
in q are never manipulated symbolically; they are checked by exact
evaluation at validated rational sample points (``QPoint``), in the spirit
of polynomial identity testing — two expressions that agree at a battery
of distinct rational points, on grids wider than their degrees, agree as
rational functions.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

Rat = Fraction

#: Default sample battery for exact identity checks: exercises q > 1,
#: 0 < q < 1 and q < 0. No member can make 1 + q^(alpha*l) or 1 - q^alpha
#: vanish — for rational q that would force |q| = 1.
DEFAULT_Q_SAMPLES: tuple[Rat, ...] = (
    Rat(2),
    Rat(3),
    Rat(1, 2),
    Rat(2, 3),
    Rat(-2),
    Rat(5, 3),
)

_RAT_RE = re.compile(r"^-?\d+(?:/\d+)?$")


class PoleError(ArithmeticError):
    """A guard denominator (1 + q^(alpha*l) or 1 - q^alpha) vanished."""


def parse_rat(text: str) -> Rat:
    """Parse the canonical rational literal ``a/b`` (plain ``a`` for integers).

    Only the literal grammar is accepted: optional leading minus, integer
    numerator, optional positive integer denominator. Anything else (decimals,
    whitespace inside, zero denominator) is rejected.
    """
    cleaned = text.strip()
    if not _RAT_RE.match(cleaned):
        raise ValueError(f"not a rational literal 'a/b': {text!r}")
    try:
        return Fraction(cleaned)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in rational literal: {text!r}") from None


def format_rat(value: Rat) -> str:
    """Canonical rendering: ``a/b`` in lowest terms, bare ``a`` for integers."""
    return str(Fraction(value))


@dataclass(frozen=True)
class QPoint:
    """A validated rational sample value for q.

    Construction rejects q in {0, 1, -1}. Every formula in the package is
    then well defined at the point: a rational q with |q| not in {0, 1}
    cannot satisfy q^e = 1 or q^e = -1 for any e >= 1, so the pole guards
    below can only trip for inputs that bypassed validation. The q -> 1
    limit of the bracket is reachable only through ``q_bracket`` itself.
    """

    value: Rat

    def __post_init__(self) -> None:
        value = Fraction(self.value)
        object.__setattr__(self, "value", value)
        if value in (0, 1, -1):
            raise ValueError(f"q = {format_rat(value)} is not a valid sample point")

    @property
    def guards(self) -> tuple[bool, bool, bool]:
        """(q != 0, q != 1, q != -1) — all True by construction."""
        return (self.value != 0, self.value != 1, self.value != -1)

    def inverse(self) -> QPoint:
        """The sample 1/q (valid whenever q is)."""
        return QPoint(1 / self.value)

    def raised(self, exponent: int) -> QPoint:
        """The sample q^exponent as a new point; exponent must be nonzero."""
        if exponent == 0:
            raise ValueError("q^0 = 1 is not a valid sample point")
        return QPoint(self.value**exponent)

    def pole_free(self, alpha: int, l_max: int) -> bool:
        """True when 1 + q^(alpha*l) != 0 for every 0 <= l <= l_max."""
        return all(1 + self.value ** (alpha * l) != 0 for l in range(l_max + 1))

    def require_pole_free(self, alpha: int, l_max: int) -> None:
        """Raise PoleError naming the offending index if a pole is hit."""
        for l in range(l_max + 1):
            if 1 + self.value ** (alpha * l) == 0:
                raise PoleError(
                    f"pole at q^(alpha*l) = -1: q={format_rat(self.value)}, "
                    f"alpha={alpha}, l={l}"
                )


@dataclass(frozen=True)
class Weights:
    """The positive integer weight pair (alpha, beta)."""

    alpha: int
    beta: int

    def __post_init__(self) -> None:
        if self.alpha < 1 or self.beta < 1:
            raise ValueError(
                f"weights must be integers >= 1, got ({self.alpha}, {self.beta})"
            )


def q_pow(q: QPoint, exponent: int) -> Rat:
    """Exact q**exponent; negative exponents allowed (q != 0 by construction)."""
    return q.value**exponent


def q_bracket(x: int, q: QPoint | Rat | int) -> Rat:
    """The q-deformation (1 - q^x) / (1 - q) of the integer x.

    Accepts a QPoint or a raw rational; the raw value 1 is routed to the
    q -> 1 limit, which is x itself. Raw values other than 1 pass through
    QPoint validation, so q in {0, -1} is rejected.
    """
    if isinstance(q, QPoint):
        qv = q.value
    else:
        qv = Fraction(q)
        if qv == 1:
            return Rat(x)
        qv = QPoint(qv).value
    return (1 - qv**x) / (1 - qv)


def two_bracket(beta: int, q: QPoint) -> Rat:
    """1 + q^beta: the bracket of 2 in base q^beta."""
    if beta < 1:
        raise ValueError(f"beta must be >= 1, got {beta}")
    return 1 + q.value**beta


def binom(n: int, k: int) -> int:
    """C(n, k) for n >= 0; zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError(f"binom needs n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)
