"""Rank functions attached to periodic orbits.

A point of period l induces two representations of the crossed product:
an l x l scalar representation (shift unit -> cyclic permutation) and an
l x l Laurent representation (shift unit -> companion matrix with t^l in
the corner).  The normalized rank of the Laurent image over K(t), and its
evaluations at nonzero scalars, give the extremal rank functions living on
the orbit; evaluation at 1 recovers the scalar representation.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .crossed import CrossedElement
from .errors import ZeroEvaluationPoint
from .laurent import LaurentPoly
from .linalg import laurent_evaluate, laurent_matrix_rank, matrix_rank
from .space import SystemConfig


@dataclass(frozen=True)
class PeriodicPoint:
    """The point x with x_i = word[i mod l]; l = len(word) is the stored period."""

    config: SystemConfig
    word: str

    def __post_init__(self):
        if not self.word:
            raise ValueError("periodic word must be nonempty")
        self.config.check_word(self.word)
        l = len(self.word)
        for d in range(1, l):
            if l % d == 0 and self.word == self.word[:d] * (l // d):
                warnings.warn(
                    f"period {l} is a multiple of the primitive period {d}; "
                    "results refer to the length-l orbit with multiplicity",
                    stacklevel=2,
                )
                break

    @property
    def period(self) -> int:
        return len(self.word)

    def orbit_window_word(self, i: int, lo: int, hi: int) -> str:
        """Letters of T^i(x) on coordinates [lo, hi]."""
        l = len(self.word)
        return "".join(self.word[(c + i) % l] for c in range(lo, hi + 1))


def _orbit_value(f, x: PeriodicPoint, i: int):
    if f.hi < f.lo:
        return f.values.get("", f.field.zero)
    return f.values.get(x.orbit_window_word(i, f.lo, f.hi), f.field.zero)


def rho_finite(a: CrossedElement, x: PeriodicPoint) -> list:
    """The l x l scalar representation: f -> diag of orbit values, t -> cycle."""
    l = x.period
    field = a.field
    rows = [[field.zero] * l for _ in range(l)]
    for d, f in a.coeffs.items():
        for b in range(l):
            r = (b + d) % l
            rows[r][b] = rows[r][b] + _orbit_value(f, x, r)
    return rows


def psi_laurent(a: CrossedElement, x: PeriodicPoint) -> list:
    """The l x l Laurent representation; entry (i, j) lies in K[t^l, t^-l] t^(i-j)
    up to the regrouping by the companion matrix with t^l in the corner."""
    l = x.period
    field = a.field
    rows = [[LaurentPoly.zero(field) for _ in range(l)] for _ in range(l)]
    for d, f in a.coeffs.items():
        for b in range(l):
            r = (b + d) % l
            exp = (b + d - r) // l
            v = _orbit_value(f, x, r)
            if v:
                rows[r][b] = rows[r][b] + LaurentPoly(field, {l * exp: v})
    return rows


def periodic_rank_kt(a: CrossedElement, x: PeriodicPoint) -> Fraction:
    """Normalized rank over K(t) of the Laurent image; a value in [0, 1]."""
    return Fraction(laurent_matrix_rank(psi_laurent(a, x)), x.period)


def evaluation_rank(a: CrossedElement, x: PeriodicPoint, alpha) -> Fraction:
    """Normalized rank of the Laurent image evaluated at t = alpha != 0."""
    if not alpha:
        raise ZeroEvaluationPoint("evaluation point must be nonzero")
    m = laurent_evaluate(psi_laurent(a, x), alpha)
    return Fraction(matrix_rank(m), x.period)
