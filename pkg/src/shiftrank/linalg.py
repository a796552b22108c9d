"""Exact matrix rank over a scalar field and over Frac(K[t, t^-1]).

The scalar-field rank is a pivoted Gaussian elimination with full
normalization; no floating point is involved anywhere.  The Laurent rank
uses one-step fraction-free (Bareiss) elimination on polynomial entries,
which keeps every intermediate value in K[t] and every division exact.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .errors import ZeroEvaluationPoint
from .laurent import LaurentPoly


def matrix_rank(rows: Sequence[Sequence[object]]) -> int:
    """Rank of a rectangular matrix of field scalars.

    Entries must support +, -, *, / and truth-testing (zero is falsy).
    An empty matrix has rank 0.
    """
    m = [list(row) for row in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, nrows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        pv = m[row][col]
        m[row] = [x / pv for x in m[row]]
        for r in range(nrows):
            if r != row and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[row])]
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


def minor_expansion_rank(rows: Sequence[Sequence[object]]) -> int:
    """Brute-force rank oracle: largest r with a nonzero r x r minor.

    Exponential; only sensible for matrices up to ~7x7.  Kept independent
    of :func:`matrix_rank` so the two can cross-check each other.
    """
    m = [list(row) for row in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    for r in range(min(nrows, ncols), 0, -1):
        for rsel in combinations(range(nrows), r):
            for csel in combinations(range(ncols), r):
                sub = [[m[i][j] for j in csel] for i in rsel]
                if _det(sub):
                    return r
    return 0


def _det(sub):
    n = len(sub)
    if n == 1:
        return sub[0][0]
    acc = None
    for j in range(n):
        if not sub[0][j]:
            continue
        minor = [row[:j] + row[j + 1 :] for row in sub[1:]]
        term = sub[0][j] * _det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        return sub[0][0] - sub[0][0]
    return acc


def _poly_exact_div(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """f / g when g divides f exactly in K[t, t^-1]."""
    if f.is_zero():
        return f
    shift = f.min_exp() - g.min_exp()
    fd = _dense(f.shift(-f.min_exp()))
    gd = _dense(g.shift(-g.min_exp()))
    q = [None] * (len(fd) - len(gd) + 1)
    lead = gd[-1]
    for i in range(len(q) - 1, -1, -1):
        c = fd[i + len(gd) - 1] / lead
        q[i] = c
        if c:
            for j, gj in enumerate(gd):
                fd[i + j] = fd[i + j] - c * gj
    if any(fd):
        raise ArithmeticError("inexact polynomial division in fraction-free elimination")
    return LaurentPoly(f.field, {i: c for i, c in enumerate(q) if c}).shift(shift)


def _dense(p: LaurentPoly):
    top = p.max_exp()
    out = [p.field.zero] * (top + 1)
    for e, c in p.coeffs.items():
        out[e] = c
    return out


def laurent_matrix_rank(rows: Sequence[Sequence[LaurentPoly]]) -> int:
    """Rank over the fraction field of K[t, t^-1].

    Equals the rank of the evaluated matrix M(alpha) for all but finitely
    many scalars alpha.
    """
    m = [list(row) for row in rows]
    if not m or not m[0]:
        return 0
    field = m[0][0].field
    # clear each row to ordinary polynomials (multiplying a row by the unit
    # t^k does not change the rank over the fraction field)
    for row in m:
        exps = [e.min_exp() for e in row if not e.is_zero()]
        if exps:
            k = -min(exps)
            for j, e in enumerate(row):
                row[j] = e.shift(k) if not e.is_zero() else e
    nrows, ncols = len(m), len(m[0])
    prev = LaurentPoly.const(field, field.one)
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, nrows):
            if not m[r][col].is_zero():
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        pv = m[row][col]
        for r in range(row + 1, nrows):
            fr = m[r][col]
            for c in range(ncols):
                num = m[r][c] * pv - m[row][c] * fr
                m[r][c] = _poly_exact_div(num, prev) if not num.is_zero() else num
        prev = pv
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


def laurent_evaluate(rows: Sequence[Sequence[LaurentPoly]], alpha):
    """Entrywise substitution t -> alpha (alpha nonzero)."""
    if not alpha:
        raise ZeroEvaluationPoint("cannot evaluate a Laurent matrix at t = 0")
    return [[e.evaluate(alpha) for e in row] for row in rows]
