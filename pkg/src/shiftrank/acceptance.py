"""End-to-end verification battery with pinned tolerances.

Every criterion is a standalone function returning a :class:`CriterionResult`;
``run_all`` executes the battery and prints one pass/fail line per criterion.
The binary (1/2, 1/2) system with marker 1 is the reference instance.

Two sub-criteria (3b and 7b) encode tolerance targets that are mathematically
unattainable at level >= 1: the number of return words of length k grows like
1.84^k, so the level-1 tail decays like 0.92^k rather than 2^-k, and no
feasible length cap reaches the stated 1e-4 / 2^-10 targets.  They are kept
in the battery, failing, as an honest record; see scripts/tail_decay.py for
the measured decay.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .checks import _random_element, _random_segment
from .crossed import CrossedElement, truncate
from .engine import rank_interval
from .expressions import parse_expr
from .fields import QQ, Field, PrimeField
from .linalg import matrix_rank
from .periodic import PeriodicPoint, evaluation_rank, periodic_rank_kt, rho_finite
from .represent import (
    matrix_unit_element,
    occurrence_project,
    project_element,
    segment_element,
)
from .space import BINARY, cylinder, level_base
from .towers import get_family, verify_mass_identity

F7 = PrimeField(7)
_SEED = 20260808


@dataclass(frozen=True)
class CriterionResult:
    cid: str
    ok: bool
    detail: str

    def line(self) -> str:
        return f"criterion {self.cid}: {'PASS' if self.ok else 'FAIL'} - {self.detail}"


def criterion_1() -> CriterionResult:
    """Exact tower mass at level 0 and the closed-form tail."""
    fam = get_family(BINARY, 0, 20)
    mass = sum((w.length * w.measure for w in fam.words), Fraction(0))
    ok = mass == 1 - Fraction(22, 2**21)
    details = [f"sum|W|mu(W) at kmax=20 is {mass}"]
    for cap in range(1, 21):
        tail = get_family(BINARY, 0, cap).tail
        if tail != Fraction(cap + 2, 2 ** (cap + 1)):
            ok = False
            details.append(f"tail({cap}) = {tail} != (K+2)2^-(K+1)")
    return CriterionResult("1", ok, "; ".join(details))


def criterion_2() -> CriterionResult:
    """Level-1 word census against a brute-force enumeration."""
    fam = get_family(BINARY, 1, 8)
    by_k: dict[int, list[str]] = {}
    for w in fam.words:
        by_k.setdefault(w.length, []).append(w.content)
    ok = by_k.get(1) == ["1111"] and by_k.get(4) == ["1110111"]
    ok = ok and 2 not in by_k and 3 not in by_k
    detail = f"k=1: {by_k.get(1)}, k=4: {by_k.get(4)}"
    for k, contents in by_k.items():
        if k >= 5:
            for c in contents:
                inner = c[4:-4]
                if not (c[3] == "0" and c[-4] == "0" and "111" not in inner):
                    ok = False
                    detail += f"; malformed {c}"
    for k in range(1, 9):
        brute = _census_brute(1, k)
        if sorted(by_k.get(k, [])) != sorted(brute):
            ok = False
            detail += f"; census mismatch at k={k}"
    return CriterionResult("2", ok, detail)


def _census_brute(n: int, k: int) -> list[str]:
    width = 2 * n + 1
    block = "1" * width
    total = width + k
    out = []
    for bits in product("01", repeat=total):
        s = "".join(bits)
        if s[:width] != block or s[-width:] != block:
            continue
        if any(s[j : j + width] == block for j in range(1, k)):
            continue
        out.append(s)
    return out


def _window_cylinders():
    return [cylinder(BINARY, -1, "".join(bits)) for bits in product("01", repeat=3)]


def _measure_compat_core(field: Field):
    """Criterion 3 invariants: interval contains mu(U), width == tail (eps 0)."""
    results = []
    for u in _window_cylinders():
        iv = rank_interval(CrossedElement.from_clopen(u, field), 1, 24)
        mu = u.measure()
        results.append((iv, mu,
                        iv.lower <= mu <= iv.upper and iv.width <= iv.tail
                        and iv.epsilon == 0))
    return results


def criterion_3a() -> CriterionResult:
    rows = _measure_compat_core(QQ)
    ok = all(flag for _, _, flag in rows)
    iv = rows[0][0]
    return CriterionResult(
        "3a", ok,
        f"8 window-[-1,1] cylinders at (n=1, kmax=24): interval contains mu(U), "
        f"width = tail = {float(iv.tail):.6f}",
    )


def criterion_3b() -> CriterionResult:
    tail = get_family(BINARY, 1, 24).tail
    ok = tail < Fraction(1, 10**4)
    return CriterionResult(
        "3b", ok,
        f"tail(n=1, kmax=24) = {float(tail):.6f} vs target 1e-4 "
        "(level-1 word count grows ~1.84^k, tail decays ~0.92^k)",
    )


def _shift_series_core(field: Field, caps) -> tuple[bool, str]:
    base = level_base(BINARY, 0)
    el = CrossedElement.from_clopen(base.complement(), field) * \
        CrossedElement.shift_unit(BINARY, field)
    ok = True
    detail = ""
    for cap in caps:
        iv = rank_interval(el, 0, cap)
        expected = sum(
            ((k - 1) * Fraction(1, 2 ** (k + 1)) for k in range(1, cap + 1)),
            Fraction(0),
        )
        if iv.partial != expected or iv.epsilon != 0:
            ok = False
            detail += f" partial({cap}) = {iv.partial} != {expected};"
        if not iv.lower <= Fraction(1, 2) <= iv.upper:
            ok = False
            detail += f" 1/2 not in interval at K={cap};"
    return ok, detail


def criterion_4() -> CriterionResult:
    ok, detail = _shift_series_core(QQ, list(range(1, 13)) + [20, 30])
    iv30 = rank_interval(
        CrossedElement.from_clopen(level_base(BINARY, 0).complement(), QQ)
        * CrossedElement.shift_unit(BINARY, QQ),
        0, 30,
    )
    if not iv30.width < Fraction(1, 10**6):
        ok = False
        detail += f" width({30}) = {float(iv30.width)} >= 1e-6;"
    return CriterionResult(
        "4", ok,
        detail or f"partial(K) matches the series; width(30) = {float(iv30.width):.3g}",
    )


def _hom_core(field: Field, pairs: int, seed: int) -> tuple[bool, str]:
    rnd = random.Random(seed)
    fam = get_family(BINARY, 1, 8)
    words = list(fam.words)
    ok = True
    for _ in range(pairs):
        a = truncate(_random_element(rnd, BINARY, field), 1)
        b = truncate(_random_element(rnd, BINARY, field), 1)
        ab = a * b
        for w in words:
            if project_element(ab, w) != project_element(a, w) * project_element(b, w):
                ok = False
    return ok, f"{pairs} random pairs over {len(words)} words (|W| <= 8)"


def criterion_5() -> CriterionResult:
    ok, detail = _hom_core(QQ, 500, _SEED)
    units_ok = True
    fam6 = [w for w in get_family(BINARY, 1, 6).words]
    for w in fam6:
        k = w.length
        units = {
            (i, j): matrix_unit_element(w, i, j, QQ)
            for i in range(k) for j in range(k)
        }
        for i in range(k):
            for j in range(k):
                for kk in range(k):
                    for l in range(k):
                        prod = units[(i, j)] * units[(kk, l)]
                        expect = units[(i, l)] if j == kk \
                            else CrossedElement.zero(BINARY, QQ)
                        if prod != expect:
                            units_ok = False
    ok = ok and units_ok
    return CriterionResult(
        "5", ok, f"projection multiplicative on {detail}; "
        f"matrix-unit relations on all |W| <= 6 words: {'ok' if units_ok else 'FAIL'}",
    )


def _oracle_core(field: Field, count: int, seed: int) -> tuple[bool, str]:
    rnd = random.Random(seed)
    ok = True
    done = 0
    while done < count:
        level = rnd.choice((0, 1))
        fam = [w for w in get_family(BINARY, level, 10).words if w.length >= 2]
        total = rnd.randint(1, 3)
        s = rnd.randint(0, total)
        d = rnd.randint(-(total - s), s)
        segment = _random_segment(rnd, BINARY, level, total)
        elem = segment_element(segment, s, d, BINARY, level, field)
        for w in fam:
            if occurrence_project(segment, s, d, w, field) != project_element(elem, w):
                ok = False
        done += 1
    return ok, f"{count} random segment monomials at levels 0 and 1, |W| <= 10"


def criterion_6() -> CriterionResult:
    ok, detail = _oracle_core(QQ, 200, _SEED)
    return CriterionResult("6", ok, detail)


def _deficits():
    coarse = get_family(BINARY, 0, 4).words
    caps = (5, 10, 15, 20, 25)
    table = {}
    for w in coarse:
        table[w.content] = [
            verify_mass_identity(w, get_family(BINARY, 1, cap)).deficit for cap in caps
        ]
    return table


def criterion_7a() -> CriterionResult:
    table = _deficits()
    ok = all(
        all(d >= 0 for d in ds) and all(a >= b for a, b in zip(ds, ds[1:]))
        for ds in table.values()
    )
    return CriterionResult(
        "7a", ok,
        "deficits nonnegative and non-increasing in kmax for all coarse words k <= 4",
    )


def criterion_7b() -> CriterionResult:
    table = _deficits()
    worst = max(ds[-1] for ds in table.values())
    ok = worst < Fraction(1, 2**10)
    return CriterionResult(
        "7b", ok,
        f"max deficit at fine kmax=25 is {float(worst):.6f} vs target 2^-10 = "
        f"{float(Fraction(1, 2**10)):.6f} (same slow level-1 tail as 3b)",
    )


def _random_radius1_expr(rnd: random.Random, field: Field) -> CrossedElement:
    """Random expression of radius <= 1: one or two cylinder monomials."""
    def monomial():
        off = rnd.randint(-1, 1)
        wlen = rnd.randint(1, 2 if off <= 0 else 1)
        word = "".join(rnd.choice("01") for _ in range(wlen))
        coeff = field.from_int(rnd.choice([-2, -1, 1, 2, 3]))
        d = rnd.randint(-2, 2)
        return (
            CrossedElement.from_clopen(cylinder(BINARY, off, word), field)
            .scalar_mul(coeff)
            * CrossedElement.shift_unit(BINARY, field, d)
        )

    e = monomial()
    if rnd.random() < 0.35:
        e = e + monomial()
    return e


def criterion_8() -> CriterionResult:
    rnd = random.Random(_SEED)
    configs = [(1, 12), (1, 24), (2, 12), (2, 24)]
    ok = True
    detail = ""
    for idx in range(20):
        e = _random_radius1_expr(rnd, QQ)
        ivs = [rank_interval(e, n, kmax) for n, kmax in configs]
        for i in range(len(ivs)):
            for j in range(i + 1, len(ivs)):
                if not ivs[i].intersects(ivs[j]):
                    ok = False
                    detail += f" expr {idx}: {configs[i]} vs {configs[j]} disjoint;"
    return CriterionResult(
        "8", ok,
        detail or "20 random radius-<=1 expressions: intervals at "
        "(n,kmax) in {1,2}x{12,24} pairwise intersect",
    )


def criterion_9() -> CriterionResult:
    x = PeriodicPoint(BINARY, "0")
    e = parse_expr("t - 1", BINARY, QQ)
    kt = periodic_rank_kt(e, x)
    rho = matrix_rank(rho_finite(e, x))
    ev = evaluation_rank(e, x, Fraction(2))
    ok = kt == 1 and rho == 0 and ev == 1
    return CriterionResult(
        "9", ok, f"fixed point '0': kt-rank {kt}, rho-rank {rho}, eval(2)-rank {ev}",
    )


def criterion_10() -> CriterionResult:
    rnd = random.Random(_SEED)
    level, kmax = 3, 12
    ok_prod = ok_diag = ok_star = True
    zero = CrossedElement.zero(BINARY, QQ)
    for _ in range(100):
        a = _random_element(rnd, BINARY, QQ)
        b = _random_element(rnd, BINARY, QQ)
        iva = rank_interval(a, level, kmax)
        ivb = rank_interval(b, level, kmax)
        ivab = rank_interval(a * b, level, kmax)
        if ivab.upper > min(iva.upper, ivb.upper) + (iva.width + ivb.width):
            ok_prod = False
        ivdiag = rank_interval([[a, zero], [zero, b]], level, kmax)
        if ivdiag.partial != iva.partial + ivb.partial:
            ok_diag = False
        if rank_interval(a.adjoint(), level, kmax).partial != iva.partial:
            ok_star = False
    ok = ok_prod and ok_diag and ok_star
    return CriterionResult(
        "10", ok,
        f"100 random pairs: product-upper {'ok' if ok_prod else 'FAIL'}, "
        f"diag-additivity {'ok' if ok_diag else 'FAIL'}, "
        f"adjoint-partial {'ok' if ok_star else 'FAIL'}",
    )


def criterion_11() -> CriterionResult:
    rows_q = _measure_compat_core(QQ)
    rows_7 = _measure_compat_core(F7)
    ok = all(f for _, _, f in rows_q) and all(f for _, _, f in rows_7)
    same_partials = all(
        a.partial == b.partial for (a, _, _), (b, _, _) in zip(rows_q, rows_7)
    )
    ok = ok and same_partials
    s_q = _shift_series_core(QQ, [12])
    s_7 = _shift_series_core(F7, [12])
    ok = ok and s_q[0] and s_7[0]
    h_7 = _hom_core(F7, 120, _SEED)
    o_7 = _oracle_core(F7, 80, _SEED)
    ok = ok and h_7[0] and o_7[0]
    return CriterionResult(
        "11", ok,
        "measure-compat, shift series, homomorphism, occurrence oracle hold over "
        f"F_7 as over Q; indicator partials identical across fields: {same_partials}",
    )


ALL_CRITERIA = (
    ("1", criterion_1),
    ("2", criterion_2),
    ("3a", criterion_3a),
    ("3b", criterion_3b),
    ("4", criterion_4),
    ("5", criterion_5),
    ("6", criterion_6),
    ("7a", criterion_7a),
    ("7b", criterion_7b),
    ("8", criterion_8),
    ("9", criterion_9),
    ("10", criterion_10),
    ("11", criterion_11),
)

KNOWN_UNATTAINABLE = ("3b", "7b")


def run_all(verbose: bool = True) -> list[CriterionResult]:
    results = []
    for _, fn in ALL_CRITERIA:
        r = fn()
        results.append(r)
        if verbose:
            print(r.line(), flush=True)
    return results
