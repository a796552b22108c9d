import json
import random
from fractions import Fraction

import pytest

from shiftrank import (
    BINARY,
    QQ,
    BadConfig,
    CrossedElement,
    LevelTooSmall,
    PrimeField,
    auto_refine,
    cylinder,
    get_family,
    level_base,
    matrix_rank,
    parse_expr,
    rank_interval,
    rank_report,
    refine,
    truncate,
)
from shiftrank.checks import _random_element
from shiftrank.engine import _Compiled, rational_decimal
from shiftrank.represent import project_matrix

F = Fraction


def _shift_off_base(field=QQ):
    return CrossedElement.from_clopen(level_base(BINARY, 0).complement(), field) * \
        CrossedElement.shift_unit(BINARY, field)


def test_indicator_interval_contains_measure():
    for text, mu in (("chi(0;0)", F(1, 2)), ("chi(-1;10)", F(1, 4)), ("chi(-1;111)", F(1, 8))):
        e = parse_expr(text, BINARY, QQ)
        iv = rank_interval(e, 1, 12)
        assert iv.lower <= mu <= iv.upper
        assert iv.epsilon == 0
        assert iv.width == iv.tail  # dim 1, no clamping for indicators


def test_unit_and_zero():
    one = parse_expr("t * t'", BINARY, QQ)
    iv = rank_interval(one, 1, 10)
    assert iv.upper == 1 and iv.lower <= 1
    z = rank_interval(CrossedElement.zero(BINARY, QQ), 0, 6)
    assert z.lower == 0 and z.partial == 0
    t_iv = rank_interval(parse_expr("t", BINARY, QQ), 0, 12)
    assert t_iv.lower <= 1 <= t_iv.upper and t_iv.upper == 1


def test_shift_series_partials():
    el = _shift_off_base()
    for cap in (1, 4, 9, 14):
        iv = rank_interval(el, 0, cap)
        expected = sum(((k - 1) * F(1, 2 ** (k + 1)) for k in range(1, cap + 1)), F(0))
        assert iv.partial == expected
        assert iv.epsilon == 0
        assert iv.lower <= F(1, 2) <= iv.upper
        assert iv.upper - iv.lower <= iv.tail + F(1, 2 ** (cap + 1))


def test_proportional_rows_matrix():
    t = parse_expr("t", BINARY, QQ)
    one = parse_expr("1", BINARY, QQ)
    tstar = parse_expr("t'", BINARY, QQ)
    iv = rank_interval([[t, one], [one, tstar]], 1, 14)
    assert iv.dim == 2
    assert iv.lower <= 1 <= iv.upper


def test_interval_width_formula_and_monotonicity():
    e = parse_expr("chi(0;1) * t - 2 * chi(0;0)", BINARY, QQ)
    prev = None
    prev_partial = None
    for cap in (2, 4, 8, 12, 16):
        iv = rank_interval(e, 1, cap)
        if iv.upper < 1 and iv.lower > 0:
            assert iv.width == 2 * iv.epsilon + iv.dim * iv.tail
        if prev is not None:
            assert iv.width <= prev
            assert iv.partial >= prev_partial
        prev, prev_partial = iv.width, iv.partial


def test_level_too_small():
    e = parse_expr("chi(-2;11)", BINARY, QQ)
    with pytest.raises(LevelTooSmall):
        rank_interval(e, 1, 6)
    iv = rank_interval(e, 2, 6)
    assert iv.lower <= F(1, 4) <= iv.upper


def test_bad_matrix_shape():
    t = parse_expr("t", BINARY, QQ)
    with pytest.raises(BadConfig):
        rank_interval([[t, t]], 1, 4)


def test_fast_path_matches_reference():
    rnd = random.Random(21)
    fam = get_family(BINARY, 1, 7)
    for _ in range(12):
        d = rnd.randint(1, 2)
        entries = [[_random_element(rnd, BINARY, QQ) for _ in range(d)] for _ in range(d)]
        trunc = [[truncate(e, 1) for e in row] for row in entries]
        compiled = _Compiled(trunc, QQ)
        for w in fam.words:
            assert compiled.word_rank(w) == matrix_rank(project_matrix(trunc, w))


def test_fast_path_matches_reference_mod_p():
    f7 = PrimeField(7)
    rnd = random.Random(22)
    fam = get_family(BINARY, 1, 7)
    for _ in range(12):
        entries = [[_random_element(rnd, BINARY, f7)]]
        trunc = [[truncate(entries[0][0], 1)]]
        compiled = _Compiled(trunc, f7)
        for w in fam.words:
            assert compiled.word_rank(w) == matrix_rank(project_matrix(trunc, w))


def test_refine_intervals_intersect():
    e = parse_expr("chi(0;0)", BINARY, QQ)
    ivs = refine(e, [(1, 6), (1, 12), (2, 6), (2, 12)])
    assert len(ivs) == 4
    for i in range(4):
        for j in range(i + 1, 4):
            assert ivs[i].intersects(ivs[j])
    with pytest.raises(BadConfig):
        refine(e, [])


def test_refine_unit_and_zero():
    ivs = refine(parse_expr("t * t'", BINARY, QQ), [(1, 5), (1, 9)])
    assert all(iv.lower <= 1 <= iv.upper for iv in ivs)
    ivs = refine(CrossedElement.zero(BINARY, QQ), [(0, 4), (1, 4)])
    assert all(iv.lower == 0 for iv in ivs)


def test_auto_refine_stops_on_budget_or_width():
    e = parse_expr("chi(0;0)", BINARY, QQ)
    trail = auto_refine(e, 0, width_target=F(1, 10**6), word_budget=10**5)
    assert trail[-1].width < F(1, 10**6)
    widths = [iv.width for iv in trail]
    assert widths == sorted(widths, reverse=True)
    short = auto_refine(e, 1, width_target=F(0), word_budget=50)
    assert short[-1].words_used > 50


def test_rank_report():
    e = parse_expr("chi(-1;111)", BINARY, QQ)  # the level-1 base
    doc = rank_report(e, 1, 6)
    total = sum(F(row["contribution"]) for row in doc["per_word"])
    assert total == F(doc["partial"])
    assert all(row["rank"] == 1 for row in doc["per_word"])  # e_00 on every word
    assert doc["words_used"] == len(doc["per_word"])
    again = json.loads(json.dumps(doc))
    assert again == doc
    contribs = [F(r["contribution"]) for r in doc["per_word"]]
    assert contribs == sorted(contribs, reverse=True)


def test_adjoint_and_diag_partials():
    rnd = random.Random(23)
    zero = CrossedElement.zero(BINARY, QQ)
    for _ in range(8):
        a = _random_element(rnd, BINARY, QQ)
        b = _random_element(rnd, BINARY, QQ)
        iva = rank_interval(a, 3, 10)
        assert rank_interval(a.adjoint(), 3, 10).partial == iva.partial
        ivd = rank_interval([[a, zero], [zero, b]], 3, 10)
        assert ivd.partial == iva.partial + rank_interval(b, 3, 10).partial


def test_soundness_against_known_values():
    # cylinders on windows within the level: true rank equals the measure
    for off, word in ((-1, "0"), (0, "11"), (-1, "101")):
        u = cylinder(BINARY, off, word)
        e = CrossedElement.from_clopen(u, QQ)
        iv = rank_interval(e, 1, 16)
        assert iv.lower <= u.measure() <= iv.upper
    # invertibles have rank 1
    for text in ("t", "t^-2", "t * t'", "2/3 * t"):
        iv = rank_interval(parse_expr(text, BINARY, QQ), 2, 10)
        assert iv.lower <= 1 and iv.upper == 1


def test_json_dict_fields():
    iv = rank_interval(parse_expr("chi(0;0)", BINARY, QQ), 1, 8)
    doc = iv.to_json_dict()
    for key in ("lower", "upper", "partial", "epsilon", "tail", "level",
                "kmax", "dim", "words_used", "field"):
        assert key in doc
    assert doc["field"] == "Q"
    assert doc["lower_dec"].count(".") == 1
    assert len(doc["lower_dec"].split(".")[1]) == 12


def test_rational_decimal():
    assert rational_decimal(F(1, 2)) == "0.500000000000"
    assert rational_decimal(F(22, 2**21), 12) == "0.000010490417"
    assert rational_decimal(F(3)) == "3.000000000000"
