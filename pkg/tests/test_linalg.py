import random
from fractions import Fraction

import pytest

from shiftrank import (
    QQ,
    LaurentPoly,
    PrimeField,
    ZeroEvaluationPoint,
    laurent_evaluate,
    laurent_matrix_rank,
    matrix_rank,
    minor_expansion_rank,
)

F = Fraction


def test_rank_identity_and_proportional():
    assert matrix_rank([[F(1), F(0)], [F(0), F(1)]]) == 2
    assert matrix_rank([[F(1), F(2)], [F(2), F(4)]]) == 1
    f2 = PrimeField(2)
    one = f2.one
    assert matrix_rank([[one, one], [one, one]]) == 1
    assert matrix_rank([]) == 0
    assert matrix_rank([[F(0)]]) == 0


def test_rank_against_minor_oracle():
    rnd = random.Random(6)
    for _ in range(25):
        n = rnd.randint(1, 6)
        m = rnd.randint(1, 6)
        mat = [[F(rnd.randint(-3, 3)) for _ in range(m)] for _ in range(n)]
        assert matrix_rank(mat) == minor_expansion_rank(mat)


def test_rank_product_and_diag_properties():
    rnd = random.Random(9)
    for _ in range(15):
        n = rnd.randint(1, 4)
        a = [[F(rnd.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        b = [[F(rnd.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        ab = [
            [sum((a[i][k] * b[k][j] for k in range(n)), F(0)) for j in range(n)]
            for i in range(n)
        ]
        assert matrix_rank(ab) <= min(matrix_rank(a), matrix_rank(b))
        diag = [row + [F(0)] * n for row in a] + [[F(0)] * n + row for row in b]
        assert matrix_rank(diag) == matrix_rank(a) + matrix_rank(b)


def _t(exp=1, field=QQ):
    return LaurentPoly.t_power(field, exp)


def _c(v, field=QQ):
    return LaurentPoly.const(field, field.from_fraction(F(v)))


def test_laurent_rank_examples():
    t = _t()
    tm1 = t - _c(1)
    assert laurent_matrix_rank([[tm1]]) == 1
    # second row is t times the first
    m = [[t, _c(1)], [t * t, t]]
    assert laurent_matrix_rank(m) == 1
    assert m[0][0] * m[1][1] - m[0][1] * m[1][0] == LaurentPoly.zero(QQ)
    z = LaurentPoly.zero(QQ)
    assert laurent_matrix_rank([[z, z], [z, z]]) == 0
    assert laurent_matrix_rank([[_t(-3) + _c(2), z], [t, _t(2)]]) == 2


def test_laurent_evaluate():
    t = _t()
    tm1 = t - _c(1)
    assert laurent_evaluate([[tm1]], F(1)) == [[F(0)]]
    assert laurent_evaluate([[tm1]], F(2)) == [[F(1)]]
    assert matrix_rank(laurent_evaluate([[tm1]], F(2))) == 1
    cancel = _t(1) * _t(-1)
    assert laurent_evaluate([[cancel]], F(5)) == [[F(1)]]
    with pytest.raises(ZeroEvaluationPoint):
        laurent_evaluate([[t]], F(0))


def test_laurent_rank_matches_generic_evaluation():
    rnd = random.Random(17)
    for _ in range(20):
        n = rnd.randint(1, 3)
        m = [
            [
                LaurentPoly(QQ, {e: F(rnd.randint(-2, 2)) for e in range(-2, 3)})
                for _ in range(n)
            ]
            for _ in range(n)
        ]
        sym = laurent_matrix_rank(m)
        # evaluation at a random point drops rank only on a finite bad set;
        # take the majority over three distinct points
        ranks = [
            matrix_rank(laurent_evaluate(m, F(alpha)))
            for alpha in rnd.sample(range(2, 60), 3)
        ]
        assert sym == max(ranks)
        assert sum(1 for r in ranks if r == sym) >= 2


def test_laurent_poly_algebra():
    t = _t()
    assert (t * _t(-1)) == _c(1)
    p = _t(2) + _c(3)
    q = _t(-1) + _c(1)
    assert (p * q).min_exp() == -1 and (p * q).max_exp() == 2
    assert p * q == q * p
    assert (p - p).is_zero()
    assert p.render() == "3 + 1*t^2"
    assert (q.scalar_mul(F(-2))).render() == "-2*t^-1 - 2"
