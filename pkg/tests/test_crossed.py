import random
from fractions import Fraction

import pytest

from shiftrank import (
    BINARY,
    QQ,
    CrossedElement,
    LevelTooSmall,
    LocallyConstantFn,
    TruncatedElement,
    cylinder,
    level_base,
    supports_level,
    truncate,
)

F = Fraction


def _t(power=1):
    return CrossedElement.shift_unit(BINARY, QQ, power)


def _chi(offset, word):
    return CrossedElement.from_clopen(cylinder(BINARY, offset, word), QQ)


def _rand_elem(rnd, max_terms=3, max_degree=2):
    e = CrossedElement.zero(BINARY, QQ)
    for _ in range(rnd.randint(1, max_terms)):
        off = rnd.randint(-2, 2)
        word = "".join(rnd.choice("01") for _ in range(rnd.randint(1, 2)))
        e = e + _chi(off, word).scalar_mul(F(rnd.randint(-3, 3))) * _t(rnd.randint(-max_degree, max_degree))
    return e


def test_product_rule_examples():
    u = cylinder(BINARY, 0, "0")
    t = _t()
    assert t * _chi(0, "0") * t.adjoint() == CrossedElement.from_clopen(u.shift(1), QQ)
    z = _chi(0, "01")
    zt = z * t
    assert zt * zt.adjoint() == z
    assert CrossedElement.one(BINARY, QQ) * zt == zt
    assert zt.adjoint() * zt == CrossedElement.from_clopen(cylinder(BINARY, 0, "01").shift(-1), QQ)


def test_adjoint_properties():
    rnd = random.Random(3)
    for _ in range(25):
        a, b = _rand_elem(rnd), _rand_elem(rnd)
        assert a.adjoint().adjoint() == a
        assert (a * b).adjoint() == b.adjoint() * a.adjoint()
        assert (a + b).adjoint() == a.adjoint() + b.adjoint()


def test_ring_axioms_sampled():
    rnd = random.Random(4)
    one = CrossedElement.one(BINARY, QQ)
    for _ in range(15):
        a, b, c = _rand_elem(rnd), _rand_elem(rnd), _rand_elem(rnd)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
        assert one * a == a and a * one == a


def _s(n):
    """The partial isometry chi_{X \\ E_n} t."""
    return CrossedElement.from_clopen(level_base(BINARY, n).complement(), QQ) * _t()


def test_partial_isometry_power_rules():
    # s^i = s^(i-j) s^j = s^j s^(i-j) and the adjoint mirror, small exponents
    for n in (0, 1):
        s = _s(n)
        powers = {0: CrossedElement.one(BINARY, QQ)}
        for i in range(1, 5):
            powers[i] = powers[i - 1] * s
        star = {i: powers[i].adjoint() for i in powers}
        for i in range(1, 5):
            for j in range(1, i + 1):
                assert powers[i] == powers[i - j] * powers[j]
                assert powers[i] == powers[j] * powers[i - j]
                assert star[i] == star[j] * star[i - j]


def test_partial_isometry_corrective_identities():
    # s^(i+j) s*^j differs from s^i, but agrees after masking the first i+j bases
    for n in (0, 1):
        s = _s(n)
        e = level_base(BINARY, n)
        for i in (1, 2):
            for j in (1, 2):
                lhs = CrossedElement.one(BINARY, QQ)
                for _ in range(i + j):
                    lhs = lhs * s
                for _ in range(j):
                    lhs = lhs * s.adjoint()
                rhs = CrossedElement.one(BINARY, QQ)
                for _ in range(i):
                    rhs = rhs * s
                union = e
                for u in range(1, i + j):
                    union = union.union(e.shift(u))
                mask = CrossedElement.from_clopen(union.complement(), QQ)
                assert lhs != rhs
                assert mask * lhs == mask * rhs


def test_truncate_examples():
    t = _t()
    tr = truncate(t, 1)
    assert tr.level == 1 and tr.epsilon == F(1, 8)
    assert tr.element == _s(1)
    f = _chi(0, "0")
    trf = truncate(f, 1)
    assert trf.epsilon == 0 and trf.element == f
    tr2 = truncate(t * t, 1)
    assert tr2.epsilon == F(1, 4)
    e1 = level_base(BINARY, 1)
    expected_mask = e1.union(e1.shift(1)).complement()
    assert tr2.element == CrossedElement.from_clopen(expected_mask, QQ) * _t(2)
    # coefficients already off the masked bases cost nothing
    assert truncate(_s(0), 0).epsilon == 0


def test_truncate_level_too_small():
    with pytest.raises(LevelTooSmall):
        truncate(_chi(-2, "10"), 1)
    with pytest.raises(LevelTooSmall):
        TruncatedElement.wrap(_t(), 0)  # t itself violates the support condition


def test_truncate_is_star_map():
    rnd = random.Random(5)
    for _ in range(20):
        a = _rand_elem(rnd)
        n = max(2, a.radius, a.adjoint().radius)
        assert truncate(a, n).element.adjoint() == truncate(a.adjoint(), n).element


def test_truncate_fixes_degree_zero():
    rnd = random.Random(6)
    for _ in range(20):
        a = _rand_elem(rnd)
        n = max(1, a.radius)
        assert truncate(a, n).element.coeff(0) == a.coeff(0)


def test_support_condition():
    assert supports_level(_s(1), 1)
    assert not supports_level(_t(), 1)
    prod = truncate(_rand_elem(random.Random(7)), 2) * truncate(_rand_elem(random.Random(8)), 2)
    assert supports_level(prod.element, 2)


def test_truncated_wrapper_ops():
    a = truncate(_t(), 1)
    b = truncate(_chi(0, "1"), 1)
    ab = a * b
    assert ab.level == 1 and ab.epsilon == a.epsilon + b.epsilon
    assert (a + b).epsilon == a.epsilon + b.epsilon
    assert a.adjoint().epsilon == a.epsilon
    assert a.adjoint().element == a.element.adjoint()


def test_scalar_and_fn_embedding():
    c = CrossedElement.from_scalar(BINARY, QQ, F(2, 3))
    f = LocallyConstantFn.indicator(cylinder(BINARY, 0, "1"), QQ)
    cf = CrossedElement.from_fn(f).scalar_mul(F(3))
    assert (c * cf).coeff(0) == f.scalar_mul(F(2))
    assert c.radius == 0 and cf.radius == 0
