import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kgmakarov.polyfield import (
    EXACT,
    FLOAT,
    ModeMismatchError,
    ParamPoly,
    PoleError,
    Poly,
    RatFunc,
    ZeroPolynomialError,
    evaluate,
    poly_arith,
    poly_derive,
    poly_real_roots,
    ratfunc_derive,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
coeff_lists = st.lists(fractions, min_size=0, max_size=7)


def conv(a, b):
    # independent reference product
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def trimmed(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


# --- arithmetic --------------------------------------------------------------


def test_difference_of_squares():
    assert poly_arith(Poly([1, 1]), Poly([1, -1]), "mul") == Poly([1, 0, -1])


def test_additive_identity():
    p = Poly([3, Fraction(1, 2), -7])
    assert poly_arith(p, Poly.zero(), "add") == p


def test_cubic_expansion():
    p = Poly([-1, 1]) * Poly([-2, 1]) * Poly([-3, 1])
    assert p.coeffs == (-6, 11, -6, 1)


def test_scale_and_sub():
    p = Poly([1, 2])
    assert poly_arith(p, 3, "scale") == Poly([3, 6])
    assert poly_arith(p, p, "sub").is_zero()


def test_mixed_mode_rejected():
    with pytest.raises(ModeMismatchError):
        Poly([1, 2]) + Poly([1.0, 2.0], mode=FLOAT)
    with pytest.raises(ModeMismatchError):
        ParamPoly([[1]]) * ParamPoly([[1.0]], mode=FLOAT)


def test_exact_coefficients_lowest_terms():
    p = Poly([Fraction(2, 4), Fraction(-6, -9)])
    for c in p.coeffs:
        assert math.gcd(c.numerator, c.denominator) == 1 and c.denominator > 0


@given(coeff_lists, coeff_lists)
def test_arith_matches_reference(a, b):
    pa, pb = Poly(a), Poly(b)
    assert (pa * pb).coeffs == trimmed(conv(a, b))
    n = max(len(a), len(b))
    aa, bb = a + [0] * (n - len(a)), b + [0] * (n - len(b))
    assert (pa + pb).coeffs == trimmed([x + y for x, y in zip(aa, bb)])
    assert (pa - pb).coeffs == trimmed([x - y for x, y in zip(aa, bb)])


@given(coeff_lists, coeff_lists)
def test_degree_of_product(a, b):
    pa, pb = Poly(a), Poly(b)
    if not pa.is_zero() and not pb.is_zero():
        assert (pa * pb).degree == pa.degree + pb.degree


@given(coeff_lists, coeff_lists, fractions, fractions)
def test_derivative_linear(a, b, s, t):
    pa, pb = Poly(a), Poly(b)
    lhs = poly_derive(pa.scale(s) + pb.scale(t))
    assert lhs == poly_derive(pa).scale(s) + poly_derive(pb).scale(t)


# --- derivatives -------------------------------------------------------------


def test_power_rule_and_constant():
    assert Poly([0, 0, 1]).derive() == Poly([0, 2])
    assert Poly([5]).derive().is_zero()
    assert Poly([-6, 11, -6, 1]).derive() == Poly([11, -12, 3])


def test_param_derivative():
    f = ParamPoly([[1, 2], [3, 4]])  # 1 + 2p + 3x + 4xp
    assert f.derive("x") == ParamPoly([[3, 4]])
    assert f.derive("parameter") == ParamPoly([[2], [4]])


def test_ratfunc_derivative_examples():
    x = Poly([0, 1])
    inv = RatFunc(ParamPoly([[1]]), x, 1)
    d = ratfunc_derive(inv)
    for x0 in (Fraction(1, 3), Fraction(2), Fraction(-5, 7)):
        assert d.eval(x0, 0) == -1 / x0**2
    lam0 = RatFunc(ParamPoly([[-2], [1]]), x, 1)  # -(2 - x)/x
    for x0 in (Fraction(1, 2), Fraction(3)):
        assert lam0.derive().eval(x0, 0) == 2 / x0**2
    c_over_x = RatFunc(ParamPoly([[0, 1]]), x, 1)  # p / x
    for x0, p0 in ((Fraction(2), Fraction(3)), (Fraction(1, 5), Fraction(-1))):
        assert c_over_x.derive().eval(x0, p0) == -p0 / x0**2


def test_ratfunc_base_is_monic():
    f = RatFunc(ParamPoly([[1]]), Poly([0, 0, -2]), 1)
    assert f.base.leading == 1
    assert f.eval(Fraction(1), 0) == Fraction(-1, 2)
    g = RatFunc(ParamPoly([[1.0]], mode=FLOAT), Poly([0.0, 0.0, -3.0], mode=FLOAT), 1)
    assert abs(g.base.leading - 1.0) < 1e-15


def _random_ratfunc(rng, mode):
    conv_ = Fraction if mode == EXACT else float
    rows = [[conv_(rng.randint(-5, 5)) for _ in range(3)] for _ in range(4)]
    base = Poly([conv_(rng.randint(1, 4)), conv_(rng.randint(-3, 3)), conv_(1)], mode=mode)
    return RatFunc(ParamPoly(rows, mode=mode), base, rng.randint(1, 3))


@pytest.mark.parametrize("mode", [EXACT, FLOAT])
def test_quotient_rule_identity(mode):
    # compare against (num' den - num den') / den^2 built from the plain parts
    rng = random.Random(7)
    f = _random_ratfunc(rng, mode)
    num, den = f.num, f.den
    d = f.derive()
    for _ in range(100):
        if mode == EXACT:
            x0 = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
            p0 = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
        else:
            x0, p0 = rng.uniform(-4, 4), rng.uniform(-4, 4)
        dv = den(x0, p0)
        if dv == 0:
            continue
        ref = (num.derive("x")(x0, p0) * dv - num(x0, p0) * den.derive("x")(x0, p0)) / dv**2
        got = d.eval(x0, p0)
        if mode == EXACT:
            assert got == ref
        else:
            assert abs(got - ref) <= 1e-10 * max(1.0, abs(ref))


# --- evaluation --------------------------------------------------------------


def test_eval_examples():
    assert evaluate(Poly([1, 0, 1]), 2) == 5
    f = ParamPoly([[0], [2, 1]])  # (2 + p) x
    assert evaluate(f, 1) == Poly([2, 1])
    with pytest.raises(PoleError) as info:
        evaluate(RatFunc(ParamPoly([[1]]), Poly([0, 1]), 1), 0, 0)
    assert info.value.x0 == 0


@given(st.lists(st.lists(fractions, max_size=4), max_size=4), fractions, fractions)
def test_collapse_orders_commute_exact(rows, x0, p0):
    f = ParamPoly(rows)
    assert f.eval_x(x0)(p0) == f.eval_p(p0)(x0)


@given(st.lists(st.lists(st.floats(-10, 10), max_size=4), max_size=4),
       st.floats(-3, 3), st.floats(-3, 3))
def test_collapse_orders_commute_float(rows, x0, p0):
    f = ParamPoly(rows, mode=FLOAT)
    a, b = f.eval_x(x0)(p0), f.eval_p(p0)(x0)
    scale = 1.0 + sum(abs(c) for r in rows for c in r) * 30.0
    assert abs(a - b) <= 1e-12 * scale


# --- real roots --------------------------------------------------------------


def test_roots_examples():
    assert poly_real_roots(Poly([-6, 11, -6, 1])) == [1, 2, 3]
    assert poly_real_roots(Poly([1, 0, 1])) == []
    r = poly_real_roots(Poly([-2, 0, 1]))
    assert len(r) == 2
    assert abs(r[0] + math.sqrt(2)) < 1e-9 and abs(r[1] - math.sqrt(2)) < 1e-9


def test_roots_zero_polynomial():
    with pytest.raises(ZeroPolynomialError, match="identically zero"):
        poly_real_roots(Poly.zero())


def test_roots_interval_and_float_mode():
    p = Poly([-6, 11, -6, 1])
    assert poly_real_roots(p, (Fraction(3, 2), 10)) == [2, 3]
    rf = poly_real_roots(p.to_float())
    assert all(abs(a - b) < 1e-9 for a, b in zip(rf, [1, 2, 3]))


def test_repeated_root():
    p = Poly([-1, 1]) ** 2 * Poly([-3, 1])
    assert poly_real_roots(p) == [1, 3]
    rf = poly_real_roots(p.to_float())
    assert len(rf) == 2 and abs(rf[0] - 1) < 1e-6 and abs(rf[1] - 3) < 1e-9


@given(st.lists(st.integers(-8, 8), min_size=1, max_size=5, unique=True),
       st.integers(1, 4))
def test_root_certificate_exact(roots, lead):
    p = Poly([lead])
    for r in roots:
        p = p * Poly([-r, 1])
    got = poly_real_roots(p)
    assert got == sorted(roots)
    scale = 1 + max(abs(float(c)) for c in p.coeffs)
    for r in got:
        assert abs(float(p(r))) <= 1e-8 * scale


float_coeffs = st.one_of(st.just(0.0), st.floats(0.01, 5), st.floats(-5, -0.01))


@given(st.lists(float_coeffs, min_size=2, max_size=6))
def test_root_certificate_float(coeffs):
    p = Poly(coeffs, mode=FLOAT)
    if p.is_zero() or p.degree < 1:
        return
    scale = 1 + max(abs(c) for c in p.coeffs)
    for r in poly_real_roots(p):
        assert abs(p(r)) <= 1e-8 * scale * max(1.0, abs(r)) ** p.degree
        # sign change or an even-multiplicity witness nearby
        lo, hi = p(r - 1e-6), p(r + 1e-6)
        assert lo * hi <= 0 or abs(p.derive()(r)) <= 1e-4 * scale * max(1.0, abs(r)) ** p.degree
