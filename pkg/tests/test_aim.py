import math
import random
from fractions import Fraction

import pytest

from kgmakarov import aim
from kgmakarov.model import angular_aim_problem, radial_aim_problem
from kgmakarov.polyfield import EXACT, FLOAT, ParamPoly, PoleError, Poly, RatFunc


@pytest.fixture(scope="module")
def radial0():
    return aim.run_iterations(radial_aim_problem(0), 12)


@pytest.fixture(scope="module")
def angular_half():
    return aim.run_iterations(angular_aim_problem(Fraction(1, 2), Fraction(1, 2)), 10)


def test_zero_s_branch_stays_zero():
    x = Poly([0, 1])
    lam0 = RatFunc(ParamPoly([[1], [2], [0, 1]]), x, 1)
    s0 = RatFunc(ParamPoly.zero(), x, 1)
    trace = aim.run_iterations(aim.AimProblem(lam0, s0, "p", (0, math.inf)), 5)
    assert all(s.num.is_zero() for _, s in trace.pairs)


def test_first_step_by_hand():
    # l = 0 at (x, nu) = (1, 2): lambda0' = 2, s0 = -1, lambda0^2 = 1
    trace = aim.run_iterations(radial_aim_problem(0), 1)
    lam1, s1 = trace.pairs[1]
    assert lam1.eval(1, 2) == 2
    # s1 = s0' + s0 lambda0 = 1 + (-1)(-1)
    assert s1.eval(1, 2) == 2


def test_step_matches_scalar_recurrence():
    prob = radial_aim_problem(0.75, FLOAT)
    lam1, s1 = aim.aim_step((prob.lambda0, prob.s0), prob)
    dl, ds = prob.lambda0.derive(), prob.s0.derive()
    rng = random.Random(3)
    for _ in range(20):
        x0, p0 = rng.uniform(0.2, 5), rng.uniform(-3, 3)
        l0, s0 = prob.lambda0.eval(x0, p0), prob.s0.eval(x0, p0)
        ref_l = dl.eval(x0, p0) + s0 + l0 * l0
        ref_s = ds.eval(x0, p0) + s0 * l0
        assert abs(lam1.eval(x0, p0) - ref_l) <= 1e-10 * max(1, abs(ref_l))
        assert abs(s1.eval(x0, p0) - ref_s) <= 1e-10 * max(1, abs(ref_s))


def test_trace_shape_and_cap():
    prob = radial_aim_problem(0)
    t = aim.run_iterations(prob, 1)
    assert len(t.pairs) == 2 and len(t.deltas) == 1
    assert t.pairs[0] == (prob.lambda0, prob.s0)
    with pytest.raises(aim.IterationCapError, match="float mode"):
        aim.run_iterations(prob, 61)
    with pytest.raises(ValueError):
        aim.run_iterations(prob, 0)


def test_delta_degree_grows(radial0):
    assert radial0.delta(10).num.degree_p >= 4
    assert len(radial0.deltas) == len(radial0.pairs) - 1


def test_angular_deltas_finite_inside(angular_half):
    for d in angular_half.deltas:
        for k in range(1, 50):
            assert d.base(Fraction(k, 50)) != 0


def test_radial_roots_ground_ladder(radial0):
    rep = aim.quantization_roots(radial0, 1, 10, (0, 5))
    assert {1, 2, 3, 4} <= set(rep.roots)
    assert all(c == 0 for c in rep.certificates)


def test_radial_roots_exact_integers():
    trace = aim.run_iterations(radial_aim_problem(1, EXACT), 12)
    rep = aim.quantization_roots(trace, 1, 12)
    assert rep.roots == list(range(2, 15))
    assert all(isinstance(r, (int, Fraction)) for r in rep.roots)


def test_angular_roots(angular_half):
    rep = aim.quantization_roots(angular_half, Fraction(1, 2), 10)
    for n, t in enumerate((2, 6, 12, 20)):
        assert abs(float(rep.roots[n]) - t) < 1e-8


def test_first_iteration_has_two_roots():
    # the termination numerator after one step is quadratic in nu
    trace = aim.run_iterations(radial_aim_problem(0), 1)
    assert aim.quantization_roots(trace, 1).roots == [1, 2]


def test_pole_and_domain_errors(radial0):
    with pytest.raises(PoleError):
        aim.quantization_roots(radial0, 0)
    with pytest.raises(ValueError):
        aim.quantization_roots(radial0, -1)


def test_degenerate_evaluation():
    x = Poly([0, 1])
    zero = RatFunc(ParamPoly.zero(), x, 1)
    trace = aim.run_iterations(aim.AimProblem(zero, zero, "p", (0, math.inf)), 2)
    with pytest.raises(aim.DegenerateEvaluationError, match="different x0"):
        aim.quantization_roots(trace, 1)


def test_stability_probes(radial0):
    prob = radial0.problem
    rep = aim.root_stability(prob, 12, [Fraction(1, 2), 1, 2], trace=radial0)
    assert rep.stability < 1e-7
    assert {1, 2, 3, 4} <= set(rep.roots)
    same = aim.root_stability(prob, 12, [1, 1], trace=radial0)
    assert same.stability == 0
    with_pole = aim.root_stability(prob, 12, [0, 1, 2], trace=radial0)
    assert 0 in with_pole.probe_errors and "PoleError" in with_pole.probe_errors[0]
    assert with_pole.roots == rep.roots
    with pytest.raises(ValueError):
        aim.root_stability(prob, 12, [1])


def test_stability_angular_probes():
    prob = angular_aim_problem(Fraction(3, 10), Fraction(9, 10))
    rep = aim.root_stability(prob, 10, [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)])
    assert rep.stability < 1e-7


@pytest.mark.parametrize("ell", [0.0, 0.5, 1.3])
def test_recurrence_fidelity(ell):
    trace = aim.run_iterations(radial_aim_problem(ell, FLOAT), 6)
    rng = random.Random(11)
    for n in range(1, 7):
        for _ in range(50):
            x0, p0 = rng.uniform(0.5, 4), rng.uniform(0, 4)
            ln, lr, sn, sr = aim.recurrence_check_point(trace, n, x0, p0)
            assert abs(ln - lr) <= 1e-4 * max(1, abs(ln))
            assert abs(sn - sr) <= 1e-4 * max(1, abs(sn))


def test_recurrence_fidelity_angular():
    trace = aim.run_iterations(angular_aim_problem(0.5, 0.8, FLOAT), 5)
    rng = random.Random(5)
    for n in range(1, 6):
        for _ in range(50):
            y0, p0 = rng.uniform(0.2, 0.8), rng.uniform(0, 10)
            ln, lr, sn, sr = aim.recurrence_check_point(trace, n, y0, p0)
            assert abs(ln - lr) <= 1e-4 * max(1, abs(ln))
            assert abs(sn - sr) <= 1e-4 * max(1, abs(sn))


def _contained(small, big, tol=1e-7):
    return all(min(abs(float(r) - float(b)) for b in big) < tol for r in small)


@pytest.mark.parametrize("ell", [0, Fraction(1, 2), math.sqrt(2)])
def test_root_enrichment_radial(ell):
    trace = aim.run_iterations(radial_aim_problem(ell), 10)
    for n in range(1, 9):
        a = aim.quantization_roots(trace, 1, n).roots
        b = aim.quantization_roots(trace, 1, n + 2).roots
        assert _contained(a, b)


def test_root_enrichment_angular(angular_half):
    for n in range(1, 9):
        a = aim.quantization_roots(angular_half, Fraction(1, 2), n).roots
        b = aim.quantization_roots(angular_half, Fraction(1, 2), n + 2).roots
        assert _contained(a, b)


@pytest.mark.parametrize("ell", [0, 2, 3])
def test_exact_integrality(ell):
    trace = aim.run_iterations(radial_aim_problem(ell), 8)
    for n in range(1, 9):
        roots = aim.quantization_roots(trace, 1, n).roots
        assert roots == list(range(ell + 1, ell + n + 2))


def test_float_mode_agrees_for_rational_ell():
    trace = aim.run_iterations(radial_aim_problem(1, FLOAT), 8)
    roots = aim.quantization_roots(trace, 1.0, 8).roots
    assert all(abs(r - k) < 1e-6 for r, k in zip(roots, range(2, 6)))
