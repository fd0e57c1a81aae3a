import math
from fractions import Fraction

import numpy as np
import pytest

from oscnodal import hermite as hm
from oscnodal import oscillator as osc

from conftest import rel_err


def test_product_eigenvalue_exact():
    assert osc.ProductEigenfunction(0, 0).eigenvalue() == 2
    assert osc.ProductEigenfunction(3, 4).eigenvalue() == 16


def test_eigenvalue_equation_finite_difference(rng):
    # (-Lap + x^2 + y^2) phi = 2(m+n+1) phi via the 5-point cross stencil
    h = 2e-3
    for _ in range(20):
        m, n = int(rng.integers(0, 5)), int(rng.integers(0, 5))
        phi = osc.ProductEigenfunction(m, n)
        lam = phi.eigenvalue()
        for _ in range(10):
            x, y = float(rng.uniform(-2, 2)), float(rng.uniform(-2, 2))
            if abs(phi.point_values(x, y)) > 0.02:
                break
        f = phi.point_values
        lap = (f(x + h, y) + f(x - h, y) + f(x, y + h) + f(x, y - h) - 4 * f(x, y)) / (h * h)
        lhs = -lap + (x * x + y * y) * f(x, y)
        assert abs(lhs - lam * f(x, y)) / abs(lam * f(x, y)) < 1e-5


def test_superposition_requires_odd_degree():
    with pytest.raises(ValueError):
        osc.Superposition(4, 0.3)
    with pytest.raises(ValueError):
        osc.Superposition(0, 0.3)


def test_theta_reduced_mod_pi():
    s = osc.Superposition(3, 0.4 + math.pi)
    assert s.theta == pytest.approx(0.4, abs=1e-15)
    f = osc.Superposition.from_pi_fraction(3, Fraction(7, 4))
    assert f.theta_over_pi == Fraction(3, 4)
    assert f.is_diagonal


def test_special_angle_detection():
    assert osc.Superposition(5, 0.75 * math.pi).is_diagonal
    assert osc.Superposition.from_pi_fraction(5, Fraction(1, 4)).is_antidiagonal
    assert not osc.Superposition(5, 0.7).is_diagonal


def test_diagonal_values_vanish_at_three_quarters_pi():
    s = osc.Superposition.from_pi_fraction(7, Fraction(3, 4))
    t = np.linspace(-5, 5, 101)
    assert np.max(np.abs(osc.eval_superposition(s, t, t))) == 0.0


def test_pure_vertical_mode_at_half_pi():
    s = osc.Superposition.from_pi_fraction(3, Fraction(1, 2))
    zy = hm.hermite_zeros(3).zeros
    for t in zy:
        assert abs(osc.eval_superposition(s, 0.37, t)) < 1e-14


def test_lattice_point_on_nodal_set():
    # (t_{3,1}, t_{3,2}) = (-sqrt(3/2), 0) is a zero for every theta
    s = osc.Superposition(3, math.pi / 8)
    z = hm.hermite_zeros(3).zeros
    assert abs(osc.eval_superposition(s, z[0], z[1])) < 1e-14


def test_gradient_matches_finite_difference(rng):
    h = 1e-6
    s = osc.Superposition(5, 0.9)
    for _ in range(100):
        x, y = float(rng.uniform(-3, 3)), float(rng.uniform(-3, 3))
        gx, gy = osc.grad_superposition(s, x, y)
        fdx = (osc.eval_superposition(s, x + h, y) - osc.eval_superposition(s, x - h, y)) / (2 * h)
        fdy = (osc.eval_superposition(s, x, y + h) - osc.eval_superposition(s, x, y - h)) / (2 * h)
        scale = max(abs(gx), abs(gy), abs(fdx), abs(fdy), 1e-6)
        assert abs(gx - fdx) / scale < 1e-6
        assert abs(gy - fdy) / scale < 1e-6


def test_gradient_nonzero_at_lattice_points():
    s = osc.Superposition(5, 0.7)
    z = hm.hermite_zeros(5).zeros
    for zx in z:
        for zy in z:
            gx, gy = osc.grad_superposition(s, zx, zy)
            assert math.hypot(float(gx), float(gy)) > 1e-6


def test_gradient_vanishes_at_diagonal_critical_zero():
    s = osc.Superposition.from_pi_fraction(3, Fraction(3, 4))
    a = hm.hermite_zeros(2).zeros[0]
    gx, gy = osc.grad_superposition(s, a, a)
    assert abs(float(gx)) < 1e-12 and abs(float(gy)) < 1e-12
    assert abs(osc.eval_superposition(s, a, a)) < 1e-14


def test_symmetry_residuals(rng):
    s = osc.Superposition(5, 0.3)
    r = osc.symmetry_check(s, 1.1, -0.7)
    scale = max(1e-300, abs(osc.eval_superposition(s, 1.1, -0.7)))
    assert max(abs(v) for v in r) < 1e-12 * max(1.0, scale)
    for _ in range(50):
        n = 2 * int(rng.integers(1, 6)) + 1
        th = float(rng.uniform(0, math.pi))
        x, y = float(rng.uniform(-4, 4)), float(rng.uniform(-4, 4))
        r = osc.symmetry_check(osc.Superposition(n, th), x, y)
        assert max(abs(v) for v in r) < 1e-12


def test_swap_self_dual_at_quarter_pi():
    s = osc.Superposition.from_pi_fraction(7, Fraction(1, 4))
    for x, y in [(0.3, 1.9), (-2.0, 0.4)]:
        assert osc.eval_superposition(s, y, x) == pytest.approx(
            osc.eval_superposition(s, x, y), rel=1e-13, abs=1e-300
        )


def test_y_flip_at_half_pi():
    s = osc.Superposition.from_pi_fraction(3, Fraction(1, 2))
    for x, y in [(0.5, 1.1), (-1.3, 2.2)]:
        assert osc.eval_superposition(s, x, -y) == pytest.approx(
            -osc.eval_superposition(s, x, y), rel=1e-13
        )


def test_eigenspace_info():
    e0 = osc.eigenspace_info(0)
    assert (e0.dimension, e0.eigenvalue) == (1, 2)
    e2 = osc.eigenspace_info(2)
    assert (e2.dimension, e2.eigenvalue, e2.parity) == (3, 6, "even")
    e7 = osc.eigenspace_info(7)
    assert (e7.dimension, e7.parity) == (8, "odd")


def test_zero_set_equivalence_sign_vs_log(rng):
    # sign of the scaled evaluation equals the sign computed in the log form
    for _ in range(10):
        n = 2 * int(rng.integers(1, 8)) + 1
        th = float(rng.uniform(0.05, math.pi - 0.05))
        s = osc.Superposition(n, th)
        xs = rng.uniform(-4.5, 4.5, size=1000)
        ys = rng.uniform(-4.5, 4.5, size=1000)
        direct = np.sign(osc.eval_superposition(s, xs, ys))
        logform = osc.superposition_signlog(n, th, xs, ys)
        keep = np.abs(osc.eval_superposition(s, xs, ys)) > 1e-14
        assert np.all(direct[keep] == logform[keep])


def test_checkerboard_membership(rng):
    # points on the nodal set away from the lattice satisfy H_n(x) H_n(y) < 0
    n = 7
    th = 0.2
    s = osc.Superposition(n, th)
    zeros = hm.hermite_zeros(n).zeros
    found = 0
    for x in np.linspace(-3.5, 3.5, 400):
        ys = np.linspace(-4.5, 4.5, 600)
        vals = osc.eval_superposition(s, x, ys)
        flips = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
        for k in flips:
            lo, hi = ys[k], ys[k + 1]
            for _ in range(50):
                mid = 0.5 * (lo + hi)
                if osc.eval_superposition(s, x, mid) * osc.eval_superposition(s, x, lo) <= 0:
                    hi = mid
                else:
                    lo = mid
            y = 0.5 * (lo + hi)
            near_lattice = np.min(np.abs(zeros - x)) < 1e-6 and np.min(np.abs(zeros - y)) < 1e-6
            if not near_lattice:
                sx, _ = hm.hermite_signlog(n, x)
                sy, _ = hm.hermite_signlog(n, y)
                assert int(sx) * int(sy) < 0
                found += 1
    assert found > 500


def test_grid_values_match_pointwise(rng):
    s = osc.Superposition(5, 1.1)
    xs = np.linspace(-3, 3, 7)
    ys = np.linspace(-2, 2, 5)
    g = s.grid_values(xs, ys)
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            assert g[i, j] == pytest.approx(float(osc.eval_superposition(s, x, y)), rel=1e-14, abs=1e-300)


def test_hessian_matches_finite_difference():
    s = osc.Superposition(5, 0.9)
    x, y = 0.7, -1.2
    h = 1e-4
    f = lambda a, b: float(osc.eval_superposition(s, a, b))
    gxx, gxy, gyy = (float(v) for v in osc.hessian_superposition(s, x, y))
    fd_xx = (f(x + h, y) - 2 * f(x, y) + f(x - h, y)) / h**2
    fd_yy = (f(x, y + h) - 2 * f(x, y) + f(x, y - h)) / h**2
    fd_xy = (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4 * h**2)
    assert rel_err(gxx, fd_xx) < 1e-6
    assert rel_err(gyy, fd_yy) < 1e-6
    assert abs(gxy - fd_xy) < 1e-6 * max(abs(gxx), abs(gyy))
