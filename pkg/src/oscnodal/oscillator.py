"""Eigenfunctions of -Laplacian + x^2 + y^2 and the two-term superposition family.

All pointwise work uses the Gaussian-scaled representative (unit-norm Hermite
functions), which has the same zero set and signs as the textbook
eigenfunction up to one global positive constant and never overflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import hermite as hm

SPECIAL_ANGLE_TOL = 1e-12


@dataclass(frozen=True)
class ProductEigenfunction:
    """phi_{m,n} = H_m(x) H_n(y) e^{-(x^2+y^2)/2}, scaled to unit norm."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("degrees must be >= 0")

    def eigenvalue(self) -> int:
        return 2 * (self.m + self.n + 1)

    def point_values(self, x, y):
        return hm.scaled_hermite(self.m, x) * hm.scaled_hermite(self.n, y)

    def grid_values(self, xs, ys):
        return np.outer(hm.scaled_hermite(self.m, xs), hm.scaled_hermite(self.n, ys))


@dataclass(frozen=True)
class EigenspaceInfo:
    ell: int
    dimension: int
    eigenvalue: int
    parity: str  # "even" or "odd" under (x, y) -> (-x, -y)


def eigenspace_info(ell: int) -> EigenspaceInfo:
    if ell < 0:
        raise ValueError("ell must be >= 0")
    return EigenspaceInfo(
        ell=ell,
        dimension=ell + 1,
        eigenvalue=2 * (ell + 1),
        parity="even" if ell % 2 == 0 else "odd",
    )


@dataclass(frozen=True)
class Superposition:
    """cos(theta) phi_{n,0} + sin(theta) phi_{0,n} for odd n, theta in [0, pi).

    theta is reduced mod pi (the angle theta + pi gives the negated
    eigenfunction, which has the same nodal set). When built from an exact
    rational multiple of pi the fraction is kept so that special angles
    like 3/4 pi can be recognized exactly.
    """

    n: int
    theta: float
    theta_over_pi: Fraction | None = field(default=None)

    def __post_init__(self):
        if self.n < 1 or self.n % 2 == 0:
            raise ValueError("n must be odd (two-term superpositions of even degree are out of scope)")
        if self.theta_over_pi is not None:
            frac = Fraction(self.theta_over_pi) % 1
            object.__setattr__(self, "theta_over_pi", frac)
            object.__setattr__(self, "theta", float(frac) * math.pi)
        else:
            object.__setattr__(self, "theta", float(self.theta) % math.pi)

    @classmethod
    def from_pi_fraction(cls, n: int, frac) -> "Superposition":
        return cls(n, 0.0, Fraction(frac))

    def _is_angle(self, frac: Fraction) -> bool:
        if self.theta_over_pi is not None:
            return self.theta_over_pi == frac
        return abs(self.theta - float(frac) * math.pi) < SPECIAL_ANGLE_TOL

    @property
    def is_diagonal(self) -> bool:
        """theta == 3 pi / 4: the diagonal x = y lies in the nodal set."""
        return self._is_angle(Fraction(3, 4))

    @property
    def is_antidiagonal(self) -> bool:
        """theta == pi / 4: the antidiagonal x = -y lies in the nodal set."""
        return self._is_angle(Fraction(1, 4))

    def eigenvalue(self) -> int:
        return 2 * (self.n + 1)

    def cos_sin(self) -> tuple[float, float]:
        """(cos theta, sin theta); exact constants at quarter-pi rationals.

        Exactness matters at 3 pi/4, where cos + sin must cancel bitwise so
        the diagonal evaluates to an exact zero of the scaled representative.
        """
        frac = self.theta_over_pi
        if frac is not None and (4 % frac.denominator) == 0:
            table = {
                Fraction(0): (1.0, 0.0),
                Fraction(1, 4): (math.sqrt(0.5), math.sqrt(0.5)),
                Fraction(1, 2): (0.0, 1.0),
                Fraction(3, 4): (-math.sqrt(0.5), math.sqrt(0.5)),
            }
            return table[frac]
        return math.cos(self.theta), math.sin(self.theta)

    def point_values(self, x, y):
        return eval_superposition(self, x, y)

    def grid_values(self, xs, ys):
        c, s = self.cos_sin()
        hx_n = hm.scaled_hermite(self.n, xs)
        hx_0 = hm.scaled_hermite(0, xs)
        hy_n = hm.scaled_hermite(self.n, ys)
        hy_0 = hm.scaled_hermite(0, ys)
        return c * np.outer(hx_n, hy_0) + s * np.outer(hx_0, hy_n)


def _eval_at_angle(n: int, theta: float, x, y):
    """Scaled superposition value at a raw (unreduced) angle."""
    c, s = math.cos(theta), math.sin(theta)
    return c * (hm.scaled_hermite(n, x) * hm.scaled_hermite(0, y)) + s * (hm.scaled_hermite(0, x) * hm.scaled_hermite(n, y))


def eval_superposition(s: Superposition, x, y):
    """Scaled value; zero set and signs agree with the unscaled eigenfunction.

    The two products are formed before the angle factors are applied, so at
    theta = 3 pi/4 the diagonal x = y cancels to an exact floating zero.
    """
    c, sn = s.cos_sin()
    return c * (hm.scaled_hermite(s.n, x) * hm.scaled_hermite(0, y)) + sn * (hm.scaled_hermite(0, x) * hm.scaled_hermite(s.n, y))


def grad_superposition(s: Superposition, x, y):
    """Gradient of the scaled representative.

    Vanishes together with the function value exactly where the unscaled
    eigenfunction has a critical zero (the Gaussian factor never vanishes).
    """
    c, sn = s.cos_sin()
    n = s.n
    gx = c * hm.scaled_hermite_deriv(n, x) * hm.scaled_hermite(0, y) + sn * hm.scaled_hermite_deriv(0, x) * hm.scaled_hermite(n, y)
    gy = c * hm.scaled_hermite(n, x) * hm.scaled_hermite_deriv(0, y) + sn * hm.scaled_hermite(0, x) * hm.scaled_hermite_deriv(n, y)
    return gx, gy


def hessian_superposition(s: Superposition, x, y):
    """Hessian (gxx, gxy, gyy) of the scaled representative.

    Uses the oscillator ODE h_n'' = (t^2 - 2n - 1) h_n for the pure second
    derivatives, so classification points are evaluated exactly.
    """
    c, sn = s.cos_sin()
    n = s.n
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    hx_n, hx_0 = hm.scaled_hermite(n, x), hm.scaled_hermite(0, x)
    hy_n, hy_0 = hm.scaled_hermite(n, y), hm.scaled_hermite(0, y)
    dx_n, dx_0 = hm.scaled_hermite_deriv(n, x), hm.scaled_hermite_deriv(0, x)
    dy_n, dy_0 = hm.scaled_hermite_deriv(n, y), hm.scaled_hermite_deriv(0, y)
    ddx_n = (x * x - (2 * n + 1)) * hx_n
    ddx_0 = (x * x - 1.0) * hx_0
    ddy_n = (y * y - (2 * n + 1)) * hy_n
    ddy_0 = (y * y - 1.0) * hy_0
    gxx = c * ddx_n * hy_0 + sn * ddx_0 * hy_n
    gyy = c * hx_n * ddy_0 + sn * hx_0 * ddy_n
    gxy = c * dx_n * dy_0 + sn * dx_0 * dy_n
    return gxx, gxy, gyy


def symmetry_check(s: Superposition, x: float, y: float):
    """Residuals of the three odd-n reflection identities at one point.

    (1) value(-x, y) - value_at(pi - theta)(x, y)
    (2) value(x, -y) + value_at(pi - theta)(x, y)
    (3) value(y, x) - value_at(pi/2 - theta)(x, y)
    """
    n, th = s.n, s.theta
    r1 = _eval_at_angle(n, th, -x, y) - _eval_at_angle(n, math.pi - th, x, y)
    r2 = _eval_at_angle(n, th, x, -y) + _eval_at_angle(n, math.pi - th, x, y)
    r3 = _eval_at_angle(n, th, y, x) - _eval_at_angle(n, math.pi / 2.0 - th, x, y)
    return float(r1), float(r2), float(r3)


def superposition_signlog(n: int, theta: float, x, y):
    """Sign of the superposition via the log representation of H_n.

    sign(cos(theta) H_n(x) + sin(theta) H_n(y)); the Gaussian factor is
    positive so this is the sign of the eigenfunction itself. Safe at any
    degree because only the ratio of the two Hermite values enters.
    """
    sx, lx = hm.hermite_signlog(n, x)
    sy, ly = hm.hermite_signlog(n, y)
    m = np.maximum(lx, ly)
    m = np.where(np.isfinite(m), m, 0.0)
    val = math.cos(theta) * sx * np.exp(lx - m) + math.sin(theta) * sy * np.exp(ly - m)
    return np.sign(val).astype(int)
