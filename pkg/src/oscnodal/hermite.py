"""Hermite polynomials: stable evaluation, zeros, norms, and monotonicity data.

Physicists' convention throughout: H_0 = 1, H_1 = 2t,
H_n = 2t H_{n-1} - 2(n-1) H_{n-2}, leading coefficient 2^n, weight e^{-t^2}.

Two representations are maintained side by side:

* ``(sign, log|H_n(t)|)`` -- raw H_n overflows doubles near n ~ 150, but
  ratios of true H_n values are needed when solving angle equations, so
  the log form is computed by upward recurrence with per-step rescaling.
* the unit-norm scaled function  h_n(t) = H_n(t) e^{-t^2/2} / (pi^{1/4} 2^{n/2} sqrt(n!)),
  bounded uniformly in n and t, which is what grids and root finders use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SQRT2 = math.sqrt(2.0)
AIRY_FIRST_ZERO_BRACKET = (3.0, 3.8)  # brackets i1 ~ 3.372; no exact target asserted


class RootConvergenceError(RuntimeError):
    """Newton/bisection failed to locate a Hermite zero."""

    def __init__(self, degree: int, index: int, iterations: int):
        self.degree = degree
        self.index = index
        super().__init__(
            f"zero t_{{{degree},{index + 1}}} did not converge "
            f"within {iterations} iterations"
        )


@dataclass(frozen=True)
class HermiteEval:
    """Value of H_n(t) as (sign, log magnitude) plus the scaled h_n(t).

    Invariant: sign * exp(log_abs) * e^{-t^2/2} / (pi^{1/4} 2^{n/2} sqrt(n!))
    equals ``scaled`` whenever the latter is representable.
    """

    degree: int
    sign: int
    log_abs: float
    scaled: float

    @property
    def value(self) -> float:
        """Raw H_n(t); overflows for large degree, prefer the log form."""
        return self.sign * math.exp(self.log_abs)


@dataclass(frozen=True)
class ZeroTable:
    """The n simple zeros of H_n in increasing order."""

    degree: int
    zeros: np.ndarray

    def __post_init__(self):
        z = np.asarray(self.zeros, dtype=float)
        z.flags.writeable = False
        object.__setattr__(self, "zeros", z)

    @property
    def min_gap(self) -> float:
        if self.degree == 1:
            return math.inf
        return float(np.min(np.diff(self.zeros)))

    def to_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write("i,t\n")
            for i, t in enumerate(self.zeros, start=1):
                fh.write(f"{i},{t:.17g}\n")


def hermite_norm_sq(n: int) -> float:
    """log of the squared L^2(e^{-t^2}) norm: log(pi^{1/2} 2^n n!)."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    return 0.5 * math.log(math.pi) + n * math.log(2.0) + math.lgamma(n + 1)


def log_norm_const(n: int) -> float:
    """log of c_n = pi^{1/4} 2^{n/2} sqrt(n!), the scaling of h_n."""
    return 0.5 * hermite_norm_sq(n)


def scaled_hermite_pair(n: int, t):
    """(h_n(t), h_{n-1}(t)) by the bounded two-term recurrence.

    h_0 = pi^{-1/4} e^{-t^2/2}; h_k = sqrt(2/k) t h_{k-1} - sqrt((k-1)/k) h_{k-2}.
    Accepts scalars or arrays; h_{-1} is reported as 0.
    """
    t = np.asarray(t, dtype=float)
    h0 = math.pi ** -0.25 * np.exp(-0.5 * t * t)
    if n == 0:
        return h0, np.zeros_like(h0)
    prev, cur = h0, SQRT2 * t * h0
    for k in range(2, n + 1):
        prev, cur = cur, math.sqrt(2.0 / k) * t * cur - math.sqrt((k - 1.0) / k) * prev
    return cur, prev


def scaled_hermite(n: int, t):
    """h_n(t), vectorized."""
    return scaled_hermite_pair(n, t)[0]


def scaled_hermite_deriv(n: int, t):
    """h_n'(t) = sqrt(2n) h_{n-1}(t) - t h_n(t), vectorized."""
    hn, hm1 = scaled_hermite_pair(n, t)
    return math.sqrt(2.0 * n) * hm1 - np.asarray(t, dtype=float) * hn


def hermite_signlog(n: int, t):
    """(sign, log|H_n(t)|) by upward recurrence with per-step rescaling.

    No intermediate overflow for any degree (rescaling keeps the working
    pair at unit magnitude and accumulates the exponent separately).
    Vectorized; sign is 0 and log_abs -inf at an exact zero.
    """
    t = np.asarray(t, dtype=float)
    if n == 0:
        return np.ones_like(t, dtype=int), np.zeros_like(t)
    a = np.ones_like(t)          # H_{k-1} rescaled
    b = 2.0 * t                  # H_k rescaled
    acc = np.zeros_like(t)       # accumulated log of the rescale factors
    for k in range(1, n):
        c = 2.0 * t * b - 2.0 * k * a
        m = np.maximum(np.abs(c), np.abs(b))
        # H_k and H_{k+1} have no common zero, so m > 0 always
        if np.any(m == 0.0):
            raise AssertionError("consecutive Hermite values both vanished")
        a = b / m
        b = c / m
        acc += np.log(m)
    with np.errstate(divide="ignore"):
        log_abs = np.where(b == 0.0, -np.inf, np.log(np.abs(np.where(b == 0.0, 1.0, b)))) + acc
    sign = np.sign(b).astype(int)
    return sign, log_abs


def eval_hermite(n: int, t: float) -> HermiteEval:
    """H_n(t) in both representations."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    if not math.isfinite(t):
        raise ValueError("t must be finite")
    sign, log_abs = hermite_signlog(n, t)
    scaled = scaled_hermite(n, t)
    return HermiteEval(n, int(sign), float(log_abs), float(scaled))


def eval_hermite_derivative(n: int, t: float) -> HermiteEval:
    """H_n'(t) = 2n H_{n-1}(t), kept separate so gradients cannot drift.

    The ``scaled`` field carries H_n'(t) e^{-t^2/2} / c_n = sqrt(2n) h_{n-1}(t),
    i.e. the same degree-n normalization as eval_hermite(n, .), so the
    sign/log/scaled consistency invariant holds for the returned object.
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    base = eval_hermite(n - 1, t)
    return HermiteEval(
        degree=n,
        sign=base.sign,
        log_abs=base.log_abs + math.log(2.0 * n),
        scaled=math.sqrt(2.0 * n) * base.scaled,
    )


_zero_cache: dict[int, np.ndarray] = {1: np.zeros(1)}


def _solve_zero_row(k: int, prev: np.ndarray) -> np.ndarray:
    """All k zeros of H_k, bracketed by the zeros of H_{k-1} (interlacing)."""
    bound = math.sqrt(2.0 * k + 1.0)
    lo = np.concatenate(([-bound], prev))
    hi = np.concatenate((prev, [bound]))
    sign_lo = np.sign(scaled_hermite(k, lo))
    x = 0.5 * (lo + hi)
    rejected = np.zeros(k, dtype=int)
    done = np.zeros(k, dtype=bool)
    max_iter = 100
    for _ in range(max_iter):
        f, fm1 = scaled_hermite_pair(k, x)
        fp = math.sqrt(2.0 * k) * fm1 - x * f
        # shrink the bracket with the current sign before stepping
        same = np.sign(f) == sign_lo
        lo = np.where(same, x, lo)
        hi = np.where(same, hi, x)
        with np.errstate(divide="ignore", invalid="ignore"):
            xn = x - f / fp
        bad = ~np.isfinite(xn) | (xn <= lo) | (xn >= hi) | (rejected >= 3)
        rejected += bad & ~done
        xn = np.where(bad, 0.5 * (lo + hi), xn)
        step = np.abs(xn - x)
        done |= step < 1e-14 * (1.0 + np.abs(xn))
        x = xn
        if done.all():
            break
    if not done.all():
        idx = int(np.argmin(done))
        raise RootConvergenceError(k, idx, max_iter)
    # two unclamped Newton polish steps, then exact antisymmetrization
    for _ in range(2):
        f, fm1 = scaled_hermite_pair(k, x)
        fp = math.sqrt(2.0 * k) * fm1 - x * f
        x = x - f / fp
    x = 0.5 * (x - x[::-1])
    return np.sort(x)


def hermite_zeros(n: int) -> ZeroTable:
    """All n zeros of H_n, built inductively from degree 1 and cached.

    Newton steps on the scaled function, clamped to interlacing brackets,
    falling back to bisection after 3 rejected steps per root.
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    top = max(_zero_cache)
    for k in range(top + 1, n + 1):
        _zero_cache[k] = _solve_zero_row(k, _zero_cache[k - 1])
    return ZeroTable(n, _zero_cache[n])


def gauss_hermite_rule(m: int):
    """Nodes and weights for the m-point e^{-t^2} quadrature.

    Weights via w_i = 2^{m-1} m! sqrt(pi) / (m^2 H_{m-1}(x_i)^2), computed
    in log form. Exact for polynomials of degree <= 2m-1.
    """
    if m < 1:
        raise ValueError("need at least one node")
    nodes = hermite_zeros(m).zeros
    _, log_h = hermite_signlog(m - 1, nodes)
    log_w = (
        (m - 1) * math.log(2.0)
        + math.lgamma(m + 1)
        + 0.5 * math.log(math.pi)
        - 2.0 * math.log(m)
        - 2.0 * log_h
    )
    return nodes, np.exp(log_w)


def theta_functional(n: int, t):
    """Gaussian-scaled form of 2n H_n(t)^2 + H_n'(t)^2.

    Returns e^{-t^2} (2n H_n^2 + H_n'^2) / (pi^{1/2} 2^n n!)
    = 2n (h_n(t)^2 + h_{n-1}(t)^2), which never overflows. The unscaled
    functional is nondecreasing for t >= 0; compare via
    ``theta_functional_log`` which undoes the Gaussian in log space.
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    hn, hm1 = scaled_hermite_pair(n, t)
    return 2.0 * n * (hn * hn + hm1 * hm1)


def theta_functional_log(n: int, t):
    """log of the unscaled functional, up to one additive constant."""
    t = np.asarray(t, dtype=float)
    return t * t + np.log(theta_functional(n, t))


def first_zero_asymptotic_residual(n: int) -> float:
    """Consistency probe for the extreme-zero asymptotics.

    Returns (sqrt(2n+1) - t_{n,n}) * 6^{1/3} * (2n+1)^{1/6}, which tends to
    the first positive zero i1 ~ 3.372 of the Airy function in Szego's
    normalization. A probe, not a production formula: callers should only
    rely on AIRY_FIRST_ZERO_BRACKET and slow variation in n.
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    t_max = float(hermite_zeros(n).zeros[-1])
    return (math.sqrt(2.0 * n + 1.0) - t_max) * 6.0 ** (1.0 / 3.0) * (2.0 * n + 1.0) ** (1.0 / 6.0)


_coeff_cache: dict[int, list[int]] = {0: [1], 1: [0, 2]}


def hermite_coefficients(n: int) -> list[int]:
    """Exact integer coefficients of H_n, ascending powers."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    top = max(_coeff_cache)
    for k in range(top + 1, n + 1):
        a = _coeff_cache[k - 1]
        b = _coeff_cache[k - 2]
        c = [0] * (k + 1)
        for p, v in enumerate(a):
            c[p + 1] += 2 * v
        for p, v in enumerate(b):
            c[p] -= 2 * (k - 1) * v
        _coeff_cache[k] = c
    return list(_coeff_cache[n])
