"""Barrier constants and the rectangle that confines the bounded nodal features.

For theta in (0, pi/4] two numbers pin down the nodal set far from the origin:

* t_left  (< t_{n,1}): where H_n(t_left) = -H_n(t_{n-1,1}); columns x < t_left
  meet the nodal set exactly once.
* t_top   (> t_{n,n}): where tan(theta) H_n(t_top) = H_n(t_{n-1,1}); rows
  y > t_top meet the nodal set exactly once.

Outside the rectangle (t_left, -t_left) x (-t_top, t_top) the nodal set is
exactly two regular arcs, centrally symmetric, with slope -(cot theta)^{1/n}
at infinity. Angles outside (0, pi/4] are folded in by the reflection and
swap symmetries of the odd-degree family.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import hermite as hm
from .oscillator import Superposition, eval_superposition


@dataclass(frozen=True)
class Rect:
    xmin: float
    xmax: float
    ymin: float
    ymax: float

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin

    def contains(self, x: float, y: float) -> bool:
        return self.xmin <= x <= self.xmax and self.ymin <= y <= self.ymax

    def scaled(self, factor: float) -> "Rect":
        return Rect(self.xmin * factor, self.xmax * factor, self.ymin * factor, self.ymax * factor)

    def as_list(self) -> list[float]:
        return [self.xmin, self.xmax, self.ymin, self.ymax]


@dataclass(frozen=True)
class BarrierData:
    """Barrier constants for one (n, theta) and the margined bounding box.

    ``box`` is the rectangle (t_left, -t_left) x (-t_top, t_top) scaled by the
    margin factor: x is bounded by the column barrier and y by the row
    barrier. All bounded components of the nodal set live inside it.
    """

    n: int
    theta: float
    t_left: float
    t_top: float
    margin: float
    box: Rect

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "n": self.n,
            "theta": self.theta,
            "t_left": self.t_left,
            "t_top": self.t_top,
            "margin": self.margin,
            "box": self.box.as_list(),
        }

    def to_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh, indent=1)
            fh.write("\n")


class BarrierConvergenceError(RuntimeError):
    pass


def _require_odd(n: int) -> None:
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be odd and >= 3")


def equivalent_acute_angle(theta: float) -> float:
    """Fold theta into [0, pi/4] using the odd-n reflection/swap symmetries.

    The folded angle has a congruent nodal set (up to axis flips and the
    diagonal swap), so barrier data computed for it bounds the original.
    """
    t = theta % math.pi
    if t > math.pi / 2.0:
        t = math.pi - t
    if t > math.pi / 4.0:
        t = math.pi / 2.0 - t
    return t


def _newton_bisect(f_df, lo: float, hi: float, tol: float = 1e-14, max_iter: int = 100) -> float:
    """Root of f on the bracket [lo, hi]; Newton when it stays inside, else bisect."""
    flo, _ = f_df(lo)
    fhi, _ = f_df(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise BarrierConvergenceError(f"bracket [{lo}, {hi}] does not straddle a root")
    x = 0.5 * (lo + hi)
    for _ in range(max_iter):
        f, df = f_df(x)
        if f == 0.0:
            return x
        if f * flo > 0:
            lo = x
        else:
            hi = x
        step_ok = df != 0.0 and math.isfinite(df)
        xn = x - f / df if step_ok else 0.5 * (lo + hi)
        if not (lo < xn < hi):
            xn = 0.5 * (lo + hi)
        if abs(xn - x) < tol * (1.0 + abs(xn)):
            return xn
        x = xn
    raise BarrierConvergenceError(f"no convergence in {max_iter} iterations on [{lo}, {hi}]")


def _log_h(n: int, t: float) -> tuple[int, float]:
    s, l = hm.hermite_signlog(n, t)
    return int(s), float(l)


def barrier_left(n: int) -> float:
    """The unique t < t_{n,1} with H_n(t) = -H_n(t_{n-1,1}).

    H_n is increasing on that ray (odd degree, positive leading coefficient)
    so a sign march followed by Newton/bisection on the log ratio converges
    to full precision.
    """
    _require_odd(n)
    t_n1 = float(hm.hermite_zeros(n).zeros[0])
    a1 = float(hm.hermite_zeros(n - 1).zeros[0])
    s_a, l_a = _log_h(n, a1)
    assert s_a > 0, "H_n at the first H_{n-1} zero is positive for odd n"

    def f_df(t):
        s_t, l_t = _log_h(n, t)
        # F = H_n(t)/|H_n(a1)| + 1; on the ray H_n < 0 so F = 1 - e^{l_t - l_a}
        ratio = s_t * math.exp(l_t - l_a)
        s_d, l_d = _log_h(n - 1, t)
        dratio = 2.0 * n * s_d * math.exp(l_d - l_a)
        return ratio + 1.0, dratio

    lo = t_n1 - 0.5
    while f_df(lo)[0] > 0.0:
        lo -= max(0.5, 0.25 * abs(lo))
        if lo < -10.0 * math.sqrt(2.0 * n + 1.0):
            raise BarrierConvergenceError(f"no left bracket found for n={n}")
    root = _newton_bisect(f_df, lo, t_n1)
    s_r, l_r = _log_h(n, root)
    assert s_r < 0 and abs(l_r - l_a) < 1e-12, "left barrier residual too large"
    return root


def barrier_top(n: int, theta: float) -> float:
    """The unique t > t_{n,n} with tan(theta) H_n(t) = H_n(t_{n-1,1}).

    Requires theta in (0, pi/4]; H_n is increasing past its last zero so the
    root is unique. Solved on log H_n with a geometrically grown bracket.
    """
    _require_odd(n)
    if not (0.0 < theta <= math.pi / 4.0 + 1e-15):
        raise ValueError("theta must lie in (0, pi/4]")
    t_nn = float(hm.hermite_zeros(n).zeros[-1])
    a1 = float(hm.hermite_zeros(n - 1).zeros[0])
    s_a, l_a = _log_h(n, a1)
    log_target = l_a + math.log(1.0 / math.tan(theta))

    def f_df(t):
        s_t, l_t = _log_h(n, t)
        assert s_t > 0
        s_d, l_d = _log_h(n - 1, t)
        dlog = 2.0 * n * s_d * math.exp(l_d - l_t)
        return l_t - log_target, dlog

    lo = t_nn + 1e-9
    hi = t_nn + 1.0
    while f_df(hi)[0] < 0.0:
        hi = t_nn + 2.0 * (hi - t_nn)
        if hi > 100.0 * math.sqrt(2.0 * n + 1.0):
            raise BarrierConvergenceError(f"no top bracket found for n={n}, theta={theta}")
    root = _newton_bisect(f_df, lo, hi)
    _, l_r = _log_h(n, root)
    assert abs(l_r - log_target) < 1e-12, "top barrier residual too large"
    return root


def barrier_box(n: int, theta: float, margin: float = 1.25) -> BarrierData:
    """Barrier constants and the margined confinement rectangle.

    theta outside (0, pi/4] is folded by symmetry first; the folded angle has
    the same box (the symmetries are axis flips and the diagonal swap, and
    the rectangle is centrally symmetric with x/y extents exchanged only
    when t_top and |t_left| would both still bound the fold).
    """
    _require_odd(n)
    if margin < 1.0:
        raise ValueError("margin factor must be >= 1")
    theta_eq = equivalent_acute_angle(theta)
    if theta_eq <= 0.0:
        raise ValueError("theta must not be a multiple of pi/2 (product case has no barrier box)")
    t_left = barrier_left(n)
    t_top = barrier_top(n, theta_eq)
    box = Rect(t_left * margin, -t_left * margin, -t_top * margin, t_top * margin)
    return BarrierData(n=n, theta=theta, t_left=t_left, t_top=t_top, margin=margin, box=box)


def enclosing_square(n: int, theta: float, margin: float = 1.25) -> Rect:
    """Square centered at the origin containing the barrier box (grids use this)."""
    bd = barrier_box(n, theta, margin)
    s = max(-bd.box.xmin, bd.box.ymax)
    return Rect(-s, s, -s, s)


def asymptote_slope(n: int, theta: float) -> float:
    """Slope -(cot theta)^{1/n} of the exterior arcs at infinity, theta in (0, pi/4]."""
    _require_odd(n)
    if not (0.0 < theta <= math.pi / 4.0 + 1e-15):
        raise ValueError("theta must lie in (0, pi/4]")
    return -math.exp(math.log(1.0 / math.tan(theta)) / n)


def column_zero_above(n: int, theta: float, x: float) -> float:
    """The unique y > t_{n,n} with cos(theta) H_n(x) + sin(theta) H_n(y) = 0.

    Valid for x < t_{n,1} (so H_n(x) < 0 and the target is positive).
    """
    _require_odd(n)
    s_x, l_x = _log_h(n, x)
    if s_x >= 0:
        raise ValueError("need x left of the first zero of H_n")
    t_nn = float(hm.hermite_zeros(n).zeros[-1])
    log_target = l_x + math.log(1.0 / math.tan(theta))

    def f_df(t):
        _, l_t = _log_h(n, t)
        s_d, l_d = _log_h(n - 1, t)
        return l_t - log_target, 2.0 * n * s_d * math.exp(l_d - l_t)

    hi = t_nn + 1.0
    while f_df(hi)[0] < 0.0:
        hi = t_nn + 2.0 * (hi - t_nn)
    return _newton_bisect(f_df, t_nn + 1e-9, hi)


def asymptote_probe(n: int, theta: float, x_factor: float = 3.0) -> tuple[float, float]:
    """(observed y/x on the exterior arc, closed-form slope) far out on the arc."""
    slope = asymptote_slope(n, theta)
    t_top = barrier_top(n, theta)
    x = -x_factor * t_top
    y = column_zero_above(n, theta, x)
    return y / x, slope


def _count_zero_runs(vals: np.ndarray, ztol: float = 1e-13) -> int:
    """Zeros of a sampled 1-D function: sign changes plus snapped-zero runs."""
    m = float(np.max(np.abs(vals)))
    if m == 0.0:
        return 0
    v = np.where(np.abs(vals) < ztol * m, 0.0, vals)
    count = 0
    prev_sign = 0
    in_zero_run = False
    for x in v:
        s = 0 if x == 0.0 else (1 if x > 0 else -1)
        if s == 0:
            if not in_zero_run:
                count += 1
                in_zero_run = True
        else:
            if not in_zero_run and prev_sign != 0 and s != prev_sign:
                count += 1
            prev_sign = s
            in_zero_run = False
    return count


@dataclass(frozen=True)
class CrossingCountVerdict:
    n: int
    theta: float
    ok: bool
    records: tuple   # (case, sample_coordinate, count)
    counterexample: tuple | None


def barrier_crossing_counts(n: int, theta: float, samples: int = 5, resolution: int = 4096) -> CrossingCountVerdict:
    """Verify the one-crossing statements by dense 1-D sign counting.

    (a) columns x in [t_left, t_{n,1}]: one zero in y above t_{n,n};
    (b) columns x < t_left: one zero on the whole line;
    (c) rows y in [t_{n,n}, t_top]: one zero in x left of t_{n,1};
    (d) rows y > t_top: one zero on the whole line.
    Counts, not locations, are the contract.
    """
    _require_odd(n)
    if not (0.0 < theta <= math.pi / 4.0 + 1e-15):
        raise ValueError("theta must lie in (0, pi/4]")
    s = Superposition(n, theta)
    zn = hm.hermite_zeros(n).zeros
    t_left = barrier_left(n)
    t_top = barrier_top(n, theta)
    gap = float(zn[0] - t_left)
    records = []

    def check(case, coord, vals):
        c = _count_zero_runs(vals)
        records.append((case, float(coord), c))
        return c == 1

    ok = True
    # (a) columns down to the left barrier, window above the lattice
    ys = np.linspace(zn[-1], 1.3 * t_top + 0.5, resolution)
    for x in np.linspace(t_left, zn[0], samples):
        ok &= check("column-above", x, eval_superposition(s, x, ys))
    # (b) columns beyond the left barrier, window covering the solved zero
    xs_b = np.linspace(t_left - 0.3 * gap, t_left - 0.02 * gap, samples)
    y_max = column_zero_above(n, theta, float(xs_b[0])) + 1.0
    ys_b = np.linspace(-y_max, y_max, resolution)
    for x in xs_b:
        ok &= check("column-full-line", x, eval_superposition(s, x, ys_b))
    # (c) rows across the top band, window left of the lattice
    xs_c = np.linspace(-(1.3 * abs(t_left) + 0.5), zn[0], resolution)
    for y in np.linspace(zn[-1], t_top, samples):
        ok &= check("row-left", y, eval_superposition(s, xs_c, y))
    # (d) rows beyond the top barrier
    band = t_top - float(zn[-1])
    ys_d = np.linspace(t_top + 0.02 * band, t_top + 0.3 * band, samples)
    x_far = abs(_row_zero_left(n, theta, float(ys_d[-1]))) + 1.0
    xs_d = np.linspace(-x_far, x_far, resolution)
    for y in ys_d:
        ok &= check("row-full-line", y, eval_superposition(s, xs_d, y))
    bad = next(((c, x) for c, x, cnt in records if cnt != 1), None)
    return CrossingCountVerdict(n=n, theta=theta, ok=ok, records=tuple(records), counterexample=bad)


def _row_zero_left(n: int, theta: float, y: float) -> float:
    """The unique x < t_{n,1} with cos(theta) H_n(x) + sin(theta) H_n(y) = 0, y > t_{n,n}."""
    s_y, l_y = _log_h(n, y)
    assert s_y > 0
    log_target = l_y + math.log(math.tan(theta))
    t_n1 = float(hm.hermite_zeros(n).zeros[0])

    def f_df(t):
        _, l_t = _log_h(n, t)
        s_d, l_d = _log_h(n - 1, t)
        return l_t - log_target, 2.0 * n * s_d * math.exp(l_d - l_t)

    lo = t_n1 - 1.0
    while f_df(lo)[0] < 0.0:
        lo = t_n1 - 2.0 * (t_n1 - lo)
    return _newton_bisect(f_df, lo, t_n1 - 1e-9)


def exterior_transition_count(n: int, theta: float, margin: float = 1.25, samples_per_edge: int = 4096) -> int:
    """Sign transitions of the eigenfunction along the enclosing square boundary.

    Each of the two exterior arcs crosses the (margined) boundary exactly
    once, so the count is 2 for regular theta in (0, pi/4).
    """
    sq = enclosing_square(n, theta, margin)
    s = Superposition(n, theta)
    t = np.linspace(0.0, 1.0, samples_per_edge, endpoint=False)
    xs = sq.xmin + t * sq.width
    ys = sq.ymin + t * sq.height
    vals = np.concatenate([
        eval_superposition(s, xs, np.full_like(xs, sq.ymin)),
        eval_superposition(s, np.full_like(ys, sq.xmax), ys),
        eval_superposition(s, xs[::-1], np.full_like(xs, sq.ymax)),
        eval_superposition(s, np.full_like(ys, sq.xmin), ys[::-1]),
    ])
    signs = np.sign(vals)
    keep = signs != 0
    signs = signs[keep]
    flips = int(np.sum(signs != np.roll(signs, 1)))
    return flips


def exterior_symmetry_residual(n: int, theta: float, samples: int = 12) -> float:
    """Max |value at the centrally reflected exterior-arc point|.

    The second exterior arc is the image of the first under (x, y) -> (-x, -y);
    solved points on arc one must evaluate to zero after reflection.
    """
    s = Superposition(n, theta)
    t_left = barrier_left(n)
    res = 0.0
    for x in np.linspace(1.1 * t_left - 0.5, 1.6 * t_left - 1.0, samples):
        y = column_zero_above(n, theta, float(x))
        res = max(res, abs(float(eval_superposition(s, -x, -y))))
    return res
