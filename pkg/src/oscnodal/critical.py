"""Critical zeros of the superposition family and the critical-angle table.

A critical zero can only sit at a lattice point (t_{n-1,i}, t_{n-1,j}) built
from the zeros of H_{n-1}, and only at the single angle theta(i,j) in (0, pi)
solving  cos(theta) H_n(t_{n-1,i}) + sin(theta) H_n(t_{n-1,j}) = 0.
The table of all (n-1)^2 such angles drives everything downstream: theta_c,
regular intervals, and saddle classification at critical angles.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import hermite as hm

THETA_MATCH_TOL = 1e-12   # "is this theta critical" (float CLI inputs)
VALUE_DEDUP_TOL = 1e-10   # distinct critical values (theta(i,i) repeats n-1 times)


@dataclass(frozen=True)
class CriticalZero:
    """A double crossing of the nodal set at a lattice point of H_{n-1} zeros."""

    i: int
    j: int
    x: float
    y: float
    hessian_signature: tuple[int, int]
    kind: str = "double-crossing"

    @property
    def location(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class CriticalAngleTable:
    n: int
    entries: tuple  # ((i, j, theta_ij), ...) with 1-based i, j
    theta_c: float
    critical_values: tuple  # sorted distinct values in (0, pi)
    regular_intervals: tuple  # open intervals covering (0, pi) minus the values
    _by_index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_index", {(i, j): th for i, j, th in self.entries})

    def theta(self, i: int, j: int) -> float:
        return self._by_index[(i, j)]

    def matching(self, theta: float, tol: float = THETA_MATCH_TOL):
        """All (i, j) whose critical angle equals theta within tol."""
        return [(i, j) for i, j, th in self.entries if abs(th - theta) <= tol]

    def is_critical(self, theta: float, tol: float = THETA_MATCH_TOL) -> bool:
        return any(abs(v - theta) <= tol for v in self.critical_values)

    def interval_containing(self, theta: float):
        for lo, hi in self.regular_intervals:
            if lo < theta < hi:
                return (lo, hi)
        return None

    def intervals_adjacent_to(self, value: float):
        """(below, above) regular intervals around a critical value."""
        below = above = None
        for lo, hi in self.regular_intervals:
            if abs(hi - value) <= VALUE_DEDUP_TOL:
                below = (lo, hi)
            if abs(lo - value) <= VALUE_DEDUP_TOL:
                above = (lo, hi)
        return below, above

    def to_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(f"# n={self.n} theta_c={self.theta_c:.17g}\n")
            fh.write("i,j,theta_ij\n")
            for i, j, th in self.entries:
                fh.write(f"{i},{j},{th:.17g}\n")

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "n": self.n,
            "theta_c": self.theta_c,
            "entries": [[i, j, th] for i, j, th in self.entries],
            "critical_values": list(self.critical_values),
            "regular_intervals": [[lo, hi] for lo, hi in self.regular_intervals],
        }

    def to_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh, indent=1)
            fh.write("\n")


def _angle_from_signlog(s_i, l_i, s_j, l_j) -> float:
    """The unique theta in (0, pi) with cos(theta) A + sin(theta) B = 0.

    A and B arrive as (sign, log|.|); only their ratio matters, so both are
    rescaled by the larger magnitude before atan2. For i = j this reduces to
    atan2(1, -1) = 3 pi / 4 exactly.
    """
    m = max(l_i, l_j)
    u = math.exp(l_i - m)
    v = math.exp(l_j - m)
    # (cos, sin) parallel to (-B, A), oriented by sign(A) so that sin > 0
    return math.atan2(u, -(s_i * s_j) * v)


def critical_angles(n: int) -> CriticalAngleTable:
    """Critical-angle table for odd n >= 3, with theta_c and regular intervals."""
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be odd and >= 3")
    lattice = hm.hermite_zeros(n - 1).zeros
    signs, logs = hm.hermite_signlog(n, lattice)
    assert np.all(signs != 0), "H_n and H_{n-1} share no zeros"
    entries = []
    for i in range(n - 1):
        for j in range(n - 1):
            th = _angle_from_signlog(int(signs[i]), float(logs[i]), int(signs[j]), float(logs[j]))
            entries.append((i + 1, j + 1, th))
    values = sorted(th for _, _, th in entries)
    distinct = [values[0]]
    for v in values[1:]:
        if v - distinct[-1] > VALUE_DEDUP_TOL:
            distinct.append(v)
    cuts = [0.0] + distinct + [math.pi]
    intervals = tuple((cuts[k], cuts[k + 1]) for k in range(len(cuts) - 1))
    return CriticalAngleTable(
        n=n,
        entries=tuple(entries),
        theta_c=min(values),
        critical_values=tuple(distinct),
        regular_intervals=intervals,
    )


def critical_zeros_at(n: int, theta: float, tol: float = THETA_MATCH_TOL):
    """All critical zeros of the superposition at this angle (usually none).

    Hessian signature: (sign(cos theta H_n''(x0)), sign(sin theta H_n''(y0)))
    with H_n'' = 4n(n-1) H_{n-2} applied at the lattice coordinates, which is
    exact at classification points. The two signs are always opposite (the
    eigenfunction is harmonic-oscillator-trace-free at a zero), so every
    critical zero is a saddle / double crossing.
    """
    table = critical_angles(n)
    pairs = table.matching(theta, tol)
    if not pairs:
        return []
    lattice = hm.hermite_zeros(n - 1).zeros
    s2, _ = hm.hermite_signlog(n - 2, lattice)
    cos_sign = 1 if math.cos(theta) > 0 else -1
    out = []
    for i, j in pairs:
        x0, y0 = float(lattice[i - 1]), float(lattice[j - 1])
        sig = (cos_sign * int(s2[i - 1]), int(s2[j - 1]))  # sin(theta) > 0 on (0, pi)
        assert sig[0] * sig[1] == -1, "critical zero must be a saddle"
        out.append(CriticalZero(i=i, j=j, x=x0, y=y0, hessian_signature=sig))
    return out


@dataclass(frozen=True)
class DesingularizationVerdict:
    n: int
    i: int
    epsilon: float
    ok: bool
    case_label: str                  # "i" for even i, "ii" for odd i
    opening_positive_eps: str        # which way crossings open for theta below 3pi/4
    opening_negative_eps: str
    min_margin: float                # smallest value of the checked expression
    counterexample: float | None


def desingularization_signs(n: int, i: int, epsilon: float, grid_points: int = 1000) -> DesingularizationVerdict:
    """Check (-1)^i (H_n(t) - (1+eps) H_n(t_{n-1,i})) >= 0 on (t_{n,i}, t_{n,i+1}).

    The same scalar inequality serves both signs of the perturbation: for
    +eps it keeps the nodal set off the horizontal line y = t_{n-1,i}
    (crossings open vertically, theta just below 3 pi/4), and mirrored in x
    for -eps it keeps the set off the vertical line (horizontal opening,
    theta just above). Everything is evaluated relative to |H_n(t_{n-1,i})|
    so no raw Hermite magnitudes appear.
    """
    if not (1 <= i <= n - 1):
        raise ValueError("need 1 <= i <= n-1")
    if not (0.0 <= epsilon <= 0.05):
        raise ValueError("epsilon must lie in [0, 0.05]")
    zn = hm.hermite_zeros(n).zeros
    a = float(hm.hermite_zeros(n - 1).zeros[i - 1])
    s_a, l_a = hm.eval_hermite(n, a).sign, hm.eval_hermite(n, a).log_abs
    t = np.linspace(zn[i - 1], zn[i], grid_points)
    s_t, l_t = hm.hermite_signlog(n, t)
    ratio = s_t * np.exp(l_t - l_a)          # H_n(t) / |H_n(a)|
    expr = (-1.0) ** i * (ratio - (1.0 + epsilon) * s_a)
    min_margin = float(np.min(expr))
    ok = min_margin >= -1e-12
    counter = None if ok else float(t[int(np.argmin(expr))])
    return DesingularizationVerdict(
        n=n,
        i=i,
        epsilon=epsilon,
        ok=ok,
        case_label="ii" if i % 2 == 1 else "i",
        opening_positive_eps="vertical",
        opening_negative_eps="horizontal",
        min_margin=min_margin,
        counterexample=counter,
    )


@dataclass(frozen=True)
class VjSignVerdict:
    n: int
    theta: float
    ok: bool
    violations: tuple  # ((i, j), ...) where sign differs from (-1)^{j+1}


def vj_sign_check(n: int, theta: float) -> VjSignVerdict:
    """Signs of v_j(t_{n-1,i}) = cos(theta) H_n(t_{n-1,j}) + sin(theta) H_n(t_{n-1,i}).

    Below theta_c every one of the (n-1)^2 values has the sign (-1)^{j+1},
    which pins where the nodal set can cross the interior vertical lines.
    Evaluated in the log representation. Above theta_c the verdict simply
    reports whichever signs fail.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be odd and >= 3")
    lattice = hm.hermite_zeros(n - 1).zeros
    signs, logs = hm.hermite_signlog(n, lattice)
    c, s = math.cos(theta), math.sin(theta)
    bad = []
    for j in range(1, n):
        for i in range(1, n):
            l_j, l_i = float(logs[j - 1]), float(logs[i - 1])
            m = max(l_j, l_i)
            val = c * int(signs[j - 1]) * math.exp(l_j - m) + s * int(signs[i - 1]) * math.exp(l_i - m)
            if (-1.0) ** (j + 1) * val <= 0.0:
                bad.append((i, j))
    return VjSignVerdict(n=n, theta=theta, ok=not bad, violations=tuple(bad))
