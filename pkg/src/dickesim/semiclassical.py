"""Mean-field dynamics of the driven damped spin and its bifurcation.

Factorizing expectation values in the master equation and scaling time
by tau = j * gamma_a * t gives a closed flow on the Bloch vector
s = (sx, sy, sz) = <J>/j, with a single knob, the scaled drive
omega_r = omega / (j * gamma_a):

    dsx/dtau = sz * sx
    dsy/dtau = sz * sy - omega_r * sz
    dsz/dtau = omega_r * sy - sx^2 - sy^2

The flow conserves the spin length sx^2 + sy^2 + sz^2 exactly, which
also means every equilibrium carries a structural zero eigenvalue of
the Jacobian (the radial direction).  Stability is therefore judged on
the transverse spectrum with the zero mode filtered out; the full
three-eigenvalue list is always reported.

Below omega_r = 1 the attracting equilibrium sits at
(0, omega_r, -sqrt(1 - omega_r^2)); at omega_r = 1 the two on-sphere
branches collide at sz = 0 and for larger drives only neutrally stable
rotation centers remain.  bifurcation_scan locates that loss of
attraction by bisection.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BifurcationNotFoundError, ValidationError
from .settings import DEFAULT, NumericSettings

# any |eigenvalue| below this is treated as the structural zero mode
_ZERO_MODE_TOL = 1e-9
# attraction must beat this margin to count as stable (guards roundoff
# on the pure-rotation branch where real parts are 0 up to noise)
_STABILITY_MARGIN = 1e-12


@dataclass(frozen=True)
class FixedPointReport:
    """One equilibrium: location, full Jacobian spectrum, stability flag.

    ``stable`` means every transverse eigenvalue (zero mode filtered)
    has real part below a small negative margin, i.e. the point attracts
    on the sphere.
    """

    point: np.ndarray
    jacobian_eigenvalues: np.ndarray
    stable: bool


def _as_bloch(s):
    s = np.asarray(s, dtype=float)
    if s.shape != (3,):
        raise ValidationError(f"Bloch state must have shape (3,), got {s.shape}")
    if not np.all(np.isfinite(s)):
        raise ValidationError("Bloch state contains non-finite entries")
    return s


def _check_omega_r(omega_r):
    omega_r = float(omega_r)
    if not np.isfinite(omega_r) or omega_r < 0:
        raise ValidationError(f"omega_r must be finite and >= 0, got {omega_r!r}")
    return omega_r


def meanfield_rhs(s, omega_r) -> np.ndarray:
    """Time derivative of the Bloch vector in scaled time."""
    s = _as_bloch(s)
    omega_r = _check_omega_r(omega_r)
    sx, sy, sz = s
    return np.array([
        sz * sx,
        sz * sy - omega_r * sz,
        omega_r * sy - sx * sx - sy * sy,
    ])


def meanfield_jacobian(s, omega_r) -> np.ndarray:
    """Analytic 3x3 Jacobian of meanfield_rhs."""
    s = _as_bloch(s)
    omega_r = _check_omega_r(omega_r)
    sx, sy, sz = s
    return np.array([
        [sz, 0.0, sx],
        [0.0, sz, sy - omega_r],
        [-2.0 * sx, omega_r - 2.0 * sy, 0.0],
    ])


def finite_difference_jacobian(s, omega_r, step=1e-6) -> np.ndarray:
    """Central-difference Jacobian, the independent check on the analytic one."""
    s = _as_bloch(s)
    out = np.zeros((3, 3))
    for k in range(3):
        bump = np.zeros(3)
        bump[k] = step
        out[:, k] = (meanfield_rhs(s + bump, omega_r) - meanfield_rhs(s - bump, omega_r)) / (
            2.0 * step
        )
    return out


def jacobian_eigenvalues(point, omega_r, settings: NumericSettings = DEFAULT) -> np.ndarray:
    """Jacobian spectrum at an equilibrium (all three eigenvalues)."""
    point = _as_bloch(point)
    omega_r = _check_omega_r(omega_r)
    resid = float(np.linalg.norm(meanfield_rhs(point, omega_r)))
    if resid > settings.fixed_point_resid:
        raise ValidationError(
            f"not a fixed point: |rhs| = {resid:.3e} > {settings.fixed_point_resid:.1e}"
        )
    return np.linalg.eigvals(meanfield_jacobian(point, omega_r))


def _transverse(eigs):
    """Spectrum with the structural zero mode removed."""
    scale = max(1.0, float(np.abs(eigs).max()))
    return eigs[np.abs(eigs) > _ZERO_MODE_TOL * scale]


def _is_attracting(eigs) -> bool:
    trans = _transverse(eigs)
    return len(trans) > 0 and bool(np.all(trans.real < -_STABILITY_MARGIN))


def _newton_polish(s, omega_r, sweeps=3):
    # the Jacobian is singular along the radius, so use least squares
    for _ in range(sweeps):
        f = meanfield_rhs(s, omega_r)
        if np.linalg.norm(f) < 1e-14:
            break
        step, *_ = np.linalg.lstsq(meanfield_jacobian(s, omega_r), -f, rcond=None)
        s = s + step
    return s


def find_fixed_points(omega_r, settings: NumericSettings = DEFAULT):
    """Equilibria of the mean-field flow on the unit sphere.

    Below the critical drive: two points at sx = 0, sy = omega_r,
    sz = -/+ sqrt(1 - omega_r^2), the lower one attracting.  At and
    above it: the sz = 0 circle intersection sy = 1/omega_r,
    sx = -/+ sqrt(1 - 1/omega_r^2), neutrally stable centers.  Reports
    are ordered with the attracting point (if any) first.
    """
    omega_r = _check_omega_r(omega_r)
    points = []
    if omega_r < 1.0:
        rad = np.sqrt(1.0 - omega_r * omega_r)
        points = [np.array([0.0, omega_r, -rad]), np.array([0.0, omega_r, rad])]
    else:
        sy = 1.0 / omega_r
        sx = np.sqrt(max(0.0, 1.0 - sy * sy))
        points = [np.array([-sx, sy, 0.0]), np.array([sx, sy, 0.0])]
        if sx == 0.0:  # branches merged exactly at the critical drive
            points = points[:1]

    reports = []
    for p in points:
        p = _newton_polish(p, omega_r)
        resid = float(np.linalg.norm(meanfield_rhs(p, omega_r)))
        if resid > 1e-10:
            raise ValidationError(f"equilibrium polish failed: residual {resid:.3e}")
        eigs = np.linalg.eigvals(meanfield_jacobian(p, omega_r))
        reports.append(FixedPointReport(point=p, jacobian_eigenvalues=eigs, stable=_is_attracting(eigs)))
    reports.sort(key=lambda r: not r.stable)
    return reports


def _leading_rate(omega_r) -> float:
    """Real part of the least-damped transverse mode of the best equilibrium.

    Negative while an attracting equilibrium exists; 0 once only
    rotation centers remain.  This is the quantity whose sign change the
    bifurcation scan brackets.
    """
    best = None
    for report in find_fixed_points(omega_r):
        trans = _transverse(report.jacobian_eigenvalues)
        rate = float(trans.real.max()) if len(trans) else 0.0
        if best is None or rate < best:
            best = rate
    return best


def stable_branch_summary(omega_r):
    """(sz of the attracting branch, its leading transverse rate).

    Above the bifurcation there is no attracting branch; the reported
    point is the neutrally stable center and the rate is ~0.
    """
    reports = find_fixed_points(omega_r)
    best = min(
        reports,
        key=lambda r: max(
            (t.real for t in _transverse(r.jacobian_eigenvalues)), default=0.0
        ),
    )
    trans = _transverse(best.jacobian_eigenvalues)
    rate = float(trans.real.max()) if len(trans) else 0.0
    return float(best.point[2]), rate


def bifurcation_scan(omega_r_grid, settings: NumericSettings = DEFAULT) -> float:
    """Critical scaled drive where the attracting equilibrium disappears.

    Scans the grid for the first pair of adjacent points that bracket
    the loss of attraction, then bisects the bracket down to
    ``settings.bifurcation_tol``.  Raises BifurcationNotFoundError when
    the whole grid sits on one side.
    """
    grid = np.asarray(omega_r_grid, dtype=float)
    if grid.ndim != 1 or len(grid) < 2:
        raise ValidationError("omega_r grid must contain at least two values")
    if not np.all(np.isfinite(grid)) or np.any(grid < 0):
        raise ValidationError("omega_r grid must be finite and >= 0")
    if not np.all(np.diff(grid) > 0):
        raise ValidationError("omega_r grid must be strictly ascending")

    attracting = [_leading_rate(w) < -_STABILITY_MARGIN for w in grid]
    bracket = None
    for k in range(len(grid) - 1):
        if attracting[k] and not attracting[k + 1]:
            bracket = (grid[k], grid[k + 1])
            break
    if bracket is None:
        side = "below" if attracting[0] else "above"
        raise BifurcationNotFoundError(
            f"no loss of attraction inside grid [{grid[0]:g}, {grid[-1]:g}] "
            f"(entire grid {side} the transition)"
        )
    lo, hi = bracket
    while hi - lo > settings.bifurcation_tol:
        mid = 0.5 * (lo + hi)
        if _leading_rate(mid) < -_STABILITY_MARGIN:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def integrate_meanfield(s0, omega_r, tau_grid, max_step=1.0 / 1024.0) -> np.ndarray:
    """Fixed-step RK4 trajectory of the Bloch vector; rows match tau_grid.

    The step is small enough that the conserved spin length drifts by
    less than ~1e-9 over tau spans of order 100.
    """
    s = _as_bloch(s0)
    omega_r = _check_omega_r(omega_r)
    grid = np.asarray(tau_grid, dtype=float)
    if grid.ndim != 1 or len(grid) < 1:
        raise ValidationError("tau_grid must be a 1-D array of at least one time")
    if len(grid) > 1 and not np.all(np.diff(grid) > 0):
        raise ValidationError("tau_grid must be strictly ascending")
    if not max_step > 0:
        raise ValidationError("max_step must be positive")

    out = np.empty((len(grid), 3))
    out[0] = s
    for k in range(len(grid) - 1):
        span = grid[k + 1] - grid[k]
        steps = max(1, int(np.ceil(span / max_step)))
        h = span / steps
        for _ in range(steps):
            k1 = meanfield_rhs(s, omega_r)
            k2 = meanfield_rhs(s + 0.5 * h * k1, omega_r)
            k3 = meanfield_rhs(s + 0.5 * h * k2, omega_r)
            k4 = meanfield_rhs(s + h * k3, omega_r)
            s = s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[k + 1] = s
    return out
