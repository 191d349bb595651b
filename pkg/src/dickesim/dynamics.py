"""Time evolution and numeric steady states for the driven damped spin.

The model: a single collective spin j, resonantly driven with strength
omega through J+ + J-, damped collectively at rate gamma_a into a bath
with mean occupation nbar.  In matrix form the generator is

    drho/dt = -i (omega/2) [J+ + J-, rho]
              + gamma_a * nbar/2     * (2 J+ rho J- - J- J+ rho - rho J- J+)
              + gamma_a * (nbar+1)/2 * (2 J- rho J+ - J+ J- rho - rho J+ J-)

Superoperators use column stacking throughout: vec(A X B) = (B^T kron A) vec(X).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, IntegrationFailureError, ValidationError
from .linalg import as_complex_matrix, hermiticity_defect, null_vector, require_hermitian
from .settings import DEFAULT, NumericSettings
from .spin_ops import SpinQuantum, build_jminus, build_jz

# dense Liouvillians get expensive as d^4; beyond this, use the analytic route
DENSE_DIM_LIMIT = 33


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters of one simulation run.

    j may be given as SpinQuantum, int, or half-integer float; it is
    normalized on construction.  Frequencies are in the same units, so
    gamma = gamma_a / omega is the single dimensionless damping knob and
    omega_r = omega / (j * gamma_a) the scaled drive.
    """

    j: SpinQuantum
    omega: float
    gamma_a: float
    nbar: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "j", SpinQuantum.from_j(self.j))
        for name in ("omega", "gamma_a", "nbar"):
            v = float(getattr(self, name))
            if not np.isfinite(v) or v < 0:
                raise ValidationError(f"{name} must be finite and >= 0, got {v!r}")
            object.__setattr__(self, name, v)
        if self.omega == 0.0 and self.gamma_a == 0.0:
            raise ValidationError("omega and gamma_a cannot both be zero: no dynamics")

    @property
    def gamma(self) -> float:
        """Damping-to-drive ratio gamma_a / omega."""
        if self.omega <= 0:
            raise ValidationError("gamma undefined at omega = 0")
        return self.gamma_a / self.omega

    @property
    def omega_r(self) -> float:
        """Scaled drive omega / (j * gamma_a), the semiclassical control knob."""
        if self.gamma_a <= 0 or self.j.two_j == 0:
            raise ValidationError("omega_r undefined at gamma_a = 0 or j = 0")
        return self.omega / (self.j.j * self.gamma_a)


@dataclass(frozen=True)
class Trajectory:
    """Simulation output: times[k] paired with density matrix states[k]."""

    times: np.ndarray
    states: tuple

    def __post_init__(self):
        if len(self.times) != len(self.states):
            raise ValidationError("times and states lengths differ")

    def expectations(self, operator) -> np.ndarray:
        """tr(rho_k A) along the trajectory."""
        A = np.asarray(operator, dtype=complex)
        return np.array([np.einsum("ij,ji->", rho, A) for rho in self.states])


def validate_density_matrix(rho, settings: NumericSettings = DEFAULT, name="rho"):
    """Check the three state invariants, returning the validated array.

    Hermitian within hermiticity_tol, unit trace within trace_tol, and
    smallest eigenvalue above density_eig_floor.  Raises ValidationError
    naming the violated check.
    """
    rho = as_complex_matrix(rho, name)
    require_hermitian(rho, settings.hermiticity_tol, name)
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > settings.trace_tol:
        raise ValidationError(f"{name} trace deviates from 1: tr = {tr!r}")
    lo = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])
    if lo < settings.density_eig_floor:
        raise ValidationError(
            f"{name} not positive semidefinite: min eigenvalue {lo:.3e}"
        )
    return rho


def collective_ops(spin):
    """(J-, J+, Jz) for the symmetric sector."""
    Jm = build_jminus(spin)
    return Jm, Jm.conj().T, build_jz(spin)


def vec(rho) -> np.ndarray:
    """Column-stacking vectorization."""
    return np.asarray(rho, dtype=complex).flatten(order="F")


def unvec(x, dim) -> np.ndarray:
    return np.asarray(x, dtype=complex).reshape(dim, dim, order="F")


def build_liouvillian(params: ModelParams) -> np.ndarray:
    """Dense (d^2, d^2) generator acting on column-stacked states."""
    p = params
    Jm, Jp, _ = collective_ops(p.j)
    d = p.j.dim
    eye = np.eye(d)
    H = 0.5 * p.omega * (Jp + Jm)

    def pre(A):
        return np.kron(eye, A)

    def post(A):
        return np.kron(A.T, eye)

    def sandwich(A, B):
        # vec(A X B) = (B^T kron A) vec X
        return np.kron(B.T, A)

    JmJp = Jm @ Jp
    JpJm = Jp @ Jm
    L = -1j * (pre(H) - post(H))
    L = L + p.gamma_a * p.nbar / 2.0 * (2.0 * sandwich(Jp, Jm) - pre(JmJp) - post(JmJp))
    L = L + p.gamma_a * (p.nbar + 1.0) / 2.0 * (2.0 * sandwich(Jm, Jp) - pre(JpJm) - post(JpJm))
    return L


def _rhs(rho, p, ops):
    """Generator applied to a state in matrix form (no kron blowup)."""
    Jm, Jp, H, JmJp, JpJm = ops
    out = -1j * (H @ rho - rho @ H)
    if p.nbar > 0:
        out += p.gamma_a * p.nbar / 2.0 * (
            2.0 * Jp @ rho @ Jm - JmJp @ rho - rho @ JmJp
        )
    out += p.gamma_a * (p.nbar + 1.0) / 2.0 * (
        2.0 * Jm @ rho @ Jp - JpJm @ rho - rho @ JpJm
    )
    return out


def _rk4_between(rho, t0, t1, n_steps, p, ops):
    """Classical RK4 with n_steps fixed steps, re-hermitizing each step."""
    h = (t1 - t0) / n_steps
    for _ in range(n_steps):
        k1 = _rhs(rho, p, ops)
        k2 = _rhs(rho + 0.5 * h * k1, p, ops)
        k3 = _rhs(rho + 0.5 * h * k2, p, ops)
        k4 = _rhs(rho + h * k3, p, ops)
        rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        rho = 0.5 * (rho + rho.conj().T)
    return rho


def _grid_sweep(rho0, t_grid, n_sub, p, ops):
    states = [rho0.copy()]
    rho = rho0
    for k in range(len(t_grid) - 1):
        rho = _rk4_between(rho, t_grid[k], t_grid[k + 1], n_sub[k], p, ops)
        states.append(rho.copy())
    return states


def evolve(
    rho0, params: ModelParams, t_grid, settings: NumericSettings = DEFAULT, max_halvings=22
) -> Trajectory:
    """Integrate the master equation over t_grid.

    Fixed-step RK4 with step halving: the whole grid is swept, the step
    count is doubled, and the sweep repeats until consecutive
    trajectories agree within ``settings.integrator_tol`` in Frobenius
    norm at every grid point.  RK4 preserves the trace identically
    (the generator is traceless-preserving and linear), and each step is
    re-hermitized, so the returned states satisfy the density-matrix
    invariants up to integration error.

    Raises IntegrationFailureError (with .time_reached) when the halving
    budget runs out before consecutive sweeps agree.
    """
    p = params
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or len(t_grid) < 1:
        raise ValidationError("t_grid must be a 1-D array of at least one time")
    if t_grid[0] != 0.0:
        raise ValidationError(f"t_grid must start at 0, got {t_grid[0]!r}")
    if len(t_grid) > 1 and not np.all(np.diff(t_grid) > 0):
        raise ValidationError("t_grid must be strictly ascending")
    rho0 = validate_density_matrix(rho0, settings, "rho0")
    if rho0.shape[0] != p.j.dim:
        raise ValidationError(
            f"rho0 dimension {rho0.shape[0]} does not match j = {p.j.j} (dim {p.j.dim})"
        )
    if len(t_grid) == 1:
        return Trajectory(times=t_grid, states=(rho0.copy(),))

    Jm, Jp, _ = collective_ops(p.j)
    H = 0.5 * p.omega * (Jp + Jm)
    ops = (Jm, Jp, H, Jm @ Jp, Jp @ Jm)

    # stiffness scale: Hamiltonian spread ~ 2 j omega, dissipative rates ~ 2 j^2 gamma_a
    jj = p.j.j
    rate = 2.0 * jj * p.omega + 2.0 * max(jj * jj, 0.5) * p.gamma_a * (2.0 * p.nbar + 1.0)
    spans = np.diff(t_grid)
    # keep h * rate < 2 so the first sweep is already inside the RK4 stability region
    n_sub = np.maximum(1, np.ceil(spans * rate * 0.5).astype(int))

    states = _grid_sweep(rho0, t_grid, n_sub, p, ops)
    for _ in range(int(max_halvings)):
        n_sub = n_sub * 2
        finer = _grid_sweep(rho0, t_grid, n_sub, p, ops)
        err = max(
            float(np.linalg.norm(a - b)) for a, b in zip(states, finer)
        )
        states = finer
        if err <= settings.integrator_tol:
            break
    else:
        raise IntegrationFailureError(
            f"step halving stalled at error {err:.3e} > {settings.integrator_tol:.1e}",
            time_reached=float(t_grid[-1]),
        )

    for k, rho in enumerate(states):
        validate_density_matrix(rho, settings, name=f"state at t={t_grid[k]:g}")
    return Trajectory(times=t_grid, states=tuple(states))


def steady_state_numeric(params: ModelParams, settings: NumericSettings = DEFAULT) -> np.ndarray:
    """Steady state as the one-dimensional null space of the dense generator.

    Valid whenever the stationary state is unique, which for this model
    means omega > 0, or omega = 0 with nbar = 0 (pure decay funnels to
    the ground level).  The undriven thermal case has no drive to break
    the ladder degeneracy structure and is rejected up front.
    """
    p = params
    if p.omega == 0.0 and p.nbar > 0.0:
        raise ValidationError(
            "steady state not unique/supported at omega = 0 with nbar > 0"
        )
    if p.gamma_a == 0.0:
        raise ValidationError("no dissipation (gamma_a = 0): no relaxation to a steady state")
    d = p.j.dim
    if d > DENSE_DIM_LIMIT:
        raise CapacityError(
            f"dimension {d} exceeds dense limit {DENSE_DIM_LIMIT}; "
            "use analytic.steady_state_analytic (zero-temperature route)"
        )
    L = build_liouvillian(p)
    x = null_vector(L, settings)
    rho = unvec(x, d)
    tr = complex(np.trace(rho))
    if abs(tr) < 1e-12:
        # null vector orthogonal to identity cannot be a state
        raise ValidationError("null vector has (numerically) zero trace; not a state")
    rho = rho / tr
    rho = 0.5 * (rho + rho.conj().T)
    return validate_density_matrix(rho, settings, "steady state")
