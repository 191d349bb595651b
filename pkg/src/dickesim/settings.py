"""Shared numeric tolerances for the solvers.

Every operation that needs a threshold reads it from a NumericSettings
record, so one object tightens or loosens the whole pipeline.  The
defaults are chosen so that double precision leaves at least two orders
of magnitude of headroom on each check.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class NumericSettings:
    hermiticity_tol: float = 1e-10    # max entrywise |A - A^dag| accepted on input
    trace_tol: float = 1e-10          # |tr(rho) - 1| accepted for density matrices
    density_eig_floor: float = -1e-9  # most negative state eigenvalue accepted
    psd_clamp: float = -1e-10         # eigenvalues in [psd_clamp, 0) clamp to 0
    solve_rtol: float = 1e-9          # relative residual bound for linear solves
    null_rtol: float = 1e-9           # ||A x|| <= null_rtol * ||A||_F for null vectors
    null_gap_rtol: float = 1e-8       # second singular value below this * ||A||_F means degenerate
    integrator_tol: float = 1e-10     # step-halving agreement target for evolve
    fixed_point_resid: float = 1e-8   # residual accepted when classifying equilibria
    bifurcation_tol: float = 1e-6     # bisection bracket width for the critical drive

    def with_working_tolerance(self, tol: float) -> "NumericSettings":
        """Settings with the solver accuracy targets replaced by ``tol``.

        Touches only the knobs a caller would mean by "work to this
        accuracy": linear-solve and null-space residuals plus the
        integrator target.  Validation thresholds stay put.
        """
        tol = float(tol)
        if not tol > 0:
            raise ValueError("tolerance must be positive")
        return replace(self, solve_rtol=tol, null_rtol=tol, integrator_tol=tol)


DEFAULT = NumericSettings()
