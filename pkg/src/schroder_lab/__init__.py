"""Numerical laboratory for the single-particle potentials underlying the
logistic map x -> s x (1 - x).

Library layout:

    algebra      exact/float scalars, deformed integers, polynomials in s
    series       coefficient engines (U, Psi, Phi, s=1 limit), radius estimate
    potentials   U evaluation, switchback family V_n^(m), closed forms, duality
    schroder     Psi branches, Phi by functional extension, trajectories
    dynamics     exact orbits, transit-time quadrature, the potential path
    asymptotics  s=1 growth diagnostics and the principal-value integral
    verify       every reproduced number as a named check
    cli          schroder-lab command-line front end
"""

from .algebra import (
    SPolynomial,
    Scalar,
    as_float,
    deformed_factorial,
    deformed_integer,
    exactify,
    poly_eval,
)
from .asymptotics import GrowthDiagnostic, growth_analysis, pv_integral
from .dynamics import (
    CheminSchedule,
    Orbit,
    build_chemin,
    fixed_points,
    map_iterate,
    transit_time,
    two_cycle,
    verify_chemin,
)
from .errors import (
    CancellationFailure,
    ComplexValued,
    DegenerateParameter,
    DomainError,
    NonConvergence,
    OutOfRadius,
    ScheduleInconsistency,
    SchroderLabError,
)
from .potentials import (
    PotentialNode,
    closed_form_U,
    convergence_radius,
    dual_transform_U,
    eval_U,
    eval_U0,
    eval_U1,
    family_node,
    V_from_U,
)
from .report import CheckRow, VerificationReport
from .schroder import (
    PsiBranch,
    Trajectory,
    conjugate_psi,
    eval_phi,
    eval_phi_derivative,
    eval_phi_descend,
    psi0,
    psi_branches,
    trajectory,
    velocity,
)
from .series import (
    PowerSeries,
    RadiusEstimate,
    p_polynomials,
    phi_coefficients,
    psi_coefficients,
    psi_star_coefficients,
    radius_estimate,
    s1_coefficients,
    u_coefficients,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
