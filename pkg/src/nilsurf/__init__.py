"""Minimal translation surfaces in the Heisenberg group.

Library layout:
  nil3      group algebra, frame, connection, curvature tensor
  surface   jets, fundamental forms, mean curvature, Gaussian curvature, scans
  profiles  closed-form profile functions with exact derivatives
  families  classified families and missing-case parametrizations
  odes      minimality-ODE residuals and the RK4 oracle
  report    CSV / JSON / figure output
  mesh      OBJ export
  cli       command-line front end
"""

from .nil3 import (
    CoordVector,
    FrameVector,
    Point3,
    apply_isometry,
    connection_table,
    coord_components,
    covariant_derivative,
    curvature_tensor,
    frame_components,
    frame_cross,
    group_inverse,
    group_mul,
    metric_dot,
    sectional_curvature,
)
from .surface import (
    Domain,
    FundamentalData,
    Jet2,
    ParamSurface,
    ScanReport,
    fundamental_data,
    gaussian_curvature,
    grid_scan,
    jet2,
    mean_curvature,
    minimality_residual,
    wrap_isometry,
)
from .profiles import ProfileFn, profile_closed_form
from .families import (
    ALL_CASES,
    CaseId,
    FamilySpec,
    family_surface,
    missing_case_surface,
    parse_family_spec,
    random_spec,
    safe_domain,
)
from .odes import (
    OdeSolution,
    PCoeffs,
    TCoeffs,
    compare_profiles,
    integrate_profile,
    ode_residual,
    p_coefficients,
    t_coefficients,
)
from .mesh import export_obj

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
