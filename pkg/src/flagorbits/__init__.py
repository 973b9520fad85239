"""Orbits of real forms of classical Lie algebras on flag manifolds."""

from .explorer import CensusReport, FlowConfig, empirical_orbit_census, flow_point, invariant_stability_test
from .flag_models import ProjectivePoint, parse_point
from .geometry import orbit_dimension
from .invariants import Classification, OrbitLabel, base_points, classify_point, orbit_labels
from .lie_core import DomainError, RealFormSpec, SeriesTag, build_complex_algebra, real_form_basis
from .parabolic import check_conditions, max_parabolic_classes
from .theorems import ClassificationResult, ModelSpace, classify_manifolds, membership
from .triality import so53_audit, theta, verify_theta_automorphism

__version__ = "0.1.0"

__all__ = [
    "CensusReport", "Classification", "ClassificationResult", "DomainError", "FlowConfig",
    "ModelSpace", "OrbitLabel", "ProjectivePoint", "RealFormSpec", "SeriesTag", "base_points",
    "build_complex_algebra", "check_conditions", "classify_manifolds", "classify_point",
    "empirical_orbit_census", "flow_point", "invariant_stability_test", "max_parabolic_classes",
    "membership", "orbit_dimension", "orbit_labels", "parse_point", "real_form_basis",
    "so53_audit", "theta", "verify_theta_automorphism",
]
