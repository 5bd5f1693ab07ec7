"""Lie group entropy toolkit.

Exact structure theory for finite-dimensional real Lie algebras, dynamic
subalgebra decompositions of endomorphisms, certified topological entropy
of group automorphisms by reduction to toral components, and a Bowen
spanning-set estimator for numeric cross-validation.
"""

from .algebra import (
    LieAlgebra,
    StructureReport,
    ValidationReport,
    check_jacobi,
    derived_series,
    is_nilpotent,
    is_solvable,
    killing_form,
    levi_subalgebra,
    lower_central_series,
    radical,
    structure_report,
)
from .bowen import (
    EstimateResult,
    EstimatorParams,
    ImproperMapError,
    MetricSystem,
    box_system,
    compactify,
    dynamic_distance,
    estimate_entropy,
    spanning_count,
    torus_system,
    write_csv,
)
from .groups import (
    GroupSpec,
    TorusBlock,
    lattice_automorphism,
    radical_unstable_toral_part,
    toral_component,
    unstable_toral_part,
    validate_group_spec,
)
from .pipeline import (
    EntropyCertificate,
    RuleApplication,
    entropy_certificate,
    explain_certificate,
    toral_entropy,
)
from .specfile import SpecError, SpecFile, canonical_json, load_spec, parse_spec, save_spec, spec_to_dict
from .spectral import (
    EigenClass,
    Endomorphism,
    SpectralDecomposition,
    check_grading,
    check_growth_bounds,
    check_homomorphism,
    dynamic_subalgebras,
    find_invariant_levi,
    generalized_eigenspaces,
)
from .subspace import Subspace, span

__version__ = "0.1.0"

__all__ = [
    "EigenClass",
    "Endomorphism",
    "EntropyCertificate",
    "EstimateResult",
    "EstimatorParams",
    "GroupSpec",
    "ImproperMapError",
    "LieAlgebra",
    "MetricSystem",
    "RuleApplication",
    "SpecError",
    "SpecFile",
    "SpectralDecomposition",
    "StructureReport",
    "Subspace",
    "TorusBlock",
    "ValidationReport",
    "box_system",
    "canonical_json",
    "check_grading",
    "check_growth_bounds",
    "check_homomorphism",
    "check_jacobi",
    "compactify",
    "derived_series",
    "dynamic_distance",
    "dynamic_subalgebras",
    "entropy_certificate",
    "estimate_entropy",
    "explain_certificate",
    "find_invariant_levi",
    "generalized_eigenspaces",
    "is_nilpotent",
    "is_solvable",
    "killing_form",
    "lattice_automorphism",
    "levi_subalgebra",
    "load_spec",
    "lower_central_series",
    "parse_spec",
    "radical",
    "radical_unstable_toral_part",
    "save_spec",
    "span",
    "spanning_count",
    "spec_to_dict",
    "structure_report",
    "toral_component",
    "toral_entropy",
    "torus_system",
    "unstable_toral_part",
    "validate_group_spec",
    "write_csv",
]
