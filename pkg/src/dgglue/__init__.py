"""Exact computations with finite DG categories glued along bimodules.

Submodules:

* :mod:`dgglue.exactlin` exact scalars, cochain complexes, integer lattices
* :mod:`dgglue.dgcore` finite DG categories and their validator
* :mod:`dgglue.twcx` twisted complexes, Hom complexes, evaluation
* :mod:`dgglue.glue` bimodules, the glued category, tensor and widetilde
* :mod:`dgglue.sod` vanishing condition, full faithfulness, resolutions, partners
* :mod:`dgglue.euler` Euler forms and congruence of integral forms
* :mod:`dgglue.scenarios` the projective line with two point sets
"""

from ._backend import BACKEND
from .dgcore import FinDGCategory, path_category, unit_category, validate_category
from .euler import GramForm, euler_matrix, exceptionality_check, form_equivalence, orthogonal_gram
from .exactlin import GF, QQ, Cochain, cohomology_dims, field_context, saturated_kernel
from .glue import (
    Bimodule,
    BimoduleMorphism,
    GluedCategory,
    bimodule_cone,
    embed,
    restrict,
    tensor,
    upper_triangular,
    validate_bimodule,
    validate_bimodule_morphism,
    widetilde,
)
from .scenarios import ScenarioConfig, build_kronecker, run_scenario, skyscraper, torsion_object
from .sod import (
    check_condition,
    check_perfectness,
    ks_partner,
    semi_free_resolution,
    verify_fully_faithful,
)
from .twcx import (
    TwistedComplex,
    TwMorphism,
    compose_morphisms,
    cone,
    direct_sum,
    evaluate_at,
    hom_complex,
    k0_class,
    representable,
    shift,
    validate_twcx,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Bimodule", "BimoduleMorphism", "Cochain", "FinDGCategory", "GF", "GluedCategory",
    "GramForm", "QQ", "ScenarioConfig", "TwMorphism", "TwistedComplex", "bimodule_cone",
    "build_kronecker", "check_condition", "check_perfectness", "cohomology_dims", "compose_morphisms",
    "cone", "direct_sum", "embed", "euler_matrix", "evaluate_at", "exceptionality_check",
    "field_context", "form_equivalence", "hom_complex", "k0_class", "ks_partner", "orthogonal_gram",
    "path_category", "representable", "restrict", "run_scenario", "saturated_kernel",
    "semi_free_resolution", "shift", "skyscraper", "tensor", "torsion_object", "unit_category",
    "upper_triangular", "validate_bimodule", "validate_bimodule_morphism", "validate_category",
    "validate_twcx", "verify_fully_faithful", "widetilde",
]
