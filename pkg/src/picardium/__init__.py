"""Exact computations with algebras in pointed fusion categories and their Picard groups."""

__version__ = "0.1.0"

from .scalars import CycScalar, RootOfUnity  # noqa: E402
from .cohomology import (  # noqa: E402
    Cochain,
    FiniteGroup,
    SubgroupEmbedding,
    coboundary,
    standard_cyclic_cocycle,
    trivialisation_classes,
    trivialise,
)
from .pointed_category import CategoryContext, picard_data  # noqa: E402
from .algebra_objects import (  # noqa: E402
    AlgebraObject,
    alpha_family,
    build_endomorphism_algebra,
    build_Q,
    check_algebra,
    check_frobenius_special_symmetric,
    extract_omega,
)
from .bimodule_morita import (  # noqa: E402
    BimoduleCategory,
    fixed_algebra,
    verify_main_theorem,
    verify_prop_recover_H,
    verify_thm_bijection,
    verify_thm_fixed_is_Q,
)
from .report import Report  # noqa: E402

__all__ = [
    "CycScalar",
    "RootOfUnity",
    "Cochain",
    "FiniteGroup",
    "SubgroupEmbedding",
    "coboundary",
    "standard_cyclic_cocycle",
    "trivialise",
    "trivialisation_classes",
    "CategoryContext",
    "picard_data",
    "AlgebraObject",
    "build_Q",
    "build_endomorphism_algebra",
    "check_algebra",
    "check_frobenius_special_symmetric",
    "alpha_family",
    "extract_omega",
    "BimoduleCategory",
    "fixed_algebra",
    "verify_prop_recover_H",
    "verify_thm_bijection",
    "verify_thm_fixed_is_Q",
    "verify_main_theorem",
    "Report",
]
