"""Finite fields, finite rings and modules, linear codes over module
alphabets, and computational checks of the extension property."""
from .characters import (AdditiveCharacter, average_project, averaged_orthogonality, character_group,
                         frobenius_check, is_generating)
from .codes import (LinearCode, MonomialTransform, WeightEnumerator, code_from_generator, find_extension,
                    hamming_vs_swc_equivalence_check, macwilliams_identity_check, standard_parity_check,
                    weight, weight_enumerator)
from .errors import MacextError
from .extension import (build_w_matrix, kernel_to_codes, theorem_main_pipeline, w_injectivity,
                        wood_counterexample)
from .gf import GF, field_make, parse_field
from .linalg import FqMatrix, cauchy_identity_check, cre, enumerate_cre, enumerate_gl, enumerate_rre, gaussian, rre
from .modules import (LeftModule, ModuleMap, annihilator_classes, aut_group, cyclic_socle, hom_set,
                      is_pseudo_injective, module_make, orbit_space, socle, socle_condition)
from .rings import FiniteRing, ring_build
from .bogart import recover_monomial, t_matrix

__version__ = "0.1.0"

__all__ = [
    "AdditiveCharacter", "FiniteRing", "FqMatrix", "GF", "LeftModule", "LinearCode", "MacextError",
    "ModuleMap", "MonomialTransform", "WeightEnumerator", "annihilator_classes", "aut_group",
    "average_project", "averaged_orthogonality", "build_w_matrix", "cauchy_identity_check",
    "character_group", "code_from_generator", "cre", "cyclic_socle", "enumerate_cre", "enumerate_gl",
    "enumerate_rre", "field_make", "find_extension", "frobenius_check", "gaussian",
    "hamming_vs_swc_equivalence_check", "hom_set", "is_generating", "is_pseudo_injective",
    "kernel_to_codes", "macwilliams_identity_check", "module_make", "orbit_space", "parse_field",
    "recover_monomial", "ring_build", "rre", "socle", "socle_condition", "standard_parity_check",
    "t_matrix", "theorem_main_pipeline", "w_injectivity", "weight", "weight_enumerator",
    "wood_counterexample",
]
