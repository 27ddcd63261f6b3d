"""Explicit maps into K_2 and odd cycles, walk coordinates, and closed forms."""
from __future__ import annotations

from ..svalue import signature_of
from .families import (
    ConstructionResult,
    Finding,
    cross_check_corw,
    halves_parity_maps,
    split_alternate_maps,
    split_class_maps,
    mod_cycle_map,
    solalpha,
    solbeta,
    solbeta_maximality,
    splitend,
    splitmiddle,
)
from .fixtures import EXAMPLE_TABLES
from .formulas import (
    CLOSED_FORMS,
    closed_form,
    corw_from_gamma,
    corw_predict,
    gamma,
    gamma_brute,
    gamma_closed,
    relaxed_s,
    xi,
)
from .walk import (
    TauCoords,
    build_fS,
    grid_from_map,
    image_shift,
    normalize_S,
    preimage_table,
    render_table,
    usefulcong_predicate,
)

__all__ = [
    "signature_of",
    "ConstructionResult",
    "Finding",
    "cross_check_corw",
    "halves_parity_maps",
    "split_alternate_maps",
    "split_class_maps",
    "mod_cycle_map",
    "solalpha",
    "solbeta",
    "solbeta_maximality",
    "splitend",
    "splitmiddle",
    "EXAMPLE_TABLES",
    "CLOSED_FORMS",
    "closed_form",
    "corw_from_gamma",
    "corw_predict",
    "gamma",
    "gamma_brute",
    "gamma_closed",
    "relaxed_s",
    "xi",
    "TauCoords",
    "build_fS",
    "grid_from_map",
    "image_shift",
    "normalize_S",
    "preimage_table",
    "render_table",
    "usefulcong_predicate",
]
