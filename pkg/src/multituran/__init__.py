"""Exact small-scale tools for multicolored Turán problems on multigraphs."""
from __future__ import annotations

from .census import CensusTable, census
from .constructions import complete_family, hybrid_family, mixed_family, turan_family
from .core import (
    ColoredMultigraph,
    MultiplicityGraph,
    Pattern,
    complete_pattern,
    cycle_pattern,
    degree_into,
    heavy_neighbor,
    symmetric_difference,
    turan_graph,
    turan_numbers,
)
from .criticality import (
    CriticalityReport,
    alpha,
    chromatic_number,
    color_reduced,
    critical_edges,
    k_star,
    reduce_minmax,
)
from .exceptions import CapabilityError, InputError, InvariantError, MultiTuranError
from .friendliness import embed_4cc, fr_embedding_order, is_H_friendly
from .nesting import from_multiplicity, nest, to_multiplicity
from .rainbow import EmbeddingCertificate, find_rainbow, find_rainbow_nested, verify_certificate
from .search import SearchReport, solve_exact, stability_probe, verify_goodness_formula

__version__ = "0.1.0"

__all__ = [
    "CapabilityError",
    "CensusTable",
    "ColoredMultigraph",
    "CriticalityReport",
    "EmbeddingCertificate",
    "InputError",
    "InvariantError",
    "MultiTuranError",
    "MultiplicityGraph",
    "Pattern",
    "SearchReport",
    "alpha",
    "census",
    "chromatic_number",
    "color_reduced",
    "complete_family",
    "complete_pattern",
    "critical_edges",
    "cycle_pattern",
    "degree_into",
    "embed_4cc",
    "find_rainbow",
    "find_rainbow_nested",
    "fr_embedding_order",
    "from_multiplicity",
    "heavy_neighbor",
    "hybrid_family",
    "is_H_friendly",
    "k_star",
    "mixed_family",
    "nest",
    "reduce_minmax",
    "solve_exact",
    "stability_probe",
    "symmetric_difference",
    "to_multiplicity",
    "turan_family",
    "turan_graph",
    "turan_numbers",
    "verify_certificate",
    "verify_goodness_formula",
]
