"""Exact Holant evaluation and the complexity dichotomy for Hol(a, b) = #[a,1,b] | [1,0,0,1]."""

from __future__ import annotations

__version__ = "0.1.0"

from .cyclo import Cyc12, cyc, cyc_parse
from .dichotomy import classify, hardness_witness, real_disjunction_scan
from .grid import EdgeLabeledGraph, SignatureGrid, SymSignature, load_instance, parse_instance
from .holant import auto_eval, holant_eval_graph, holant_eval_grid, symmetrize
from .poly import MPoly, PolyMatrix, poly

__all__ = [
    "Cyc12",
    "cyc",
    "cyc_parse",
    "MPoly",
    "PolyMatrix",
    "poly",
    "EdgeLabeledGraph",
    "SignatureGrid",
    "SymSignature",
    "parse_instance",
    "load_instance",
    "holant_eval_graph",
    "holant_eval_grid",
    "symmetrize",
    "auto_eval",
    "classify",
    "hardness_witness",
    "real_disjunction_scan",
]
