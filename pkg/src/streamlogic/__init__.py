"""LTL on partial streams, its geometric-logic translation, and a sequent checker."""
from .geometry import geom_sat, nu, sequent_sat, theory_model
from .ltl import Stratum, classify, evaluate
from .streams import Alphabet, FiniteElement, UPStream
from .syntax import parse_finite, parse_formula, parse_geom, parse_sequent, parse_stream, parse_theory
from .translation import f_translate, holds_via_geometry, simplified_translate, t_translate

__all__ = [
    "Alphabet",
    "FiniteElement",
    "Stratum",
    "UPStream",
    "classify",
    "evaluate",
    "f_translate",
    "geom_sat",
    "holds_via_geometry",
    "nu",
    "parse_finite",
    "parse_formula",
    "parse_geom",
    "parse_sequent",
    "parse_stream",
    "parse_theory",
    "sequent_sat",
    "simplified_translate",
    "t_translate",
    "theory_model",
]
