"""Derivational morphology over a sense-level dictionary: affix analysis,
relation-template scoring of candidate derivations, and sense links."""

from .analyzer import Analysis, analyze, bracket, generate_paradigm, load_paradigms, synthesize
from .lexicon import Lexicon, Link, Sense, SenseKey, apply_link, load_lexicon, lookup
from .linker import (
    LinkWeights,
    bases_of,
    build_links,
    derivational_family,
    derivatives_of,
    link_senses,
    update_graph,
)
from .morels import ScoreConfig, ScoreTrace, score_analysis
from .morphemes import AllomorphRule, Morpheme, MorphemeTable, compile_rule, load_morphemes
from .records import Record, parse_record, parse_records, serialize_record

__all__ = [
    "Analysis", "analyze", "bracket", "generate_paradigm", "load_paradigms", "synthesize",
    "Lexicon", "Link", "Sense", "SenseKey", "apply_link", "load_lexicon", "lookup",
    "LinkWeights", "bases_of", "build_links", "derivational_family", "derivatives_of",
    "link_senses", "update_graph",
    "ScoreConfig", "ScoreTrace", "score_analysis",
    "AllomorphRule", "Morpheme", "MorphemeTable", "compile_rule", "load_morphemes",
    "Record", "parse_record", "parse_records", "serialize_record",
]
