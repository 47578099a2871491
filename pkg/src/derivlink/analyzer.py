"""Affix-stripping morphological analysis, its inverse, and inflectional
paradigm generation."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .lexicon import Lexicon
from .morphemes import (
    SUFFIX,
    AllomorphRule,
    Morpheme,
    MorphemeTable,
    ReplacementMismatch,
    compile_rule,
    morphemes_for_affix,
)
from .records import parse_records, read_source

__all__ = [
    "Analysis",
    "Paradigm",
    "ReplacementMismatch",
    "analyze",
    "synthesize",
    "generate_paradigm",
    "load_paradigms",
    "bracket",
]

DEFAULT_MAX_DEPTH = 3
DEFAULT_MIN_STEM = 2


@dataclass(frozen=True)
class Analysis:
    surface: str
    base_surface: str
    base_pos: str
    chain: tuple  # ((Morpheme, AllomorphRule), ...) outermost first

    @property
    def depth(self) -> int:
        return len(self.chain)

    @property
    def outer(self) -> Morpheme:
        return self.chain[0][0]

    @property
    def names(self) -> tuple:
        return tuple(m.name for m, _ in self.chain)

    def __str__(self) -> str:
        return bracket(self)


def bracket(a: Analysis) -> str:
    """Bracket notation, e.g. ``[[geography_Noun]+er]``."""
    text = f"[{a.base_surface}_{a.base_pos}]"
    for m, rule in reversed(a.chain):
        text = f"[{text}+{m.affix}]" if rule.side == SUFFIX else f"[{m.affix}+{text}]"
    return text


def analyze(word: str, table: MorphemeTable, lex: Lexicon,
            max_depth: int = DEFAULT_MAX_DEPTH, min_stem: int = DEFAULT_MIN_STEM) -> list[Analysis]:
    """All analyses of ``word`` whose base is a headword of the required category.

    The outermost morpheme must allow word-final position (``None`` in its
    NextMorphs); each inner morpheme must list the next outer one among its
    NextMorphs and produce that morpheme's input category.
    """
    if not word:
        raise ValueError("word must be non-empty")
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    word = word.lower()
    found: dict[tuple, Analysis] = {}

    def walk(form: str, outer: Optional[Morpheme], chain: tuple) -> None:
        for m, rule in morphemes_for_affix(table, form, min_stem):
            if outer is None:
                if not m.word_final:
                    continue
            elif outer.name not in m.next_morphs or m.cat != outer.pcat:
                continue
            base = rule.strip(form)
            step = chain + ((m, rule),)
            if lex.has(base, m.pcat):
                key = (base, m.pcat, tuple((x.name, r) for x, r in step))
                found.setdefault(key, Analysis(word, base, m.pcat, step))
            if len(step) < max_depth:
                walk(base, m, step)

    walk(word, None, ())
    return sorted(found.values(),
                  key=lambda a: (a.depth, a.base_surface, a.names, tuple(r for _, r in a.chain)))


def synthesize(base: str, chain: Sequence[tuple[Morpheme, AllomorphRule]]) -> str:
    """Rebuild the surface form by applying ``chain`` innermost first."""
    if not base:
        raise ValueError("base must be non-empty")
    form = base
    for step in reversed(chain):
        rule = step[1] if isinstance(step, tuple) else step
        form = rule.synthesize(form)
    return form


# -- paradigms -------------------------------------------------------------


@dataclass(frozen=True)
class Slot:
    name: str
    rule: Optional[AllomorphRule] = None
    form: Optional[str] = None


@dataclass(frozen=True)
class Paradigm:
    name: str
    slots: tuple

    def __post_init__(self):
        names = [s.name for s in self.slots]
        if len(names) != len(set(names)):
            raise ValueError(f"paradigm {self.name}: duplicate slot names")


def load_paradigms(source) -> dict[str, Paradigm]:
    """Paradigm records ``{Name .. [Like PARENT] Slots {Slot .. Rule .. Form ..} ..}``.

    A ``Like`` paradigm starts from its parent's slots; slots it declares
    replace the parent's slot of the same name.
    """
    raw = {str(r.get("Name")): r for r in parse_records(read_source(source))}
    built: dict[str, Paradigm] = {}

    def build(name: str, seen: tuple = ()) -> Paradigm:
        if name in built:
            return built[name]
        if name in seen:
            raise ValueError(f"paradigm inheritance cycle through {name}")
        if name not in raw:
            raise KeyError(f"unknown paradigm {name}")
        rec = raw[name]
        slots: dict[str, Slot] = {}
        if "Like" in rec:
            slots.update((s.name, s) for s in build(str(rec.get("Like")), seen + (name,)).slots)
        for srec in rec.records("Slots"):
            sname = str(srec.get("Slot"))
            rule = compile_rule(str(srec.get("Rule")), SUFFIX) if "Rule" in srec else None
            form = str(srec.get("Form")) if "Form" in srec else None
            if rule is None and form is None:
                raise ValueError(f"paradigm {name}: slot {sname} has neither Rule nor Form")
            slots[sname] = Slot(sname, rule, form)
        built[name] = Paradigm(name, tuple(slots.values()))
        return built[name]

    for n in raw:
        build(n)
    return built


def generate_paradigm(lemma: str, paradigm: Paradigm,
                      explicit: Optional[Mapping[str, Iterable[str]]] = None) -> list[tuple[str, tuple]]:
    """Inflected forms of ``lemma`` as ``(slot, forms)`` pairs in slot order.

    A slot declaring both a rule and an explicit form yields both, regular
    first. ``explicit`` forms (irregulars listed on an entry) replace a slot's
    generated forms.
    """
    if not lemma:
        raise ValueError("lemma must be non-empty")
    explicit = explicit or {}
    out = []
    for slot in paradigm.slots:
        if slot.name in explicit:
            forms = tuple(explicit[slot.name])
        else:
            forms = ()
            if slot.rule is not None:
                forms += (slot.rule.synthesize(lemma),)
            if slot.form is not None and slot.form not in forms:
                forms += (slot.form,)
        out.append((slot.name, forms))
    return out
