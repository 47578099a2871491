"""Certainty scoring of a candidate derivation by comparing a derived sense's
semantic relations with the morpheme's weighted relation template."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional

from .analyzer import Analysis
from .lexicon import Lexicon, Sense, hypernyms_of, lookup, relation_lemma
from .morphemes import TemplateSlot
from .records import Record, RecList, Symbol

DIRECT_MATCH = "DirectMatch"
HYPERNYM_FALLBACK = "HypernymFallback"
BASE_CONTENT_FALLBACK = "BaseContentFallback"
SLOT_MISS = "SlotMiss"
RELATION_MISSING = "RelationMissing"


@dataclass(frozen=True)
class ScoreConfig:
    fail_score: int = -4
    fallback_uses_slot_weight: bool = True
    restrict_hypernym_pos: bool = True

    def __post_init__(self):
        if self.fail_score >= 0:
            raise ValueError("fail_score must be negative")


class Step(NamedTuple):
    path: str
    outcome: str
    delta: int


@dataclass(frozen=True)
class ScoreTrace:
    total: int
    steps: tuple

    @property
    def failed(self) -> bool:
        return any(s.outcome == RELATION_MISSING for s in self.steps)

    def to_record(self, **header) -> Record:
        attrs = [(k, v if isinstance(v, str) else Symbol(str(v))) for k, v in header.items()]
        attrs.append(("Total", Symbol(str(self.total))))
        attrs.extend(
            ("Step", Record([("Path", s.path), ("Outcome", Symbol(s.outcome)),
                             ("Delta", Symbol(str(s.delta)))]))
            for s in self.steps
        )
        return Record(attrs)


def _sub_records(rel: Record, name: str) -> list[Record]:
    return rel.records(name)


def _lemmas_within(rec: Record, max_depth: int, depth: int = 1) -> Iterator[str]:
    """Lemma atoms of ``rec``'s relation records down to ``max_depth`` levels."""
    for name, value in rec:
        if not isinstance(value, (Record, RecList)):
            continue
        for r in ([value] if isinstance(value, Record) else value):
            if "Lemma" in r:
                yield relation_lemma(r)
            if depth < max_depth:
                yield from _lemmas_within(r, max_depth, depth + 1)


def match_lexical(slot: TemplateSlot, derived_rel: Record, base_lemma: str) -> bool:
    """Whether ``derived_rel`` carries the lexical content ``slot`` asks for.

    A slot without Lemmas stands for the base word. Every nested sub-slot must
    match one of the same-named sub-relations of ``derived_rel``.
    """
    lemma = relation_lemma(derived_rel)
    if slot.is_base:
        if lemma != base_lemma.lower():
            return False
    elif lemma not in slot.lemmas:
        return False
    return all(
        any(match_lexical(sub, r, base_lemma) for r in _sub_records(derived_rel, sub.name))
        for sub in slot.subslots
    )


def hypernym_fallback(derived_lemma: str, slot_lemmas, lex: Lexicon,
                      pos: Optional[str] = None) -> bool:
    """True when a dictionary hypernym of ``derived_lemma`` is one of ``slot_lemmas``."""
    wanted = {l.lower() for l in slot_lemmas}
    return bool(hypernyms_of(lex, derived_lemma, pos) & wanted)


def _expected_sublemmas(slot: TemplateSlot, derived_rel: Record) -> Iterator[set]:
    for sub in slot.subslots:
        recs = _sub_records(derived_rel, sub.name)
        yield {relation_lemma(r) for r in recs}
        for r in recs:
            yield from _expected_sublemmas(sub, r)


def base_content_fallback(base_lemma: str, derived_rel: Record, slot: TemplateSlot,
                          lex: Lexicon, pos: Optional[str] = None) -> bool:
    """True when one sense of the base word contains, within two relation
    levels, the lemma of ``derived_rel`` and the lemmas of its sub-relations
    named by the slot's nested sub-slots."""
    needed = [{relation_lemma(derived_rel)}, *_expected_sublemmas(slot, derived_rel)]
    for sense in lookup(lex, base_lemma, pos):
        content = set(_lemmas_within(sense.relations, 2))
        if all(group & content for group in needed):
            return True
    return False


def _present(slot: TemplateSlot, recs: list[Record], path: str) -> Optional[str]:
    """Path of the first template relation with no counterpart, else None."""
    if not recs:
        return path
    for sub in slot.subslots:
        subrecs = [r for rec in recs for r in _sub_records(rec, sub.name)]
        missing = _present(sub, subrecs, f"{path}/{sub.name}")
        if missing:
            return missing
    return None


def score_analysis(a: Analysis, derived: Sense, lex: Lexicon,
                   cfg: ScoreConfig = ScoreConfig()) -> ScoreTrace:
    """Score ``derived`` as the outermost morpheme of ``a`` applied to its base.

    Each template relation found in the derived sense adds its weight when its
    lexical content matches, or when a fallback succeeds (a dictionary
    hypernym for Hypernym, the base word's own relations otherwise). A
    template relation missing from the derived sense fails the whole
    derivation with ``cfg.fail_score``.
    """
    if not a.chain:
        raise ValueError("analysis has an empty morpheme chain")
    base = a.base_surface.lower()
    hyp_pos = derived.pos if cfg.restrict_hypernym_pos else None
    steps: list[Step] = []
    total = 0

    def fallback_delta(slot: TemplateSlot) -> int:
        return slot.weight if cfg.fallback_uses_slot_weight else 1

    for slot in a.outer.slots:
        recs = derived.relations.records(slot.name)
        missing = _present(slot, recs, slot.name)
        if missing:
            steps.append(Step(missing, RELATION_MISSING, 0))
            return ScoreTrace(cfg.fail_score, tuple(steps))
        nested = list(slot.walk())

        if any(match_lexical(slot, r, base) for r in recs):
            for path, s in nested:
                steps.append(Step(path, DIRECT_MATCH, s.weight))
                total += s.weight
            continue

        if slot.name == "Hypernym":
            hit = next((r for r in recs
                        if hypernym_fallback(relation_lemma(r), slot.lemmas, lex, hyp_pos)), None)
            if hit is not None:
                d = fallback_delta(slot)
                steps.append(Step(slot.name, HYPERNYM_FALLBACK, d))
                total += d
                for path, s in nested[1:]:
                    ok = any(match_lexical(s, r, base)
                             for r in _sub_records_along(hit, path))
                    delta = s.weight if ok else 0
                    steps.append(Step(path, DIRECT_MATCH if ok else SLOT_MISS, delta))
                    total += delta
                continue
        elif any(base_content_fallback(base, r, slot, lex, a.base_pos) for r in recs):
            for path, s in nested:
                d = fallback_delta(s)
                steps.append(Step(path, BASE_CONTENT_FALLBACK, d))
                total += d
            continue

        for path, _ in nested:
            steps.append(Step(path, SLOT_MISS, 0))

    return ScoreTrace(total, tuple(steps))


def _sub_records_along(rec: Record, path: str) -> list[Record]:
    """Records reached from ``rec`` by the relation names after the first in ``path``."""
    current = [rec]
    for name in path.split("/")[1:]:
        current = [r for c in current for r in _sub_records(c, name)]
    return current
