"""Sense-to-sense linking of scored derivations, symmetric link attributes in
the lexicon, and queries over the resulting derivational graph."""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, fields
from typing import Iterable, NamedTuple, Optional

from .analyzer import DEFAULT_MAX_DEPTH, analyze
from .lexicon import (
    WORD_LEVEL_SENSE,
    Lexicon,
    Link,
    Sense,
    SenseKey,
    apply_links,
    hypernyms_of,
    lookup,
    relation_lemma,
)
from .morels import ScoreConfig, _lemmas_within, score_analysis
from .morphemes import MorphemeTable
from .records import Record, parse_records, read_source


@dataclass(frozen=True)
class LinkWeights:
    prep_match: int = 2
    prep_miss: int = -1
    domain_match: int = 5
    domain_miss: int = -5
    hyp_content_match: int = 5

    def __post_init__(self):
        if not self.prep_match > 0 > self.prep_miss:
            raise ValueError("need prep_match > 0 > prep_miss")
        if not self.domain_match > 0 > self.domain_miss:
            raise ValueError("need domain_match > 0 > domain_miss")
        if self.hyp_content_match <= 0:
            raise ValueError("hyp_content_match must be positive")

    def scaled(self, k: int) -> "LinkWeights":
        return LinkWeights(**{f.name: getattr(self, f.name) * k for f in fields(self)})


_WEIGHT_FIELDS = {
    "PrepMatch": "prep_match",
    "PrepMiss": "prep_miss",
    "DomainMatch": "domain_match",
    "DomainMiss": "domain_miss",
    "HypContentMatch": "hyp_content_match",
}


def load_weights(source) -> tuple[ScoreConfig, LinkWeights]:
    """Read ``{FailScore -4 PrepMatch 2 ...}``; absent names keep their defaults."""
    recs = parse_records(read_source(source))
    if len(recs) != 1:
        raise ValueError("a weights file holds exactly one record")
    rec = recs[0]
    unknown = set(rec.names()) - set(_WEIGHT_FIELDS) - {"FailScore", "FallbackUsesSlotWeight",
                                                         "RestrictHypernymPos"}
    if unknown:
        raise ValueError(f"unknown weight names: {sorted(unknown)}")
    w = LinkWeights(**{f: int(rec.get(n)) for n, f in _WEIGHT_FIELDS.items() if n in rec})
    flag = lambda n, d: str(rec.get(n, d)).lower() in ("true", "yes", "1")
    cfg = ScoreConfig(
        fail_score=int(rec.get("FailScore", ScoreConfig.fail_score)),
        fallback_uses_slot_weight=flag("FallbackUsesSlotWeight", "true"),
        restrict_hypernym_pos=flag("RestrictHypernymPos", "true"),
    )
    return cfg, w


class LinkTuple(NamedTuple):
    derived: SenseKey
    base: SenseKey
    attr: str
    attr_of: str
    score: int
    gate: int


def _all_lemmas(rec: Record) -> set[str]:
    return set(_lemmas_within(rec, max_depth=1 << 30))


def _domains(s: Sense) -> set[str]:
    return {relation_lemma(r) for r in s.relations.records("Domain")}


def link_senses(derived: Sense, base: Sense, w: LinkWeights = LinkWeights(),
                lex: Optional[Lexicon] = None) -> int:
    """Similarity of one derived sense to one base sense.

    Shared subcategorized prepositions and Domain markers raise the score,
    unshared ones lower it (Domain only when both senses have one). Each
    distinct lemma of the derived sense's relations that also occurs within
    the base sense's Hypernym records, or is a hypernym of such a word in
    ``lex``, adds ``hyp_content_match``.
    """
    score = 0
    for p in sorted(derived.preps):
        score += w.prep_match if p in base.preps else w.prep_miss
    d_dom, b_dom = _domains(derived), _domains(base)
    if d_dom and b_dom:
        for d in sorted(d_dom):
            score += w.domain_match if d in b_dom else w.domain_miss
    content: set[str] = set()
    for h in base.relations.records("Hypernym"):
        if "Lemma" in h:
            content.add(relation_lemma(h))
        content.update(_lemmas_within(h, 1))
    if lex is not None:
        for word in list(content):
            content |= hypernyms_of(lex, word)
    content.discard("")
    score += w.hyp_content_match * len(_all_lemmas(derived.relations) & content)
    return score


def build_links(word: str, lex: Lexicon, table: MorphemeTable,
                cfg: ScoreConfig = ScoreConfig(), w: LinkWeights = LinkWeights(),
                max_depth: int = DEFAULT_MAX_DEPTH) -> list[LinkTuple]:
    """Link tuples for every analysis of ``word``.

    Derived senses whose gate score is positive get a link score per base
    sense; otherwise every base sense receives the (non-positive) gate.
    """
    out = []
    for a in analyze(word, table, lex, max_depth):
        m = a.outer
        bases = lookup(lex, a.base_surface, a.base_pos)
        for d in lookup(lex, a.surface, m.cat):
            gate = score_analysis(a, d, lex, cfg).total
            for b in bases:
                score = link_senses(d, b, w, lex) if gate > 0 else gate
                out.append(LinkTuple(d.key, b.key, m.attr, m.attr_of, score, gate))
    return out


def _word(key: SenseKey) -> tuple[str, str]:
    return key.headword.lower(), key.pos


def update_graph(lex: Lexicon, links: Iterable[LinkTuple],
                 table: Optional[MorphemeTable] = None) -> Lexicon:
    """Write each link as a pair of attributes: ``attr`` on the base sense,
    ``attr_of`` on the derived sense, both carrying the same score.

    Zero-scored sense links are not stored. Links whose gate failed are
    stored once per word pair on the word-level pseudo-sense 0.
    """
    if table is not None:
        pairs = {(m.attr, m.attr_of) for m in table}
    sense_links: dict[tuple, int] = {}
    word_links: dict[tuple, int] = {}
    groups: set[tuple] = set()
    for t in links:
        if table is not None and (t.attr, t.attr_of) not in pairs:
            raise ValueError(f"undeclared attribute pair {t.attr}/{t.attr_of}")
        g = (_word(t.derived), _word(t.base), t.attr, t.attr_of)
        groups.add(g)
        if t.gate > 0:
            if t.score != 0:
                k = (t.derived, t.base, t.attr, t.attr_of)
                sense_links[k] = max(sense_links.get(k, t.score), t.score)
        else:
            word_links[g] = max(word_links.get(g, t.gate), t.gate)
    linked = {((_word(d)), _word(b), a, ao) for d, b, a, ao in sense_links}
    for g in groups:
        if g not in word_links and g not in linked:
            word_links[g] = 0

    updates = []
    for (d, b, attr, attr_of), score in sorted(sense_links.items()):
        updates.append((b, attr, Link(d.headword, d.pos, d.sense_no, score)))
        updates.append((d, attr_of, Link(b.headword, b.pos, b.sense_no, score)))
    for ((dw, dp), (bw, bp), attr, attr_of), score in sorted(word_links.items()):
        dh = lookup(lex, dw, dp)[0].headword
        bh = lookup(lex, bw, bp)[0].headword
        updates.append((SenseKey(bh, bp, WORD_LEVEL_SENSE), attr,
                        Link(dh, dp, WORD_LEVEL_SENSE, score)))
        updates.append((SenseKey(dh, dp, WORD_LEVEL_SENSE), attr_of,
                        Link(bh, bp, WORD_LEVEL_SENSE, score)))
    return apply_links(lex, updates)


# -- graph queries ---------------------------------------------------------


def is_back_attr(attr: str) -> bool:
    return attr.endswith("Of")


class Edge(NamedTuple):
    source: SenseKey
    attr: str
    target: SenseKey
    score: int


def edges(lex: Lexicon) -> list[Edge]:
    """Every stored link as a directed edge, in lexicon order."""
    out = []
    for s in lex.senses:
        for attr, value in s.links:
            for r in ([value] if isinstance(value, Record) else value):
                link = Link.from_record(r)
                out.append(Edge(s.key, attr, SenseKey(link.lemma, link.pos, link.ldoce), link.morels))
    return out


def _neighbours(lex: Lexicon, lemma: str, back: bool) -> set[str]:
    lemma = lemma.lower()
    out = set()
    for s in lex.all_senses(lemma):
        for attr, value in s.links:
            if is_back_attr(attr) != back:
                continue
            for r in ([value] if isinstance(value, Record) else value):
                out.add(relation_lemma(r))
    for ro in lex.runons:
        if back and ro.derived.lower() == lemma:
            out.add(ro.base.lower())
        if not back and ro.base.lower() == lemma:
            out.add(ro.derived.lower())
    return out


def bases_of(lex: Lexicon, lemma: str) -> set[str]:
    """Words ``lemma`` is directly derived from."""
    return _neighbours(lex, lemma, back=True)


def derivatives_of(lex: Lexicon, lemma: str) -> set[str]:
    """Words directly derived from ``lemma``."""
    return _neighbours(lex, lemma, back=False)


def derivational_family(lex: Lexicon, lemma: str) -> set[str]:
    """``lemma`` and every word connected to it by derivational links in either direction."""
    adjacency: dict[str, set[str]] = defaultdict(set)
    for e in edges(lex):
        a, b = e.source.headword.lower(), e.target.headword.lower()
        adjacency[a].add(b)
        adjacency[b].add(a)
    for ro in lex.runons:
        a, b = ro.base.lower(), ro.derived.lower()
        adjacency[a].add(b)
        adjacency[b].add(a)
    start = lemma.lower()
    seen = {start}
    queue = deque([start])
    while queue:
        for nxt in adjacency[queue.popleft()]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def check_symmetry(lex: Lexicon, table: Optional[MorphemeTable] = None) -> list[str]:
    """Problems with the attr/attr_of pairing of stored links (empty when sound)."""
    forward: dict[tuple, list[int]] = defaultdict(list)
    backward: dict[tuple, list[int]] = defaultdict(list)
    norm = lambda k: (k.headword.lower(), k.pos, k.sense_no)
    of_name = {m.attr: m.attr_of for m in table} if table is not None else None
    for e in edges(lex):
        if is_back_attr(e.attr):
            fwd = e.attr[:-2] if of_name is None else next(
                (a for a, ao in of_name.items() if ao == e.attr), e.attr[:-2])
            backward[(norm(e.target), fwd, norm(e.source))].append(e.score)
        else:
            forward[(norm(e.source), e.attr, norm(e.target))].append(e.score)
    problems = []
    for k in sorted(set(forward) | set(backward)):
        f, b = forward.get(k, []), backward.get(k, [])
        if len(f) != 1 or len(b) != 1 or f[0] != b[0]:
            problems.append(f"{k}: forward {f} backward {b}")
    return problems
