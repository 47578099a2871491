"""Dictionary senses loaded from record files, with lookup and link updates."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional

from .records import AtomList, Record, RecList, Symbol, parse_records, read_source

CATEGORIES = ("Noun", "Verb", "Adj", "Adv")

# Top-level sense attributes that are neither semantic relations nor links.
RESERVED = frozenset(
    {"Headword", "Cat", "Ldoce", "Defin", "Preps", "Paradigm", "RunOn", "Exs", "Forms"}
)

WORD_LEVEL_SENSE = 0


class LexiconError(ValueError):
    pass


class MissingRequiredAttr(LexiconError):
    pass


class DuplicateSense(LexiconError):
    pass


class BadSenseNumber(LexiconError):
    pass


class BadCategory(LexiconError):
    pass


class UnknownSense(LexiconError, KeyError):
    def __str__(self) -> str:  # KeyError would repr() the message
        return str(self.args[0]) if self.args else ""


class SenseKey(NamedTuple):
    headword: str
    pos: str
    sense_no: int


class Link(NamedTuple):
    lemma: str
    pos: str
    ldoce: int
    morels: int

    def to_record(self) -> Record:
        return Record([
            ("Lemma", self.lemma),
            ("Cat", Symbol(self.pos)),
            ("Ldoce", Symbol(str(self.ldoce))),
            ("Morels", Symbol(str(self.morels))),
        ])

    @classmethod
    def from_record(cls, r: Record) -> "Link":
        return cls(str(r.get("Lemma", "")), str(r.get("Cat", "")),
                   int(r.get("Ldoce")), int(r.get("Morels")))


def _is_link_value(v) -> bool:
    recs = [v] if isinstance(v, Record) else list(v) if isinstance(v, RecList) else []
    return bool(recs) and all("Ldoce" in r and "Morels" in r for r in recs)


@dataclass(frozen=True)
class Sense:
    headword: str
    pos: str
    sense_no: int
    defin: str
    relations: Record
    preps: frozenset
    paradigm: Optional[str]
    links: Record
    record: Record = field(repr=False, compare=False)

    @property
    def key(self) -> SenseKey:
        return SenseKey(self.headword, self.pos, self.sense_no)

    @classmethod
    def from_record(cls, rec: Record) -> "Sense":
        for name in ("Headword", "Cat", "Ldoce", "Defin"):
            if name not in rec:
                raise MissingRequiredAttr(f"sense record lacks {name}: {rec!r}")
        headword = str(rec.get("Headword"))
        pos = str(rec.get("Cat"))
        if pos not in CATEGORIES:
            raise BadCategory(f"{headword}: unknown category {pos!r}")
        try:
            sense_no = int(rec.get("Ldoce"))
        except (TypeError, ValueError):
            raise BadSenseNumber(f"{headword}: Ldoce {rec.get('Ldoce')!r} is not an integer")
        if sense_no != WORD_LEVEL_SENSE and sense_no < 100:
            raise BadSenseNumber(f"{headword}: sense numbers start at 100, got {sense_no}")
        rels, links = [], []
        for name, value in rec:
            if name in RESERVED or not isinstance(value, (Record, RecList, AtomList)):
                continue
            if _is_link_value(value):
                links.append((name, value))
            else:
                rels.append((name, value))
        preps = rec.get("Preps", AtomList())
        preps = frozenset(p.lower() for p in (preps if isinstance(preps, AtomList) else [preps]))
        paradigm = rec.get("Paradigm")
        return cls(headword, pos, sense_no, str(rec.get("Defin")), Record(rels),
                   preps, None if paradigm is None else str(paradigm), Record(links), rec)


class RunOn(NamedTuple):
    derived: str
    pos: str
    base: str


@dataclass(frozen=True)
class Lexicon:
    senses: tuple
    index: dict = field(repr=False)
    runons: tuple = ()

    @classmethod
    def from_senses(cls, senses: Iterable[Sense]) -> "Lexicon":
        senses = tuple(senses)
        index: dict[tuple[str, str], list[Sense]] = {}
        seen = set()
        runons = []
        for s in senses:
            k = (s.headword.lower(), s.pos, s.sense_no)
            if k in seen:
                raise DuplicateSense(f"duplicate sense {s.headword} {s.pos} {s.sense_no}")
            seen.add(k)
            index.setdefault((s.headword.lower(), s.pos), []).append(s)
            for r in s.record.records("RunOn"):
                runons.append(RunOn(str(r.get("Lemma")), str(r.get("Cat")), s.headword))
        for lst in index.values():
            lst.sort(key=lambda s: s.sense_no)
        return cls(senses, index, tuple(runons))

    def __len__(self) -> int:
        return len(self.senses)

    def headwords(self) -> list[str]:
        """Distinct lowercased headwords in first-seen order."""
        return list(dict.fromkeys(s.headword.lower() for s in self.senses))

    def has(self, lemma: str, pos: str) -> bool:
        return any(s.sense_no != WORD_LEVEL_SENSE for s in self.index.get((lemma.lower(), pos), ()))

    def get(self, key: SenseKey) -> Optional[Sense]:
        for s in self.index.get((key.headword.lower(), key.pos), ()):
            if s.sense_no == key.sense_no:
                return s
        return None

    def all_senses(self, lemma: str) -> list[Sense]:
        """Every sense of ``lemma`` including word-level pseudo-senses."""
        out = []
        for pos in CATEGORIES:
            out.extend(self.index.get((lemma.lower(), pos), ()))
        return out


def load_lexicon(source) -> Lexicon:
    """Build a lexicon from record text (a string, file object or line iterable)."""
    return Lexicon.from_senses(Sense.from_record(r) for r in parse_records(read_source(source)))


def lookup(lex: Lexicon, lemma: str, pos: Optional[str] = None) -> list[Sense]:
    """Real senses of ``lemma`` (optionally one POS), ordered by sense number."""
    cats = (pos,) if pos else CATEGORIES
    out = []
    for c in cats:
        out.extend(s for s in lex.index.get((lemma.lower(), c), ()) if s.sense_no != WORD_LEVEL_SENSE)
    if not pos:
        out.sort(key=lambda s: s.sense_no)
    return out


def relation_lemma(r: Record) -> str:
    return str(r.get("Lemma", "")).lower()


def hypernyms_of(lex: Lexicon, lemma: str, pos: Optional[str] = None) -> set[str]:
    """Lemmas stored directly under the Hypernym attribute of ``lemma``'s senses."""
    out = set()
    for s in lookup(lex, lemma, pos):
        for h in s.relations.records("Hypernym"):
            if "Lemma" in h:
                out.add(relation_lemma(h))
    return out


def gold_runons(lex: Lexicon) -> list[RunOn]:
    return list(lex.runons)


def _sense_with_link(rec: Record, attr: str, link: Link) -> Record:
    current = [r for r in rec.records(attr)]
    key = (link.lemma.lower(), link.pos, link.ldoce)
    new = link.to_record()
    for i, r in enumerate(current):
        old = Link.from_record(r)
        if (old.lemma.lower(), old.pos, old.ldoce) == key:
            current[i] = new
            break
    else:
        current.append(new)
    return rec.replace(attr, RecList(current))


def _pseudo_record(headword: str, pos: str) -> Record:
    return Record([
        ("Headword", headword),
        ("Cat", Symbol(pos)),
        ("Ldoce", Symbol(str(WORD_LEVEL_SENSE))),
        ("Defin", ""),
    ])


def apply_links(lex: Lexicon, updates: Iterable[tuple[SenseKey, str, Link]]) -> Lexicon:
    """Batch form of :func:`apply_link`; updates are applied in order."""
    records: dict[tuple[str, str, int], Record] = {
        (s.headword.lower(), s.pos, s.sense_no): s.record for s in lex.senses
    }
    order = list(records)
    touched = False
    for key, attr, link in updates:
        k = (key.headword.lower(), key.pos, key.sense_no)
        if k not in records:
            if key.sense_no == WORD_LEVEL_SENSE and lex.has(key.headword, key.pos):
                head = lookup(lex, key.headword, key.pos)[0].headword
                records[k] = _pseudo_record(head, key.pos)
                order.append(k)
            else:
                raise UnknownSense(f"no sense {key.headword} {key.pos} {key.sense_no}")
        records[k] = _sense_with_link(records[k], attr, link)
        touched = True
    if not touched:
        return lex
    return Lexicon.from_senses(Sense.from_record(records[k]) for k in order)


def apply_link(lex: Lexicon, key: SenseKey, attr: str, link: Link) -> Lexicon:
    """Add ``link`` under ``attr`` on one sense; an existing link to the same
    (lemma, pos, sense) has its score overwritten.

    Key sense number 0 addresses the word-level pseudo-sense, created on demand.
    """
    return apply_links(lex, [(key, attr, link)])
