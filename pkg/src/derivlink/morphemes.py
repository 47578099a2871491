"""Morpheme tables: categories, continuation classes, example-compiled
allomorph rules and weighted semantic-relation templates."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .records import AtomList, Record, RecList, parse_records, read_source

PREFIX = "Prefix"
SUFFIX = "Suffix"

# Morpheme attributes that are not template relations.
RESERVED = frozenset({
    "Name", "Cat", "PCat", "NextMorphs", "Rules", "Side", "Attr", "AttrOf",
    "Affix", "Defin", "Exs",
})


class MorphemeError(ValueError):
    pass


class MissingField(MorphemeError):
    pass


class BadRuleSyntax(MorphemeError):
    pass


class StemMismatch(BadRuleSyntax):
    pass


class DuplicateMorphemeName(MorphemeError):
    pass


class ReplacementMismatch(ValueError):
    pass


@dataclass(frozen=True, order=True)
class AllomorphRule:
    """``(_er -> _y)``: strip ``affix`` from a derived form, add ``replacement``."""

    affix: str
    side: str = SUFFIX
    replacement: str = ""

    def __post_init__(self):
        if not self.affix:
            raise BadRuleSyntax("affix surface must be non-empty")
        if self.side not in (PREFIX, SUFFIX):
            raise BadRuleSyntax(f"unknown side {self.side!r}")

    def stem_of(self, word: str) -> Optional[str]:
        """The stem left after stripping the affix, or None if it is absent."""
        if len(word) <= len(self.affix):
            return None
        if self.side == SUFFIX:
            return word[: -len(self.affix)] if word.endswith(self.affix) else None
        return word[len(self.affix):] if word.startswith(self.affix) else None

    def strip(self, word: str) -> Optional[str]:
        stem = self.stem_of(word)
        if stem is None:
            return None
        return stem + self.replacement if self.side == SUFFIX else self.replacement + stem

    def synthesize(self, base: str) -> str:
        rep = self.replacement
        if self.side == SUFFIX:
            if not base.endswith(rep):
                raise ReplacementMismatch(f"{base!r} does not end with {rep!r}")
            return base[: len(base) - len(rep)] + self.affix
        if not base.startswith(rep):
            raise ReplacementMismatch(f"{base!r} does not begin with {rep!r}")
        return self.affix + base[len(rep):]

    def __str__(self) -> str:
        if self.side == SUFFIX:
            return f"(_{self.affix} -> _{self.replacement})"
        return f"({self.affix}_ -> {self.replacement}_)"


def compile_rule(example: str, side: str = SUFFIX) -> AllomorphRule:
    """Abstract the affix from an example such as ``"geograph er -> geograph y"``."""
    if example.count("->") != 1:
        raise BadRuleSyntax(f"rule needs exactly one '->': {example!r}")
    lhs, rhs = (part.split() for part in example.split("->"))
    if len(lhs) != 2 or len(rhs) not in (1, 2):
        raise BadRuleSyntax(f"malformed rule example: {example!r}")
    if side == SUFFIX:
        stem, affix = lhs
        rstem, repl = rhs[0], (rhs[1] if len(rhs) == 2 else "")
    elif side == PREFIX:
        affix, stem = lhs
        rstem, repl = rhs[-1], (rhs[0] if len(rhs) == 2 else "")
    else:
        raise BadRuleSyntax(f"unknown side {side!r}")
    if rstem != stem:
        raise StemMismatch(f"stem {rstem!r} differs from {stem!r} in {example!r}")
    return AllomorphRule(affix, side, repl)


@dataclass(frozen=True)
class TemplateSlot:
    """One weighted relation of a morpheme template.

    ``lemmas`` empty means the slot is a placeholder for the base lemma.
    """

    name: str
    lemmas: frozenset
    weight: int
    subslots: tuple = ()

    @property
    def is_base(self) -> bool:
        return not self.lemmas

    def walk(self, prefix: str = ""):
        path = f"{prefix}/{self.name}" if prefix else self.name
        yield path, self
        for sub in self.subslots:
            yield from sub.walk(path)


def _slot(name: str, rec: Record, morpheme: str) -> TemplateSlot:
    if "Morels" not in rec:
        raise MissingField(f"{morpheme}: template relation {name} has no Morels weight")
    try:
        weight = int(rec.get("Morels"))
    except ValueError:
        raise MorphemeError(f"{morpheme}: Morels weight of {name} is not an integer")
    if weight <= 0:
        raise MorphemeError(f"{morpheme}: Morels weight of {name} must be positive")
    lemmas = rec.get("Lemmas", AtomList())
    if not isinstance(lemmas, AtomList):
        lemmas = AtomList([lemmas])
    subs = []
    for sub_name, value in rec:
        if isinstance(value, (Record, RecList)):
            if isinstance(value, RecList):
                raise MorphemeError(f"{morpheme}: template relation {sub_name} repeated")
            subs.append(_slot(sub_name, value, morpheme))
    return TemplateSlot(name, frozenset(l.lower() for l in lemmas), weight, tuple(subs))


@dataclass(frozen=True)
class Morpheme:
    name: str
    cat: str
    pcat: str
    next_morphs: tuple
    rules: tuple
    template: Record
    slots: tuple
    attr: str = "Deriv"
    attr_of: str = "DerivOf"
    side: str = SUFFIX
    affix: str = ""
    defin: str = ""
    exs: str = ""

    @property
    def word_final(self) -> bool:
        return "None" in self.next_morphs

    @classmethod
    def from_record(cls, rec: Record) -> "Morpheme":
        for f in ("Name", "Cat", "PCat", "NextMorphs", "Rules"):
            if f not in rec:
                raise MissingField(f"morpheme record lacks {f}: {rec!r}")
        name = str(rec.get("Name"))
        side = str(rec.get("Side", SUFFIX))
        examples = rec.get("Rules")
        if not isinstance(examples, AtomList):
            examples = [examples] if isinstance(examples, str) else []
        rules = tuple(dict.fromkeys(compile_rule(e, side) for e in examples))
        if not rules:
            raise BadRuleSyntax(f"{name}: Rules is empty")
        nm = rec.get("NextMorphs")
        nm = tuple(str(x) for x in nm) if isinstance(nm, AtomList) else (str(nm),)
        template = Record((n, v) for n, v in rec if n not in RESERVED and isinstance(v, (Record, RecList)))
        slots = []
        for slot_name, value in template:
            if isinstance(value, RecList):
                raise MorphemeError(f"{name}: template relation {slot_name} repeated")
            slots.append(_slot(slot_name, value, name))
        attr = str(rec.get("Attr", "Deriv"))
        attr_of = str(rec.get("AttrOf", attr + "Of"))
        if not attr or not attr_of or attr == attr_of:
            raise MorphemeError(f"{name}: Attr and AttrOf must be distinct non-empty names")
        return cls(
            name=name,
            cat=str(rec.get("Cat")),
            pcat=str(rec.get("PCat")),
            next_morphs=nm,
            rules=rules,
            template=template,
            slots=tuple(slots),
            attr=attr,
            attr_of=attr_of,
            side=side,
            affix=str(rec.get("Affix", name.split("_")[0])),
            defin=str(rec.get("Defin", "")),
            exs=str(rec.get("Exs", "")),
        )


class MorphemeTable:
    """Morphemes indexed by name and by affix surface."""

    def __init__(self, morphemes: Iterable[Morpheme] = ()):
        self.by_name: dict[str, Morpheme] = {}
        self.by_affix: dict[tuple[str, str], list[tuple[Morpheme, AllomorphRule]]] = {}
        for m in morphemes:
            if m.name in self.by_name:
                raise DuplicateMorphemeName(m.name)
            self.by_name[m.name] = m
            for r in m.rules:
                self.by_affix.setdefault((r.side, r.affix), []).append((m, r))

    def __len__(self) -> int:
        return len(self.by_name)

    def __iter__(self):
        return iter(self.by_name.values())

    def __getitem__(self, name: str) -> Morpheme:
        return self.by_name[name]

    def __getstate__(self):
        return list(self.by_name.values())

    def __setstate__(self, state):
        self.__init__(state)


def load_morphemes(source) -> MorphemeTable:
    return MorphemeTable(Morpheme.from_record(r) for r in parse_records(read_source(source)))


def morphemes_for_affix(table: MorphemeTable, word: str, min_stem: int = 1):
    """Every (morpheme, rule) whose affix can be stripped from ``word`` leaving
    a stem of at least ``min_stem`` characters.

    Ordered by longer affix, then morpheme name, then longer replacement.
    """
    found = []
    for (side, affix), pairs in table.by_affix.items():
        if len(word) - len(affix) < max(min_stem, 1):
            continue
        if side == SUFFIX and not word.endswith(affix):
            continue
        if side == PREFIX and not word.startswith(affix):
            continue
        found.extend(pairs)
    found.sort(key=lambda mr: (-len(mr[1].affix), mr[0].name, -len(mr[1].replacement),
                               mr[1].replacement, mr[1].side))
    return found
