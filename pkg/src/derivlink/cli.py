"""Command-line driver: analysis, scoring, graph building and text reports.

Exit codes: 0 success, 1 usage, 2 parse error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import os
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .analyzer import DEFAULT_MAX_DEPTH, analyze, bracket, generate_paradigm, load_paradigms
from .lexicon import Lexicon, LexiconError, load_lexicon, lookup
from .linker import LinkTuple, LinkWeights, build_links, load_weights, update_graph
from .morels import ScoreConfig, score_analysis
from .morphemes import MorphemeError, MorphemeTable, load_morphemes
from .records import (
    RecordSyntaxError,
    Symbol,
    parse_records,
    read_source,
    serialize_record,
    serialize_records,
)

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


@dataclass
class RunConfig:
    lexicon_path: str
    morphemes_path: str
    paradigms_path: Optional[str] = None
    weights_path: Optional[str] = None
    max_depth: int = DEFAULT_MAX_DEPTH
    output_path: Optional[str] = None
    jobs: int = 1

    def __post_init__(self):
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        if self.max_depth < 1:
            raise UsageError("--max-depth must be at least 1")


_CONFIG_KEYS = {
    "Lexicon": "lexicon",
    "Morphemes": "morphemes",
    "Paradigms": "paradigms",
    "Weights": "weights",
    "MaxDepth": "max_depth",
    "Jobs": "jobs",
    "Out": "out",
}
_PATH_KEYS = {"lexicon", "morphemes", "paradigms", "weights", "out"}


def _read_config(path: str) -> dict:
    """Settings from a one-record config file; relative paths resolve
    against the file's directory."""
    with open(path, encoding="utf-8") as f:
        recs = parse_records(f.read())
    if len(recs) != 1:
        raise UsageError(f"{path}: a config file holds exactly one record")
    here = os.path.dirname(os.path.abspath(path))
    out = {}
    for name, value in recs[0]:
        if name not in _CONFIG_KEYS:
            raise UsageError(f"{path}: unknown config key {name}")
        key = _CONFIG_KEYS[name]
        value = str(value)
        if key in _PATH_KEYS:
            value = os.path.join(here, value)
        elif key in ("max_depth", "jobs"):
            value = int(value)
        out[key] = value
    return out


def _resolve(args: argparse.Namespace) -> RunConfig:
    merged = _read_config(args.config) if args.config else {}
    for key in ("lexicon", "morphemes", "paradigms", "weights", "max_depth", "jobs", "out"):
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = flag
    if "lexicon" not in merged:
        raise UsageError("--lexicon is required (flag or config file)")
    needs_morphemes = args.command != "paradigm"
    if needs_morphemes and "morphemes" not in merged:
        raise UsageError("--morphemes is required (flag or config file)")
    return RunConfig(
        lexicon_path=merged["lexicon"],
        morphemes_path=merged.get("morphemes"),
        paradigms_path=merged.get("paradigms"),
        weights_path=merged.get("weights"),
        max_depth=merged.get("max_depth", DEFAULT_MAX_DEPTH),
        output_path=merged.get("out"),
        jobs=merged.get("jobs", 1),
    )


def _load_file(path: str, loader):
    with open(path, encoding="utf-8") as f:
        return loader(f.read())


@dataclass
class Session:
    rc: RunConfig
    lex: Lexicon
    table: Optional[MorphemeTable]
    cfg: ScoreConfig
    weights: LinkWeights

    @classmethod
    def open(cls, rc: RunConfig) -> "Session":
        lex = _load_file(rc.lexicon_path, load_lexicon)
        table = _load_file(rc.morphemes_path, load_morphemes) if rc.morphemes_path else None
        cfg, w = ScoreConfig(), LinkWeights()
        if rc.weights_path:
            cfg, w = _load_file(rc.weights_path, load_weights)
        return cls(rc, lex, table, cfg, w)


# -- batch link computation --------------------------------------------------

_WORKER: dict = {}


def _init_worker(lex, table, cfg, w, max_depth):
    _WORKER.update(lex=lex, table=table, cfg=cfg, w=w, max_depth=max_depth)


def _links_for(word: str) -> list[LinkTuple]:
    s = _WORKER
    return build_links(word, s["lex"], s["table"], s["cfg"], s["w"], s["max_depth"])


def _tuple_key(t: LinkTuple):
    d, b = t.derived, t.base
    return (d.headword.lower(), d.sense_no, b.pos, b.sense_no, d.pos, b.headword.lower(), t.score)


def all_links(s: Session) -> list[LinkTuple]:
    """Link tuples for every headword, in a fixed order whatever ``jobs`` is."""
    words = s.lex.headwords()
    init = (s.lex, s.table, s.cfg, s.weights, s.rc.max_depth)
    if s.rc.jobs == 1 or len(words) < 2:
        _init_worker(*init)
        chunks = [_links_for(w) for w in words]
    else:
        with ProcessPoolExecutor(s.rc.jobs, initializer=_init_worker, initargs=init) as ex:
            chunks = list(ex.map(_links_for, words, chunksize=max(1, len(words) // (4 * s.rc.jobs))))
    return sorted((t for chunk in chunks for t in chunk), key=_tuple_key)


def format_tuple(t: LinkTuple) -> str:
    d, b = t.derived, t.base
    return (f"{d.headword}, {d.pos.lower()}, {d.sense_no}, "
            f"{b.headword}, {b.pos.lower()}, {b.sense_no}, {t.score}")


# -- commands ----------------------------------------------------------------


def _emit(s: Session, text: str) -> None:
    if s.rc.output_path:
        with open(s.rc.output_path, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(s: Session, args) -> None:
    for word in args.words:
        for a in analyze(word, s.table, s.lex, s.rc.max_depth):
            print(bracket(a))


def cmd_score(s: Session, args) -> None:
    for word in args.words:
        for a in analyze(word, s.table, s.lex, s.rc.max_depth):
            for d in lookup(s.lex, a.surface, a.outer.cat):
                trace = score_analysis(a, d, s.lex, s.cfg)
                if args.trace:
                    rec = trace.to_record(Headword=d.headword, Cat=Symbol(d.pos), Ldoce=d.sense_no,
                                          Analysis=bracket(a))
                    print(serialize_record(rec))
                else:
                    print(f"{d.headword}, {d.pos.lower()}, {d.sense_no}, {bracket(a)}, {trace.total}")


def cmd_build(s: Session, args) -> None:
    lex = update_graph(s.lex, all_links(s), s.table)
    _emit(s, serialize_records(sense.record for sense in lex.senses))


def cmd_emit_tuples(s: Session, args) -> None:
    _emit(s, "".join(format_tuple(t) + "\n" for t in all_links(s)))


def affix_counts(lex: Lexicon, table: MorphemeTable, max_depth: int) -> Counter:
    """Per morpheme name, the number of headwords with an analysis using it."""
    counts: Counter = Counter()
    for word in lex.headwords():
        used = {m.name for a in analyze(word, table, lex, max_depth) for m, _ in a.chain}
        counts.update(used)
    return counts


def cmd_report_affixes(s: Session, args) -> None:
    counts = affix_counts(s.lex, s.table, s.rc.max_depth)
    rows = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    width = max((len(n) for n, _ in rows), default=0)
    _emit(s, "".join(f"{n:<{width}}  {c}\n" for n, c in rows))


def load_exceptions(source) -> set[tuple[str, str]]:
    """``{Derived .. Base ..}`` records naming run-ons whose gold base is
    reached through intermediate derivations."""
    out = set()
    for r in parse_records(read_source(source)):
        if "Derived" not in r or "Base" not in r:
            raise ValueError(f"exception record needs Derived and Base: {r!r}")
        out.add((str(r.get("Derived")).lower(), str(r.get("Base")).lower()))
    return out


def _reachable_bases(word: str, table, lex, max_depth: int) -> set[str]:
    seen: set[str] = set()
    frontier = [word.lower()]
    while frontier:
        nxt = []
        for w in frontier:
            for a in analyze(w, table, lex, max_depth):
                if a.base_surface not in seen:
                    seen.add(a.base_surface)
                    nxt.append(a.base_surface)
        frontier = nxt
    return seen


@dataclass(frozen=True)
class Agreement:
    matched: int
    total: int
    ambiguous: int

    @property
    def ratio(self) -> float:
        return self.matched / self.total if self.total else 0.0


def agreement(lex: Lexicon, table: MorphemeTable, max_depth: int = DEFAULT_MAX_DEPTH,
              exceptions: frozenset = frozenset()) -> Agreement:
    gold = lex.runons
    if not gold:
        raise LexiconError("the lexicon declares no run-ons")
    matched = ambiguous = 0
    for ro in gold:
        analyses = analyze(ro.derived, table, lex, max_depth)
        bases = {a.base_surface for a in analyses}
        if len({(a.base_surface, a.base_pos) for a in analyses}) > 1:
            ambiguous += 1
        key = (ro.derived.lower(), ro.base.lower())
        if key in exceptions:
            bases = _reachable_bases(ro.derived, table, lex, max_depth)
        matched += ro.base.lower() in bases
    return Agreement(matched, len(gold), ambiguous)


def cmd_agreement(s: Session, args) -> None:
    exc = frozenset(_load_file(args.exceptions, load_exceptions)) if args.exceptions else frozenset()
    r = agreement(s.lex, s.table, s.rc.max_depth, exc)
    print(f"matched {r.matched}")
    print(f"total {r.total}")
    print(f"ratio {r.ratio:.4f}")
    print(f"ambiguous {r.ambiguous}")


def cmd_paradigm(s: Session, args) -> None:
    if not s.rc.paradigms_path:
        raise UsageError("--paradigms is required for paradigm")
    paradigms = _load_file(s.rc.paradigms_path, load_paradigms)
    for lemma in args.lemmas:
        senses = lookup(s.lex, lemma, "Verb") or lookup(s.lex, lemma)
        name = args.paradigm or next((x.paradigm for x in senses if x.paradigm), "DEFAULT")
        if name not in paradigms:
            raise UsageError(f"unknown paradigm {name}")
        explicit = {}
        for x in senses:
            forms = x.record.get("Forms")
            if forms is not None and hasattr(forms, "attrs"):
                for slot, value in forms:
                    explicit[slot] = tuple(value) if isinstance(value, tuple) else (str(value),)
        for slot, forms in generate_paradigm(lemma, paradigms[name], explicit):
            print(f"{lemma} {slot} {' '.join(forms)}")


COMMANDS = {
    "analyze": cmd_analyze,
    "score": cmd_score,
    "build": cmd_build,
    "emit-tuples": cmd_emit_tuples,
    "report-affixes": cmd_report_affixes,
    "agreement": cmd_agreement,
    "paradigm": cmd_paradigm,
}


def make_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="records file with default settings; flags win")
    common.add_argument("--lexicon")
    common.add_argument("--morphemes")
    common.add_argument("--paradigms")
    common.add_argument("--weights")
    common.add_argument("--max-depth", type=int, dest="max_depth")
    common.add_argument("--jobs", type=int)
    common.add_argument("--out", help="write output here instead of stdout")

    p = _Parser(prog="derivlink", description="Derivational morphology linking over a sense lexicon.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sp = sub.add_parser("analyze", parents=[common], help="print bracketed analyses")
    sp.add_argument("words", nargs="+")
    sp = sub.add_parser("score", parents=[common], help="print gate scores per derived sense")
    sp.add_argument("words", nargs="+")
    sp.add_argument("--trace", action="store_true")
    sub.add_parser("build", parents=[common], help="write the lexicon with derivational links")
    sub.add_parser("emit-tuples", parents=[common], help="write one line per sense pair")
    sub.add_parser("report-affixes", parents=[common], help="headword counts per morpheme")
    sp = sub.add_parser("agreement", parents=[common], help="compare analyses with run-ons")
    sp.add_argument("--exceptions", help="records file of flattened run-on pairs")
    sp = sub.add_parser("paradigm", parents=[common], help="print inflectional paradigms")
    sp.add_argument("lemmas", nargs="+")
    sp.add_argument("--paradigm", help="paradigm name (default: the entry's marker)")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        session = Session.open(_resolve(args))
        COMMANDS[args.command](session, args)
    except UsageError as e:
        print(f"derivlink: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"derivlink: {e}", file=sys.stderr)
        return EXIT_IO
    except (RecordSyntaxError, LexiconError, MorphemeError, ValueError, KeyError) as e:
        print(f"derivlink: {e}", file=sys.stderr)
        return EXIT_PARSE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
