import dataclasses

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from derivlink.analyzer import analyze
from derivlink.lexicon import Sense, lookup
from derivlink.morels import (
    BASE_CONTENT_FALLBACK,
    DIRECT_MATCH,
    HYPERNYM_FALLBACK,
    RELATION_MISSING,
    SLOT_MISS,
    ScoreConfig,
    base_content_fallback,
    hypernym_fallback,
    match_lexical,
    score_analysis,
)
from derivlink.morphemes import load_morphemes
from derivlink.records import Record, parse_record


def _score(word, sense_no, lex, table, cfg=ScoreConfig(), morpheme="er_denominal"):
    a = next(a for a in analyze(word, table, lex) if a.outer.name == morpheme)
    d = next(s for s in lookup(lex, word, a.outer.cat) if s.sense_no == sense_no)
    return score_analysis(a, d, lex, cfg)


def test_geographer_is_14(lex, table):
    t = _score("geographer", 100, lex, table)
    assert t.total == 14
    assert [(s.path, s.outcome, s.delta) for s in t.steps] == [
        ("Hypernym", DIRECT_MATCH, 2),
        ("SubjOf", DIRECT_MATCH, 2),
        ("SubjOf/HasObj", DIRECT_MATCH, 10),
    ]


def test_corner_fails(lex, table):
    for n in (100, 101):
        t = _score("corner", n, lex, table)
        assert t.total == -4 and t.failed
        assert t.steps[-1].outcome == RELATION_MISSING


def test_cartographer_fallback(lex, table):
    t = _score("cartographer", 100, lex, table)
    # hand trace: Hypernym person 2, SubjOf make and HasObj map found in cartography (2 + 10)
    assert t.total == 14
    assert [s.outcome for s in t.steps] == [DIRECT_MATCH, BASE_CONTENT_FALLBACK, BASE_CONTENT_FALLBACK]


def test_banker_hypernym_fallback(lex, table):
    t = _score("banker", 102, lex, table)
    assert t.steps[0].outcome == HYPERNYM_FALLBACK
    # hand trace: player -> person gives 2, keep matches neither know nor work
    assert t.total == 2
    assert 0 < t.total < _score("geographer", 100, lex, table).total


def test_missing_nested_relation_fails(lex, table):
    t = _score("banker", 101, lex, table)
    assert t.total == -4 and t.steps[-1].path == "SubjOf/HasObj"


def test_fallback_weight_option(lex, table):
    cfg = ScoreConfig(fallback_uses_slot_weight=False)
    assert _score("cartographer", 100, lex, table, cfg).total == 2 + 1 + 1
    assert _score("geographer", 100, lex, table, cfg).total == 14


def test_fail_score_must_be_negative():
    with pytest.raises(ValueError):
        ScoreConfig(fail_score=0)


def test_custom_fail_score(lex, table):
    assert _score("corner", 100, lex, table, ScoreConfig(fail_score=-9)).total == -9


def test_hypernym_pos_restriction(lex, table):
    # player only exists as a noun; with a verb restriction the fallback finds nothing
    assert hypernym_fallback("player", {"person"}, lex, "Noun")
    assert not hypernym_fallback("player", {"person"}, lex, "Verb")
    assert hypernym_fallback("player", {"person"}, lex)


def test_hypernym_fallback_cases(lex):
    assert not hypernym_fallback("zzz", {"person"}, lex)
    assert not hypernym_fallback("plate", {"person"}, lex)


def test_match_lexical(table):
    subj = table["er_denominal"].slots[1]
    know = parse_record('{Lemma "know" HasObj {Lemma "geography"}}')
    keep = parse_record('{Lemma "keep" HasObj {Lemma "geography"}}')
    assert match_lexical(subj, know, "geography")
    assert not match_lexical(subj, know, "history")
    assert not match_lexical(subj, keep, "geography")
    (has_obj,) = subj.subslots
    assert match_lexical(has_obj, parse_record('{Lemma "Geography"}'), "geography")


def test_base_content_fallback(lex, table):
    subj = table["er_denominal"].slots[1]
    make_map = parse_record('{Lemma "make" HasObj {Lemma "map"}}')
    assert base_content_fallback("cartography", make_map, subj, lex)
    assert not base_content_fallback("nowhere", make_map, subj, lex)
    keep = parse_record('{Lemma "keep" HasObj {Lemma "bank"}}')
    assert not base_content_fallback("bank", keep, subj, lex)
    make_globe = parse_record('{Lemma "make" HasObj {Lemma "globe"}}')
    assert not base_content_fallback("cartography", make_globe, subj, lex)


def test_trace_record(lex, table):
    rec = _score("geographer", 100, lex, table).to_record(Headword="geographer")
    assert rec.get("Total") == "14"
    assert len(rec.records("Step")) == 3


def test_empty_chain_rejected(lex, table):
    a = analyze("geographer", table, lex)[0]
    with pytest.raises(ValueError):
        score_analysis(dataclasses.replace(a, chain=()), lookup(lex, "geographer")[0], lex)


def _with_relations(sense: Sense, extra) -> Sense:
    return dataclasses.replace(sense, relations=Record(list(sense.relations) + extra))


def test_extra_relations_are_inert(lex, table):
    a = analyze("geographer", table, lex)[0]
    d = lookup(lex, "geographer")[0]
    noisy = _with_relations(d, [("Manner", parse_record('{Lemma "completely"}')),
                                ("Domain", parse_record('{Lemma "science"}'))])
    assert score_analysis(a, noisy, lex).total == score_analysis(a, d, lex).total


# -- properties over all fixture derivations -------------------------------


def _all_traces(lex, table, cfg=ScoreConfig()):
    for w in lex.headwords():
        for a in analyze(w, table, lex):
            for d in lookup(lex, w, a.outer.cat):
                yield a, d, score_analysis(a, d, lex, cfg)


def test_trace_soundness(lex, table):
    n = 0
    for _, _, t in _all_traces(lex, table):
        n += 1
        if t.failed:
            assert t.total == -4
        else:
            assert t.total == sum(s.delta for s in t.steps)
    assert n > 20


def test_fail_dominance(lex, table):
    for a, d, t in _all_traces(lex, table):
        absent = any(slot.name not in d.relations for slot in a.outer.slots)
        if absent:
            assert t.total == -4


_WEIGHTED = """
{{Name er_denominal Affix er Cat Noun PCat Noun NextMorphs (None)
  Rules ("geograph er -> geograph y" "bank er -> bank")
  Hypernym {{Lemmas (person) Morels {h}}}
  SubjOf {{Lemmas (know work) Morels {s} HasObj {{Morels {o}}}}}}}
"""


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 30), st.integers(1, 30), st.integers(1, 30), st.integers(1, 5))
def test_weight_monotonicity(lex, h, s, o, bump):
    def totals(hh, ss, oo):
        t = load_morphemes(_WEIGHTED.format(h=hh, s=ss, o=oo))
        out = {}
        for w in ("geographer", "cartographer", "banker"):
            for a, d, tr in _all_traces_for(w, lex, t):
                out[(w, d.sense_no)] = tr
        return out

    base = totals(h, s, o)
    bumped = totals(h, s + bump, o)
    for k, tr in base.items():
        new = bumped[k]
        assert new.total >= tr.total
        subj_hit = any(st_.path == "SubjOf" and st_.outcome not in (SLOT_MISS, RELATION_MISSING)
                       for st_ in tr.steps)
        if not subj_hit:
            assert new.total == tr.total


def _all_traces_for(word, lex, table):
    for a in analyze(word, table, lex):
        for d in lookup(lex, word, a.outer.cat):
            yield a, d, score_analysis(a, d, lex)
