"""The parse-state engine agrees with independent recognisers on every short sentence."""

import itertools

import pytest

from incremental_grammar import automaton, oracle, weighted
from incremental_grammar.grammar import enumerate_parsings
from incremental_grammar.signature import PregroupType
from tests.grammar_cases import bundled

MAX_LEN = 5
RUN_LEN = 3


def _sentences(vocabulary, max_len):
    for length in range(max_len + 1):
        yield from itertools.product(vocabulary, repeat=length)


@pytest.mark.parametrize("name", ["complex_houses", "alice_loves_bob", "fishing"])
def test_run_enumeration_and_oracle_agree(name):
    wg = bundled(name)
    # frontiers by prefix; sentences come shortest first
    frontiers = {(): {automaton.initial_state(wg): wg.semiring.one()}}
    accepted = 0
    for sentence in _sentences(wg.vocabulary, MAX_LEN):
        text = " ".join(sentence)
        if sentence:
            frontiers[sentence] = automaton.step_frontier(wg, frontiers[sentence[:-1]], sentence[-1])
        frontier = frontiers[sentence]
        parsings = enumerate_parsings(wg.grammar, sentence)
        expected = oracle.recognises(wg.grammar.spec, sentence)
        assert bool(parsings) == expected, text
        accepted += expected

        accepting = sorted((s for s in frontier if wg.grammar.is_parsing(s)), key=lambda s: s.sort_key())
        assert [p.canonical() for p in accepting] == [p.canonical() for p in parsings], text
        acceptance = wg.semiring.sum(weighted.output_weight(wg, s) for s in frontier)
        oracle_sum = wg.semiring.sum(weighted.arrow_weight(wg, p) for p in parsings)
        assert acceptance.value == pytest.approx(oracle_sum.value, rel=1e-9), text
        assert automaton.word_weight(wg, sentence) == oracle_sum
        if len(sentence) <= RUN_LEN:
            trace = automaton.run(wg, sentence)
            assert trace.final_frontier == frontier, text
            assert trace.parsings(wg) == accepting, text
            assert trace.acceptance is not None
            assert trace.acceptance.value == pytest.approx(acceptance.value, rel=1e-12), text
    assert accepted > 0


@pytest.mark.parametrize("name", ["complex_houses", "alice_loves_bob"])
def test_word_by_word_states_match_a_closure_of_the_bare_sentence(name):
    wg = bundled(name)
    grammar = wg.grammar
    for sentence in _sentences(wg.vocabulary, 3):
        bare = grammar.closure([grammar.bare_state(sentence)], 40)
        assert grammar.reachable_states(sentence) == frozenset(bare), " ".join(sentence)


def test_reduces_to():
    n, s = PregroupType("n"), PregroupType("s")
    assert oracle.reduces_to((n, n.right(), s), s)
    assert oracle.reduces_to((n, n.right(), s, n.left(), n), s)
    assert not oracle.reduces_to((n.right(), n, s), s)
    assert not oracle.reduces_to((n, s), s)
    assert oracle.reduces_to((s,), s)
    assert not oracle.reduces_to((), s)


def test_recognisers_check_the_grammar_mode():
    with pytest.raises(ValueError):
        oracle.cfg_recognises(bundled("alice_loves_bob").grammar.spec, ["Alice"])
    with pytest.raises(ValueError):
        oracle.pregroup_recognises(bundled("fishing").grammar.spec, ["fish"])


def test_known_sentences():
    fishing = bundled("fishing").grammar.spec
    assert oracle.recognises(fishing, ["people", "fish"])
    assert oracle.recognises(fishing, ["people", "fish", "fish", "with", "people"])
    assert not oracle.recognises(fishing, ["with", "fish"])
