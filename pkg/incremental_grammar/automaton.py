# SPDX-FileCopyrightText: © 2025 Big Ladder Software <info@bigladdersoftware.com>
# SPDX-License-Identifier: BSD-3-Clause

"""The incremental automaton of a weighted grammar.

States are parse states. Reading a word appends it to the state and then closes under
generator applications; each successor carries the weight of the generators applied after
the append. Outputs are arrow weights of parsings and zero elsewhere.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from . import core
from .core import BoundExceededError, SemiringMismatchError, VocabularyMismatchError
from .grammar import default_depth_bound, enumerate_parsings
from .morphism import GrammarMorphism, apply_morphism
from .parse_state import ParseState
from .semiring import SemiringName, SemiringValue, get_semiring
from .signature import format_objects
from .weighted import WeightedGrammar, arrow_weight, output_weight

logger = logging.getLogger("incgram")

DEFAULT_STATE_CAP = 1_000_000


def _sorted_items(weights: dict[ParseState, SemiringValue]) -> list[tuple[ParseState, SemiringValue]]:
    return sorted(weights.items(), key=lambda item: item[0].sort_key())


@dataclass(frozen=True)
class StepDistribution:
    """Successors of one state on one word. States left out weigh zero."""

    source: ParseState
    word: str
    successors: dict[ParseState, SemiringValue]

    def items(self) -> list[tuple[ParseState, SemiringValue]]:
        return _sorted_items(self.successors)

    def to_json(self) -> dict[str, Any]:
        return {
            "source": self.source.canonical(),
            "word": self.word,
            "successors": [{"state": s.canonical(), "weight": str(w)} for s, w in self.items()],
        }


def initial_state(wg: WeightedGrammar) -> ParseState:
    return wg.grammar.initial_state()


def _closure_bound(prefix_length: int, depth_bound: int | None) -> int:
    return default_depth_bound(prefix_length) if depth_bound is None else depth_bound


def step(wg: WeightedGrammar, state: ParseState, word: str, depth_bound: int | None = None) -> StepDistribution:
    """Append the word, then weigh every state in the closure by the generators applied after it."""
    appended = wg.grammar.append_word(state, word)
    paths = wg.grammar.closure([appended], _closure_bound(len(appended.prefix), depth_bound))
    successors = {}
    for successor, path in paths.items():
        weight = wg.semiring.product(wg.weight(name) for name in path)
        if not wg.semiring.is_zero(weight):
            successors[successor] = weight
    return StepDistribution(state, word, successors)


def step_frontier(
    wg: WeightedGrammar, frontier: Iterable[ParseState], word: str, depth_bound: int | None = None
) -> dict[ParseState, SemiringValue]:
    """Read one word from every frontier state at once, closing the appended states together.

    The result equals the union of the per-state steps; each state carries its arrow weight.
    """
    seeds = [wg.grammar.append_word(state, word) for state in frontier]
    if not seeds:
        return {}
    paths = wg.grammar.closure(seeds, _closure_bound(len(seeds[0].prefix), depth_bound))
    result = {}
    for state in paths:
        weight = arrow_weight(wg, state)
        if not wg.semiring.is_zero(weight):
            result[state] = weight
    return result


@dataclass
class RunTrace:
    sentence: tuple[str, ...]
    semiring: str
    frontiers: list[dict[ParseState, SemiringValue]] = field(default_factory=list)
    steps: list[list[StepDistribution]] = field(default_factory=list)
    acceptance: SemiringValue | None = None

    @property
    def final_frontier(self) -> dict[ParseState, SemiringValue]:
        return self.frontiers[-1]

    def parsings(self, wg: WeightedGrammar) -> list[ParseState]:
        return sorted((s for s in self.final_frontier if wg.grammar.is_parsing(s)), key=ParseState.sort_key)

    def to_json(self) -> dict[str, Any]:
        words = ("",) + self.sentence
        return {
            "sentence": list(self.sentence),
            "semiring": self.semiring,
            "frontiers": [
                {
                    "word": word,
                    "states": [{"state": s.canonical(), "weight": str(w)} for s, w in _sorted_items(frontier)],
                }
                for word, frontier in zip(words, self.frontiers)
            ],
            "acceptance": str(self.acceptance),
        }


def run(
    wg: WeightedGrammar, sentence: Sequence[str], depth_bound: int | None = None, record_steps: bool = False
) -> RunTrace:
    """Feed the sentence word by word from the initial state.

    Acceptance is the semiring sum of output weights over the final frontier.
    """
    for word in sentence:
        wg.grammar.check_word(word)
    start = initial_state(wg)
    trace = RunTrace(tuple(sentence), wg.semiring.name.value, [{start: wg.semiring.one()}])
    for word in sentence:
        frontier = trace.final_frontier
        if record_steps:
            trace.steps.append(
                [step(wg, state, word, depth_bound) for state in sorted(frontier, key=ParseState.sort_key)]
            )
        trace.frontiers.append(step_frontier(wg, frontier, word, depth_bound))
        logger.debug(f"'{word}': frontier of {len(trace.final_frontier)} states")
    trace.acceptance = wg.semiring.sum(output_weight(wg, state) for state in trace.final_frontier)
    return trace


def word_weight(wg: WeightedGrammar, sentence: Sequence[str], depth_bound: int | None = None) -> SemiringValue:
    """Sum of arrow weights over every parsing of the sentence."""
    return wg.semiring.sum(arrow_weight(wg, p) for p in enumerate_parsings(wg.grammar, sentence, depth_bound))


@dataclass
class TruncatedAutomaton:
    """The automaton explored breadth-first to a fixed number of words.

    States are numbered in discovery order, so index 0 is the initial state. Only states
    with fewer than `word_depth` words have transitions recorded.
    """

    semiring: str
    vocabulary: tuple[str, ...]
    word_depth: int
    states: list[ParseState] = field(default_factory=list)
    outputs: list[SemiringValue] = field(default_factory=list)
    transitions: dict[tuple[int, str], dict[int, SemiringValue]] = field(default_factory=dict)
    index: dict[ParseState, int] = field(default_factory=dict)

    def add_state(self, state: ParseState, output: SemiringValue) -> int:
        if state not in self.index:
            self.index[state] = len(self.states)
            self.states.append(state)
            self.outputs.append(output)
        return self.index[state]

    def depth(self, state_index: int) -> int:
        return len(self.states[state_index].prefix)

    def is_boundary(self, state_index: int) -> bool:
        return self.depth(state_index) == self.word_depth

    def to_boolean(self) -> "TruncatedAutomaton":
        """Same states, with every weight replaced by whether it is nonzero."""
        source = get_semiring(self.semiring)
        boolean = get_semiring(SemiringName.bool)

        def support(value: SemiringValue) -> SemiringValue:
            return boolean.value(not source.is_zero(value))

        result = TruncatedAutomaton(boolean.name.value, self.vocabulary, self.word_depth)
        result.states = list(self.states)
        result.index = dict(self.index)
        result.outputs = [support(value) for value in self.outputs]
        result.transitions = {
            key: {target: support(weight) for target, weight in successors.items() if not source.is_zero(weight)}
            for key, successors in self.transitions.items()
        }
        return result

    def to_dot(self, name: str = "automaton") -> str:
        states = [
            {"id": i, "label": format_objects(state.codomain), "output": str(output)}
            for i, (state, output) in enumerate(zip(self.states, self.outputs))
        ]
        edges = [
            {"source": source, "target": target, "label": f"{word} / {weight}"}
            for (source, word), successors in sorted(self.transitions.items())
            for target, weight in sorted(successors.items())
        ]
        return core.render("automaton.dot.j2", {"name": name, "states": states, "edges": edges})


def truncate(
    wg: WeightedGrammar,
    word_depth: int,
    depth_bound: int | None = None,
    state_cap: int = DEFAULT_STATE_CAP,
) -> TruncatedAutomaton:
    """Explore every sentence of at most word_depth words.

    Raises:
        BoundExceededError: more than state_cap states, or a closure outgrew its depth bound
    """
    if word_depth < 0:
        raise ValueError(f"word_depth must be non-negative, got {word_depth}")
    automaton = TruncatedAutomaton(wg.semiring.name.value, wg.vocabulary, word_depth)
    start = initial_state(wg)
    automaton.add_state(start, output_weight(wg, start))
    layer = [0]
    for _ in range(word_depth):
        next_layer = []
        for source in layer:
            for word in wg.vocabulary:
                distribution = step(wg, automaton.states[source], word, depth_bound)
                successors = {}
                for state, weight in distribution.items():
                    known = state in automaton.index
                    target = automaton.add_state(state, output_weight(wg, state))
                    if not known:
                        next_layer.append(target)
                    successors[target] = weight
                if len(automaton.states) > state_cap:
                    raise BoundExceededError(f"Truncation exceeded the cap of {state_cap} states")
                automaton.transitions[(source, word)] = successors
        layer = next_layer
    logger.debug(f"Truncated automaton at depth {word_depth}: {len(automaton.states)} states")
    return automaton


@dataclass(frozen=True)
class HomCheck:
    """Outcome of a coalgebra homomorphism check, with the first violation when it fails."""

    holds: bool
    state: ParseState | None = None
    word: str | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.holds


def check_coalgebra_hom(  # noqa: PLR0913, PLR0917
    m: GrammarMorphism,
    src: WeightedGrammar,
    dst: WeightedGrammar,
    word_depth: int,
    depth_bound: int | None = None,
    tolerance: float = 0.0,
    state_cap: int = DEFAULT_STATE_CAP,
) -> HomCheck:
    """Check that relabeling along the morphism commutes with outputs and with every transition.

    Source transitions are pushed forward along the morphism, adding the weights of merged states.
    """
    if src.semiring.name != dst.semiring.name:
        raise SemiringMismatchError(
            f"Cannot compare a {src.semiring.name.value} grammar with a {dst.semiring.name.value} grammar"
        )
    semiring = src.semiring
    automaton = truncate(src, word_depth, depth_bound, state_cap)
    for index, state in enumerate(automaton.states):
        image = apply_morphism(m, state)
        target_output = output_weight(dst, image)
        if not semiring.approx_eq(automaton.outputs[index], target_output, tolerance):
            reason = f"output {automaton.outputs[index]} maps to {target_output}"
            return HomCheck(False, state, None, reason)
        if automaton.is_boundary(index):
            continue
        for word in automaton.vocabulary:
            pushed: dict[ParseState, SemiringValue] = {}
            for target, weight in automaton.transitions[(index, word)].items():
                mapped = apply_morphism(m, automaton.states[target])
                pushed[mapped] = semiring.add(pushed.get(mapped, semiring.zero()), weight)
            expected = step(dst, image, word, depth_bound).successors
            for successor in sorted(set(pushed) | set(expected), key=ParseState.sort_key):
                left = pushed.get(successor, semiring.zero())
                right = expected.get(successor, semiring.zero())
                if not semiring.approx_eq(left, right, tolerance):
                    reason = f"successor '{successor.canonical()}' weighs {left} pushed forward, {right} in the target"
                    return HomCheck(False, state, word, reason)
    return HomCheck(True)


def boolean_bisimilar(first: TruncatedAutomaton, second: TruncatedAutomaton) -> bool:
    """Partition refinement on the disjoint union; true when the initial states end in one block."""
    if set(first.vocabulary) != set(second.vocabulary):
        raise VocabularyMismatchError(
            f"Vocabularies differ: {sorted(set(first.vocabulary) ^ set(second.vocabulary))}"
        )
    for automaton in (first, second):
        if automaton.semiring != SemiringName.bool.value:
            raise SemiringMismatchError(f"Bisimulation needs Boolean automata, got {automaton.semiring}")
    if first.word_depth != second.word_depth:
        raise ValueError(f"Truncation depths differ: {first.word_depth} and {second.word_depth}")

    words = sorted(first.vocabulary)
    offset = len(first.states)
    nodes = [(first, i) for i in range(len(first.states))] + [(second, i) for i in range(len(second.states))]

    def successors(node: int, word: str) -> list[int]:
        automaton, i = nodes[node]
        shift = 0 if automaton is first else offset
        return [target + shift for target, weight in automaton.transitions.get((i, word), {}).items() if weight.value]

    # Blocks start from (output, boundary) and split on the blocks reachable by each word.
    blocks = {}
    for node, (automaton, i) in enumerate(nodes):
        blocks[node] = (bool(automaton.outputs[i].value), automaton.is_boundary(i))
    numbered = _number(blocks)
    while True:
        signatures = {
            node: (numbered[node],) + tuple(frozenset(numbered[t] for t in successors(node, w)) for w in words)
            for node in numbered
        }
        refined = _number(signatures)
        if len(set(refined.values())) == len(set(numbered.values())):
            break
        numbered = refined
    return numbered[0] == numbered[offset]


def _number(signatures: dict[int, Any]) -> dict[int, int]:
    """Replace each signature by a small integer, numbering in node order."""
    numbers: dict[Any, int] = {}
    for node in sorted(signatures):
        numbers.setdefault(signatures[node], len(numbers))
    return {node: numbers[signatures[node]] for node in signatures}


@dataclass(frozen=True)
class EquivalenceResult:
    equivalent: bool
    counterexample: tuple[str, ...] | None = None
    first_weight: SemiringValue | None = None
    second_weight: SemiringValue | None = None

    def __bool__(self) -> bool:
        return self.equivalent


def language_equiv(
    first: WeightedGrammar,
    second: WeightedGrammar,
    max_len: int,
    tolerance: float = 0.0,
    depth_bound: int | None = None,
) -> EquivalenceResult:
    """Compare word weights on every sentence up to max_len words; reports the first difference."""
    if set(first.vocabulary) != set(second.vocabulary):
        raise VocabularyMismatchError(
            f"Vocabularies differ: {sorted(set(first.vocabulary) ^ set(second.vocabulary))}"
        )
    if first.semiring.name != second.semiring.name:
        raise SemiringMismatchError(
            f"Cannot compare a {first.semiring.name.value} grammar with a {second.semiring.name.value} grammar"
        )
    for length in range(max_len + 1):
        for sentence in itertools.product(first.vocabulary, repeat=length):
            a = word_weight(first, sentence, depth_bound)
            b = word_weight(second, sentence, depth_bound)
            if not first.semiring.approx_eq(a, b, tolerance):
                return EquivalenceResult(False, sentence, a, b)
    return EquivalenceResult(True)
