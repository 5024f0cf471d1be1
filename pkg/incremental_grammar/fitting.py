# SPDX-FileCopyrightText: © 2025 Big Ladder Software <info@bigladdersoftware.com>
# SPDX-License-Identifier: BSD-3-Clause

"""Maximal parse states under a finite language model, and log-linear weight fitting.

A language model is stored as one finite joint distribution over (sentence, parsing) pairs;
the completion and parsing conditionals are both derived from it.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from . import core
from .core import ComplianceError, FittingError, ZeroMassError
from .grammar import MonoidalGrammar, enumerate_parsings
from .parse_state import DerivationForest, LinkDiagram, ParseState
from .semiring import SemiringName, get_semiring
from .weighted import WeightedGrammar, WeightMap, arrow_weight

logger = logging.getLogger("incgram")

PROBABILITY_TOLERANCE = 1e-9


@dataclass(frozen=True)
class CorpusEntry:
    sentence: tuple[str, ...]
    parsing: ParseState
    prob: float


@dataclass(frozen=True)
class CorpusModel:
    grammar: MonoidalGrammar
    entries: tuple[CorpusEntry, ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("A corpus needs at least one entry")
        for index, entry in enumerate(self.entries):
            if entry.parsing.prefix != entry.sentence:
                raise ValueError(f"Corpus entry {index}: parsing covers '{' '.join(entry.parsing.prefix)}'")
            if not self.grammar.is_parsing(entry.parsing):
                raise ValueError(f"Corpus entry {index}: '{entry.parsing.canonical()}' is not a parsing")
            if not 0.0 <= entry.prob <= 1.0:
                raise ValueError(f"Corpus entry {index}: probability {entry.prob} is outside [0, 1]")
        total = math.fsum(entry.prob for entry in self.entries)
        if abs(total - 1.0) > PROBABILITY_TOLERANCE:
            raise ValueError(f"Corpus probabilities sum to {total}, not 1")

    def prefix_mass(self, prefix: Sequence[str]) -> float:
        prefix = tuple(prefix)
        return math.fsum(e.prob for e in self.entries if e.sentence[: len(prefix)] == prefix)

    def to_json(self) -> list[dict[str, Any]]:
        return [
            {"sentence": list(e.sentence), "parsing": e.parsing.canonical(), "prob": e.prob} for e in self.entries
        ]


def corpus_from_json(data: Any, grammar: MonoidalGrammar) -> CorpusModel:
    if not isinstance(data, list):
        raise TypeError("A corpus must be a JSON list of {sentence, parsing, prob} objects")
    entries = []
    for index, item in enumerate(data):
        try:
            raw = item["sentence"]
            sentence = tuple(raw.split() if isinstance(raw, str) else raw)
            parsing = grammar.parse_state(item["parsing"])
            prob = float(item["prob"])
        except (KeyError, TypeError, ValueError) as err:
            raise ValueError(f"Corpus entry {index}: {err}") from None
        entries.append(CorpusEntry(sentence, parsing, prob))
    return CorpusModel(grammar, tuple(entries))


def load_corpus(path: Path, grammar: MonoidalGrammar) -> CorpusModel:
    return corpus_from_json(core.read_json(path), grammar)


def conditional_completion(model: CorpusModel, prefix: Sequence[str]) -> dict[tuple[str, ...], float]:
    """Distribution over the rest of the sentence given its first words."""
    prefix = tuple(prefix)
    mass = model.prefix_mass(prefix)
    if mass <= 0.0:
        raise ZeroMassError(f"No corpus mass on prefix '{' '.join(prefix)}'")
    completions: dict[tuple[str, ...], float] = {}
    for entry in model.entries:
        if entry.sentence[: len(prefix)] == prefix:
            rest = entry.sentence[len(prefix) :]
            completions[rest] = completions.get(rest, 0.0) + entry.prob
    return {rest: completions[rest] / mass for rest in sorted(completions)}


def conditional_parsing(model: CorpusModel, sentence: Sequence[str]) -> dict[ParseState, float]:
    sentence = tuple(sentence)
    matching = [entry for entry in model.entries if entry.sentence == sentence]
    mass = math.fsum(entry.prob for entry in matching)
    if mass <= 0.0:
        raise ZeroMassError(f"No corpus mass on sentence '{' '.join(sentence)}'")
    result: dict[ParseState, float] = {}
    for entry in sorted(matching, key=lambda e: e.parsing.sort_key()):
        result[entry.parsing] = result.get(entry.parsing, 0.0) + entry.prob / mass
    return result


def is_compliant(parsing: ParseState, state: ParseState) -> bool:
    """True when the parsing factors through the state tensored with something on the remaining words."""
    if parsing.prefix[: len(state.prefix)] != state.prefix:
        raise ComplianceError(f"'{' '.join(state.prefix)}' is not a prefix of '{' '.join(parsing.prefix)}'")
    if isinstance(state, DerivationForest) and isinstance(parsing, DerivationForest):
        subtrees = set(parsing.spans())
        return all(root in subtrees for root in state.roots())
    if isinstance(state, LinkDiagram) and isinstance(parsing, LinkDiagram):
        for own, full in zip(state.lexical, parsing.lexical):
            if own is not None and own != full:
                return False
        own_offsets = state.group_offsets()
        full_offsets = parsing.group_offsets()

        def wire_in_parsing(wire: int) -> int:
            word = max(i for i, offset in enumerate(own_offsets) if offset <= wire)
            return full_offsets[word] + wire - own_offsets[word]

        full_links = set(parsing.links)
        return all((wire_in_parsing(left), wire_in_parsing(right)) in full_links for left, right in state.links)
    raise TypeError("Parsing and state come from different kinds of grammar")


def is_maximal(grammar: MonoidalGrammar, parsing: ParseState, state: ParseState) -> bool:
    """True when no single generator application keeps the state compliant with the parsing."""
    if not is_compliant(parsing, state):
        raise ComplianceError(f"'{state.canonical()}' is not compliant with '{parsing.canonical()}'")
    return not any(
        is_compliant(parsing, grammar.apply_generator(state, g, position))
        for g, position in grammar.applicable_generators(state)
    )


def maximal_states(grammar: MonoidalGrammar, parsing: ParseState, prefix_length: int) -> list[ParseState]:
    """Every maximal state on the parsing's first prefix_length words, searching compliant states only."""
    if not 0 <= prefix_length <= len(parsing.prefix):
        raise ComplianceError(f"Prefix length {prefix_length} is outside the parsing's sentence")
    start = grammar.bare_state(parsing.prefix[:prefix_length])
    seen = {start}
    pending = [start]
    result = []
    while pending:
        state = pending.pop()
        grown = False
        for g, position in grammar.applicable_generators(state):
            successor = grammar.apply_generator(state, g, position)
            if not is_compliant(parsing, successor):
                continue
            grown = True
            if successor not in seen:
                seen.add(successor)
                pending.append(successor)
        if not grown:
            result.append(state)
    return sorted(result, key=ParseState.sort_key)


def maximal_likelihood(model: CorpusModel, state: ParseState) -> float:
    """pr_M: corpus mass of the parsings for which the state is maximal, normalized by prefix mass."""
    mass = model.prefix_mass(state.prefix)
    if mass <= 0.0:
        raise ZeroMassError(f"No corpus mass on prefix '{' '.join(state.prefix)}'")
    width = len(state.prefix)
    captured = math.fsum(
        entry.prob
        for entry in model.entries
        if entry.sentence[:width] == state.prefix
        and is_compliant(entry.parsing, state)
        and is_maximal(model.grammar, entry.parsing, state)
    )
    return captured / mass


@dataclass(frozen=True)
class CoherenceReport:
    total: float
    states: dict[ParseState, float]
    multiplicities: list[tuple[int, int]] = field(default_factory=list)

    @property
    def unique(self) -> bool:
        return not self.multiplicities


def prefix_coherence(model: CorpusModel, prefix: Sequence[str]) -> CoherenceReport:
    """Sum pr_M over the maximal states of a prefix; entries with several maximal states are listed."""
    prefix = tuple(prefix)
    states: dict[ParseState, float] = {}
    multiplicities = []
    for index, entry in enumerate(model.entries):
        if entry.sentence[: len(prefix)] != prefix:
            continue
        found = maximal_states(model.grammar, entry.parsing, len(prefix))
        if len(found) != 1:
            multiplicities.append((index, len(found)))
        for state in found:
            if state not in states:
                states[state] = maximal_likelihood(model, state)
    if multiplicities:
        logger.warning(f"Prefix '{' '.join(prefix)}': {len(multiplicities)} parsings have several maximal states")
    return CoherenceReport(math.fsum(states.values()), states, multiplicities)


@dataclass(frozen=True)
class FeatureBag:
    """B_p: how many times each generator occurs in a parse state."""

    counts: Counter

    def __getitem__(self, name: str) -> int:
        return self.counts.get(name, 0)


def generator_bag(state: ParseState) -> FeatureBag:
    return FeatureBag(Counter(state.generator_occurrences()))


class FitMethod(str, Enum):
    normal_equations = "normal_equations"
    gradient_descent = "gradient_descent"


@dataclass
class FitParams:
    learning_rate: float | None = None  # None selects 1 / largest eigenvalue of AᵀA
    max_iterations: int = 200_000
    tolerance: float = 1e-12


@dataclass
class LinearSolution:
    coefficients: np.ndarray
    residual: float
    rank_deficient: bool
    iterations: int = 0


@dataclass
class DesignMatrix:
    columns: list[str]
    rows: list[ParseState]
    matrix: np.ndarray
    targets: np.ndarray
    dropped: int = 0


def design_matrix(model: CorpusModel, states: Iterable[ParseState]) -> DesignMatrix:
    """Rows of generator counts against log pr_M; states with pr_M = 0 are dropped."""
    rows: list[ParseState] = []
    targets = []
    bags = []
    dropped = 0
    for state in sorted(set(states), key=ParseState.sort_key):
        likelihood = maximal_likelihood(model, state)
        if likelihood <= 0.0:
            dropped += 1
            continue
        rows.append(state)
        targets.append(math.log(likelihood))
        bags.append(generator_bag(state))
    used = {name for bag in bags for name in bag.counts}
    columns = [name for name in model.grammar.signature.names() if name in used]
    matrix = np.zeros((len(rows), len(columns)), dtype=np.float64)
    for i, bag in enumerate(bags):
        matrix[i] = [bag[name] for name in columns]
    return DesignMatrix(columns, rows, matrix, np.asarray(targets, dtype=np.float64), dropped)


def solve_log_linear(
    matrix: np.ndarray,
    targets: np.ndarray,
    method: FitMethod = FitMethod.normal_equations,
    params: FitParams | None = None,
) -> LinearSolution:
    """Least squares for matrix @ x ≈ targets.

    Normal equations are used directly when the matrix has full column rank; otherwise the
    minimum-norm solution is returned and flagged. Gradient descent starts from zero, so it
    also approaches the minimum-norm solution.
    """
    params = params or FitParams()
    columns = matrix.shape[1]
    rank_deficient = bool(np.linalg.matrix_rank(matrix) < columns) if columns else False
    iterations = 0
    if method == FitMethod.normal_equations:
        if rank_deficient:
            logger.warning("Design matrix is rank deficient; returning the minimum-norm solution")
            coefficients, *_ = np.linalg.lstsq(matrix, targets, rcond=None)
        else:
            coefficients = np.linalg.solve(matrix.T @ matrix, matrix.T @ targets)
    else:
        gram = matrix.T @ matrix
        rate = params.learning_rate
        if rate is None:
            largest = float(np.linalg.eigvalsh(gram).max()) if columns else 0.0
            rate = 1.0 / largest if largest > 0 else 1.0
        coefficients = np.zeros(columns)
        projected = matrix.T @ targets
        for iterations in range(1, params.max_iterations + 1):
            update = rate * (gram @ coefficients - projected)
            coefficients = coefficients - update
            if float(np.linalg.norm(update)) <= params.tolerance:
                break
        else:
            logger.warning(f"Gradient descent stopped after {params.max_iterations} iterations")
        if rank_deficient:
            logger.warning("Design matrix is rank deficient; gradient descent approaches the minimum-norm solution")
    residual = float(np.linalg.norm(matrix @ coefficients - targets))
    return LinearSolution(np.asarray(coefficients, dtype=np.float64), residual, rank_deficient, iterations)


@dataclass
class FitResult:
    weight_map: WeightMap
    residual: float
    rows_used: int
    rank_deficient: bool
    method: FitMethod
    log_weights: dict[str, float] = field(default_factory=dict)
    iterations: int = 0
    rows_dropped: int = 0

    def to_json(self) -> dict[str, Any]:
        return self.weight_map.to_json()


def default_fit_states(model: CorpusModel) -> list[ParseState]:
    """Maximal states of every nonempty prefix of every support sentence."""
    states: set[ParseState] = set()
    for entry in model.entries:
        for length in range(1, len(entry.sentence) + 1):
            states.update(maximal_states(model.grammar, entry.parsing, length))
    return sorted(states, key=ParseState.sort_key)


def fit_weights(
    model: CorpusModel,
    states: Iterable[ParseState] | None = None,
    method: FitMethod = FitMethod.normal_equations,
    params: FitParams | None = None,
) -> FitResult:
    """Fit real generator weights r(g) so that Σ B_p(g) log r(g) approximates log pr_M(p).

    Generators that occur in no usable row keep weight 1.

    Raises:
        FittingError: every state has pr_M = 0
    """
    design = design_matrix(model, default_fit_states(model) if states is None else states)
    if not design.rows:
        raise FittingError("No state has positive maximal likelihood; nothing to fit")
    solution = solve_log_linear(design.matrix, design.targets, method, params)
    log_weights = dict(zip(design.columns, (float(x) for x in solution.coefficients)))
    real = get_semiring(SemiringName.real)
    weights = {
        name: real.value(math.exp(log_weights[name])) if name in log_weights else real.one()
        for name in model.grammar.signature.names()
    }
    logger.info(
        f"Fitted {len(design.columns)} generator weights from {len(design.rows)} states "
        f"(residual {solution.residual:.3g})"
    )
    return FitResult(
        weight_map=WeightMap(real.name.value, weights),
        residual=solution.residual,
        rows_used=len(design.rows),
        rank_deficient=solution.rank_deficient,
        method=method,
        log_weights=log_weights,
        iterations=solution.iterations,
        rows_dropped=design.dropped,
    )


def synthesize_corpus(
    wg: WeightedGrammar, sentences: Iterable[Sequence[str]], depth_bound: int | None = None
) -> CorpusModel:
    """A language model whose parsing masses are proportional to their arrow weights."""
    if not wg.semiring.commutative:
        raise FittingError(f"Arrow weights in {wg.semiring.name.value} do not factor as bags of generators")
    raw = []
    for sentence in sentences:
        for parsing in enumerate_parsings(wg.grammar, sentence, depth_bound):
            weight = arrow_weight(wg, parsing)
            raw.append((tuple(sentence), parsing, float(weight.value)))
    total = math.fsum(mass for _, _, mass in raw)
    if total <= 0.0:
        raise ZeroMassError("The sentences have no weighted parsings")
    entries = tuple(CorpusEntry(sentence, parsing, mass / total) for sentence, parsing, mass in raw if mass > 0)
    return CorpusModel(wg.grammar, entries)
