# SPDX-FileCopyrightText: © 2025 Big Ladder Software <info@bigladdersoftware.com>
# SPDX-License-Identifier: BSD-3-Clause

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from . import core
from .core import GrammarValidationError
from .grammar import DEFAULT_ADJOINT_BOUND, GrammarMode, GrammarSpec, MonoidalGrammar, load_grammar
from .morphism import GrammarMorphism
from .parse_state import ParseState
from .semiring import Semiring, SemiringName, SemiringValue, get_semiring
from .signature import GeneratorKind, cup_name

logger = logging.getLogger("incgram")


@dataclass(frozen=True)
class WeightMap:
    """r: one semiring weight per generator name. Identity arrows weigh one() implicitly."""

    semiring: str
    weights: dict[str, SemiringValue] = field(default_factory=dict)

    def __post_init__(self):
        get_semiring(self.semiring)._check(*self.weights.values())

    @property
    def instance(self) -> Semiring:
        return get_semiring(self.semiring)

    def __getitem__(self, name: str) -> SemiringValue:
        return self.weights[name]

    def to_json(self) -> dict[str, Any]:
        return {name: self.instance.to_json(value) for name, value in self.weights.items()}

    def updated(self, data: Mapping[str, Any]) -> "WeightMap":
        """Overlay weights read from JSON; names outside the map are rejected."""
        unknown = [name for name in data if name not in self.weights]
        if unknown:
            raise GrammarValidationError(f"Weights given for unknown generators: {unknown}")
        weights = dict(self.weights)
        for name, carrier in data.items():
            if not isinstance(carrier, (bool, int, float)):
                raise TypeError(
                    f"Type mismatch in weight {name}\n... expected type: number or bool\n... actual value : {carrier!r}"
                )
            weights[name] = self.instance.parse(str(carrier).lower())
        return WeightMap(self.semiring, weights)


@dataclass(frozen=True)
class WeightedGrammar:
    grammar: MonoidalGrammar
    weight_map: WeightMap

    def __post_init__(self):
        names = self.grammar.signature.names()
        missing = [name for name in names if name not in self.weight_map.weights]
        if missing:
            raise GrammarValidationError(f"No weight for generators {missing}")
        extra = [name for name in self.weight_map.weights if name not in names]
        if extra:
            raise GrammarValidationError(f"Weights for generators outside the grammar: {extra}")

    @property
    def semiring(self) -> Semiring:
        return self.weight_map.instance

    @property
    def vocabulary(self) -> tuple[str, ...]:
        return self.grammar.vocabulary

    def weight(self, name: str) -> SemiringValue:
        return self.weight_map[name]


def weight_map_from_spec(grammar: MonoidalGrammar, semiring: str = "") -> WeightMap:
    """Weights from the grammar file annotations; unannotated generators and cups weigh one()."""
    instance = get_semiring(semiring or grammar.spec.semiring)
    annotations: dict[str, str | None] = {}
    for rule in grammar.spec.rules:
        annotations[rule.name] = rule.weight
    for entry in grammar.spec.lexicon:
        annotations[entry.name] = entry.weight
    for left, weight in grammar.spec.cup_weights:
        annotations[cup_name(left)] = weight
    weights = {}
    for g in grammar.signature.generators:
        text = annotations.get(g.name)
        weights[g.name] = instance.one() if text is None else instance.parse(text)
    return WeightMap(instance.name.value, weights)


def weighted_grammar(
    spec: GrammarSpec, semiring: str = "", weights: Mapping[str, Any] | None = None
) -> WeightedGrammar:
    grammar = MonoidalGrammar.from_spec(spec)
    weight_map = weight_map_from_spec(grammar, semiring)
    if weights:
        weight_map = weight_map.updated(weights)
    return WeightedGrammar(grammar, weight_map)


def load_weighted_grammar(
    grammar_file: Path,
    semiring: str = "",
    adjoint_bound: int = DEFAULT_ADJOINT_BOUND,
    weights_file: Path | None = None,
) -> WeightedGrammar:
    """Read a grammar file, optionally overriding its semiring and overlaying a weights JSON file."""
    spec = load_grammar(core.read_text(grammar_file), adjoint_bound)
    weights = None
    if weights_file is not None:
        weights = core.read_json(weights_file)
        if not isinstance(weights, dict):
            raise TypeError(f"{weights_file} must hold a JSON object of generator name to weight")
    wg = weighted_grammar(spec, semiring, weights)
    logger.debug(f"{grammar_file.name}: {len(wg.weight_map.weights)} generators weighted in {wg.semiring.name.value}")
    return wg


def constant_weights(grammar: MonoidalGrammar, semiring: str = SemiringName.bool.value) -> WeightMap:
    """Every generator weighs one(): with Booleans this recovers the unweighted grammar."""
    instance = get_semiring(semiring)
    return WeightMap(instance.name.value, {name: instance.one() for name in grammar.signature.names()})


def collapse_to_boolean(wg: WeightedGrammar) -> WeightedGrammar:
    """Keep only the support of each weight."""
    boolean = get_semiring(SemiringName.bool)
    weights = {
        name: boolean.value(not wg.semiring.is_zero(value)) for name, value in wg.weight_map.weights.items()
    }
    return WeightedGrammar(wg.grammar, WeightMap(boolean.name.value, weights))


def arrow_weight(wg: WeightedGrammar, state: ParseState) -> SemiringValue:
    """Product of r(g) over every generator occurrence in the state."""
    return wg.semiring.product(wg.weight(name) for name in state.generator_occurrences())


def output_weight(wg: WeightedGrammar, state: ParseState) -> SemiringValue:
    if wg.grammar.is_parsing(state):
        return arrow_weight(wg, state)
    return wg.semiring.zero()


def check_weight_preserving(
    m: GrammarMorphism, src: WeightedGrammar, dst: WeightedGrammar, tolerance: float = 0.0
) -> bool:
    for g in m.source.signature.generators:
        image = m.map_generator(g)
        if not src.semiring.approx_eq(src.weight(g.name), dst.weight(image.name), tolerance):
            logger.debug(f"Weight of '{g.name}' differs from the weight of its image '{image.name}'")
            return False
    return True


def format_grammar(wg: WeightedGrammar) -> str:
    """Grammar-file text for a weighted grammar, every weight written out."""
    spec = wg.grammar.spec
    semiring = wg.semiring

    def weight_of(name: str) -> str:
        return semiring.format(wg.weight(name))

    context = {
        "mode": spec.mode.value,
        "semiring": semiring.name.value,
        "start": spec.start,
        "vocabulary": " ".join(spec.vocabulary),
        "nonterminals": " ".join(spec.nonterminals),
        "basic_types": " ".join(spec.basic_types),
        "rules": [{"name": rule.name, "weight": weight_of(rule.name)} for rule in spec.rules],
        "lexicon": [{"name": entry.name, "weight": weight_of(entry.name)} for entry in spec.lexicon],
        "cups": [
            {"type": str(g.dom[0]), "weight": weight_of(g.name)}
            for g in wg.grammar.signature.generators
            if g.kind == GeneratorKind.cup and wg.weight(g.name) != semiring.one()
        ],
        "is_cfg": spec.mode == GrammarMode.cfg,
    }
    return core.render("grammar.j2", context)
