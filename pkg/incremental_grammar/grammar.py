# SPDX-FileCopyrightText: © 2025 Big Ladder Software <info@bigladdersoftware.com>
# SPDX-License-Identifier: BSD-3-Clause

import itertools
import logging
import re
from abc import ABC, abstractmethod
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from . import core
from .core import (
    BoundExceededError,
    GrammarSyntaxError,
    GrammarValidationError,
    InapplicableGeneratorError,
    UnknownWordError,
)
from .parse_state import EMPTY, DerivationForest, LinkDiagram, ParseState, Tree
from .semiring import get_semiring
from .signature import (
    Generator,
    GeneratorKind,
    MonoidalSignature,
    Object,
    PregroupType,
    cup_name,
    is_symbol,
)

logger = logging.getLogger("incgram")

DEFAULT_ADJOINT_BOUND = 2
PREFIX_CACHE_SIZE = 4096
HEADER_KEYS = {"mode", "semiring", "start", "vocabulary", "nonterminals", "types"}


class GrammarMode(str, Enum):
    cfg = "cfg"
    pregroup = "pregroup"


@dataclass(frozen=True)
class Rule:
    lhs: str
    rhs: tuple[str, ...]
    weight: str | None = None

    @property
    def name(self) -> str:
        return f"{self.lhs} -> {' '.join(self.rhs)}"


@dataclass(frozen=True)
class LexiconEntry:
    word: str
    types: tuple[PregroupType, ...]
    weight: str | None = None

    @property
    def name(self) -> str:
        return f"{self.word} : {' '.join(str(t) for t in self.types)}"


@dataclass(frozen=True)
class GrammarSpec:
    """A grammar file after validation. Symbol tuples keep their first-appearance order."""

    mode: GrammarMode
    semiring: str
    start: str
    vocabulary: tuple[str, ...]
    nonterminals: tuple[str, ...] = ()
    basic_types: tuple[str, ...] = ()
    rules: tuple[Rule, ...] = ()
    lexicon: tuple[LexiconEntry, ...] = ()
    cup_weights: tuple[tuple[PregroupType, str], ...] = ()
    adjoint_bound: int = DEFAULT_ADJOINT_BOUND


def default_depth_bound(length: int) -> int:
    return 10 * (length + 1)


def _split_weight(body: str, line_number: int) -> tuple[str, str | None]:
    if "@" not in body:
        return body.strip(), None
    text, weight = body.rsplit("@", 1)
    if not weight.strip():
        raise GrammarSyntaxError(line_number, "missing weight after '@'")
    return text.strip(), weight.strip()


def _symbols(text: str, line_number: int) -> tuple[str, ...]:
    items = tuple(text.split())
    for item in items:
        if not is_symbol(item):
            raise GrammarSyntaxError(line_number, f"'{item}' is not a valid symbol")
    return items


def _type_terms(text: str, line_number: int) -> tuple[PregroupType, ...]:
    try:
        return tuple(PregroupType.parse(term) for term in text.split())
    except ValueError as err:
        raise GrammarSyntaxError(line_number, str(err)) from None


def _first_seen(items: Iterable[str]) -> tuple[str, ...]:
    return tuple(dict.fromkeys(items))


def load_grammar(text: str, adjoint_bound: int = DEFAULT_ADJOINT_BOUND) -> GrammarSpec:  # noqa: PLR0912, PLR0915
    """Read and validate grammar-file contents.

    Args:
        text (str): the grammar file
        adjoint_bound (int): largest |adjoint order| accepted in pregroup types

    Raises:
        GrammarSyntaxError: a line could not be read (carries the line number)
        GrammarValidationError: the grammar breaks a structural invariant

    Returns:
        GrammarSpec: the validated grammar
    """
    header: dict[str, tuple[str, int]] = {}
    rules: list[tuple[Rule, int]] = []
    lexicon: list[tuple[LexiconEntry, int]] = []
    cups: list[tuple[PregroupType, str, int]] = []

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = re.match(r"^(?P<key>[a-z]+)\s*:\s*(?P<body>.*)$", line)
        if not match:
            raise GrammarSyntaxError(line_number, f"expected '<key>: <value>', got '{line}'")
        key, body = match.group("key"), match.group("body")
        if key in HEADER_KEYS:
            if key in header:
                raise GrammarSyntaxError(line_number, f"'{key}' declared twice")
            header[key] = (body.strip(), line_number)
        elif key == "rule":
            rule_text, weight = _split_weight(body, line_number)
            if "->" not in rule_text:
                raise GrammarSyntaxError(line_number, "rule needs '<nonterminal> -> <symbols>'")
            lhs_text, rhs_text = rule_text.split("->", 1)
            lhs = _symbols(lhs_text, line_number)
            if len(lhs) != 1:
                raise GrammarSyntaxError(line_number, "rule needs exactly one left-hand symbol")
            rhs = _symbols(rhs_text, line_number)
            if not rhs:
                raise GrammarValidationError(f"line {line_number}: empty right-hand sides are not supported")
            rules.append((Rule(lhs[0], rhs, weight), line_number))
        elif key == "word":
            entry_text, weight = _split_weight(body, line_number)
            if ":" not in entry_text:
                raise GrammarSyntaxError(line_number, "word needs '<word> : <type terms>'")
            word_text, type_text = entry_text.split(":", 1)
            word = _symbols(word_text, line_number)
            if len(word) != 1:
                raise GrammarSyntaxError(line_number, "word entry needs exactly one word")
            types = _type_terms(type_text, line_number)
            if not types:
                raise GrammarSyntaxError(line_number, f"word '{word[0]}' has no type")
            lexicon.append((LexiconEntry(word[0], types, weight), line_number))
        elif key == "cup":
            cup_text, weight = _split_weight(body, line_number)
            terms = _type_terms(cup_text, line_number)
            if len(terms) != 1 or weight is None:
                raise GrammarSyntaxError(line_number, "cup needs '<left type term> @ <weight>'")
            cups.append((terms[0], weight, line_number))
        else:
            raise GrammarSyntaxError(line_number, f"unknown key '{key}'")

    for required in ("mode", "start"):
        if required not in header:
            raise GrammarValidationError(f"Grammar does not declare '{required}'")
    mode_text, mode_line = header["mode"]
    try:
        mode = GrammarMode(mode_text)
    except ValueError:
        raise GrammarSyntaxError(mode_line, f"mode must be 'cfg' or 'pregroup', got '{mode_text}'") from None
    semiring_text, semiring_line = header.get("semiring", ("real", 0))
    try:
        semiring = get_semiring(semiring_text)
    except ValueError as err:
        raise GrammarSyntaxError(semiring_line, str(err)) from None
    start = header["start"][0]
    if not is_symbol(start):
        raise GrammarSyntaxError(header["start"][1], f"'{start}' is not a valid start symbol")

    for weight_owner, weight, line_number in (
        [(r.name, r.weight, n) for r, n in rules]
        + [(e.name, e.weight, n) for e, n in lexicon]
        + [(str(t), w, n) for t, w, n in cups]
    ):
        if weight is not None:
            try:
                semiring.parse(weight)
            except ValueError as err:
                raise GrammarSyntaxError(line_number, f"{weight_owner}: {err}") from None

    declared_vocabulary = _symbols(header["vocabulary"][0], header["vocabulary"][1]) if "vocabulary" in header else None

    if mode == GrammarMode.cfg:
        if lexicon or cups:
            raise GrammarValidationError("'word' and 'cup' entries belong to pregroup grammars")
        spec = _validate_cfg(header, rules, start, semiring.name.value, declared_vocabulary)
    else:
        if rules:
            raise GrammarValidationError("'rule' entries belong to context-free grammars")
        spec = _validate_pregroup(header, lexicon, cups, start, semiring.name.value, declared_vocabulary, adjoint_bound)
    logger.debug(f"Loaded {mode.value} grammar with {len(spec.vocabulary)} words")
    return spec


def _validate_cfg(
    header: dict, rules: list[tuple[Rule, int]], start: str, semiring: str, declared_vocabulary: tuple[str, ...] | None
) -> GrammarSpec:
    seen: set[tuple[str, tuple[str, ...]]] = set()
    for rule, line_number in rules:
        if (rule.lhs, rule.rhs) in seen:
            raise GrammarValidationError(f"line {line_number}: duplicate rule '{rule.name}'")
        seen.add((rule.lhs, rule.rhs))
    if "nonterminals" in header:
        nonterminals = _symbols(*header["nonterminals"])
        for rule, line_number in rules:
            if rule.lhs not in nonterminals:
                raise GrammarValidationError(f"line {line_number}: undeclared nonterminal '{rule.lhs}'")
    else:
        nonterminals = _first_seen([start] + [rule.lhs for rule, _ in rules])
    if start not in nonterminals:
        raise GrammarValidationError(f"Start symbol '{start}' is not a nonterminal")
    rhs_symbols = _first_seen(symbol for rule, _ in rules for symbol in rule.rhs)
    if declared_vocabulary is not None:
        vocabulary = declared_vocabulary
        for rule, line_number in rules:
            for symbol in rule.rhs:
                if symbol not in vocabulary and symbol not in nonterminals:
                    raise GrammarValidationError(f"line {line_number}: undeclared symbol '{symbol}'")
    else:
        vocabulary = tuple(symbol for symbol in rhs_symbols if symbol not in nonterminals)
    if start in vocabulary:
        raise GrammarValidationError(f"Start symbol '{start}' is also a word")
    overlap = set(vocabulary) & set(nonterminals)
    if overlap:
        raise GrammarValidationError(f"Symbols used both as words and nonterminals: {sorted(overlap)}")
    return GrammarSpec(
        mode=GrammarMode.cfg,
        semiring=semiring,
        start=start,
        vocabulary=vocabulary,
        nonterminals=nonterminals,
        rules=tuple(rule for rule, _ in rules),
    )


def _validate_pregroup(  # noqa: PLR0913, PLR0917
    header: dict,
    lexicon: list[tuple[LexiconEntry, int]],
    cups: list[tuple[PregroupType, str, int]],
    start: str,
    semiring: str,
    declared_vocabulary: tuple[str, ...] | None,
    adjoint_bound: int,
) -> GrammarSpec:
    seen: set[str] = set()
    for entry, line_number in lexicon:
        if entry.name in seen:
            raise GrammarValidationError(f"line {line_number}: duplicate lexicon entry '{entry.name}'")
        seen.add(entry.name)
        for t in entry.types:
            if abs(t.adjoint_order) > adjoint_bound:
                raise GrammarValidationError(
                    f"line {line_number}: type '{t}' exceeds the adjoint-order bound {adjoint_bound}"
                )
    words = _first_seen(entry.word for entry, _ in lexicon)
    if declared_vocabulary is not None:
        for entry, line_number in lexicon:
            if entry.word not in declared_vocabulary:
                raise GrammarValidationError(f"line {line_number}: undeclared word '{entry.word}'")
        vocabulary = declared_vocabulary
    else:
        vocabulary = words
    type_bases = _first_seen([start] + [t.base for entry, _ in lexicon for t in entry.types])
    if "types" in header:
        basic_types = _symbols(*header["types"])
        for base in type_bases:
            if base not in basic_types:
                raise GrammarValidationError(f"undeclared basic type '{base}'")
    else:
        basic_types = type_bases
    if start in vocabulary:
        raise GrammarValidationError(f"Start symbol '{start}' is also a word")
    overlap = set(vocabulary) & set(basic_types)
    if overlap:
        raise GrammarValidationError(f"Symbols used both as words and basic types: {sorted(overlap)}")
    for left, _, line_number in cups:
        if left.base not in basic_types:
            raise GrammarValidationError(f"line {line_number}: undeclared basic type '{left.base}'")
        if not -adjoint_bound <= left.adjoint_order < adjoint_bound:
            raise GrammarValidationError(f"line {line_number}: cup on '{left}' exceeds the adjoint-order bound")
    return GrammarSpec(
        mode=GrammarMode.pregroup,
        semiring=semiring,
        start=start,
        vocabulary=vocabulary,
        basic_types=basic_types,
        lexicon=tuple(entry for entry, _ in lexicon),
        cup_weights=tuple((left, weight) for left, weight, _ in cups),
        adjoint_bound=adjoint_bound,
    )


def read_grammar(path: Path, adjoint_bound: int = DEFAULT_ADJOINT_BOUND) -> GrammarSpec:
    return load_grammar(core.read_text(path), adjoint_bound)


class MonoidalGrammar(ABC):
    """A grammar presented as a monoidal category, with its parse-state operations."""

    def __init__(self, spec: GrammarSpec):
        self.spec = spec
        self.signature = self._build_signature()
        self._generators = {g.name: g for g in self.signature.generators}
        self._order = {g.name: index for index, g in enumerate(self.signature.generators)}
        self._reachable = lru_cache(maxsize=PREFIX_CACHE_SIZE)(self._close_prefix)

    @staticmethod
    def from_spec(spec: GrammarSpec) -> "MonoidalGrammar":
        if spec.mode == GrammarMode.cfg:
            return ContextFreeGrammar(spec)
        return PregroupGrammar(spec)

    @property
    def vocabulary(self) -> tuple[str, ...]:
        return self.spec.vocabulary

    @property
    def mode(self) -> GrammarMode:
        return self.spec.mode

    @property
    @abstractmethod
    def start_object(self) -> Object:
        pass

    def generator(self, name: str) -> Generator:
        try:
            return self._generators[name]
        except KeyError:
            raise InapplicableGeneratorError(f"'{name}' is not a generator of this grammar") from None

    def check_word(self, word: str) -> None:
        if word not in self.spec.vocabulary:
            raise UnknownWordError(f"'{word}' is not in the vocabulary")

    def is_parsing(self, state: ParseState) -> bool:
        return state.codomain == (self.start_object,)

    def bare_state(self, words: Iterable[str]) -> ParseState:
        """The identity-shaped state: words appended with no generator applied."""
        state = self.initial_state()
        for word in words:
            state = self.append_word(state, word)
        return state

    def apply_generator(self, state: ParseState, generator: Generator | str, position: int) -> ParseState:
        """Compose (id ⊗ g ⊗ id) after the state, checking that the window matches."""
        g = self.generator(generator) if isinstance(generator, str) else generator
        if (g, position) not in self.applicable_generators(state):
            raise InapplicableGeneratorError(
                f"'{g.name}' does not apply at position {position} of '{state.canonical()}'"
            )
        return self._apply(state, g, position)

    def closure(self, seeds: Iterable[ParseState], depth_bound: int) -> dict[ParseState, tuple[str, ...]]:
        """All states reachable from the seeds, each with the generators applied to reach it.

        Raises:
            BoundExceededError: some state still rewrites after depth_bound applications
            ValueError: depth_bound is below 1
        """
        if depth_bound < 1:
            raise ValueError(f"depth_bound must be at least 1, got {depth_bound}")
        paths: dict[ParseState, tuple[str, ...]] = {}
        layer = []
        for seed in seeds:
            if seed not in paths:
                paths[seed] = ()
                layer.append(seed)
        depth = 0
        while layer:
            next_layer = []
            for state in layer:
                for g, position in self.applicable_generators(state):
                    successor = self._apply(state, g, position)
                    if successor in paths:
                        continue
                    if depth == depth_bound:
                        raise BoundExceededError(
                            f"Closure still growing after {depth_bound} generator applications "
                            "(possible unary-rule cycle); raise the depth bound"
                        )
                    paths[successor] = paths[state] + (g.name,)
                    next_layer.append(successor)
            layer = next_layer
            depth += 1
        return paths

    def reachable_states(self, words: Sequence[str], depth_bound: int | None = None) -> frozenset[ParseState]:
        """Every state over the words, grown one word at a time from the cached states of the shorter prefix.

        depth_bound limits each per-word closure; None selects default_depth_bound of the prefix length.
        """
        return self._reachable(tuple(words), depth_bound)

    def _close_prefix(self, words: tuple[str, ...], depth_bound: int | None) -> frozenset[ParseState]:
        bound = default_depth_bound(len(words)) if depth_bound is None else depth_bound
        if not words:
            return frozenset(self.closure([self.initial_state()], bound))
        seeds = [self.append_word(state, words[-1]) for state in self._reachable(words[:-1], depth_bound)]
        return frozenset(self.closure(seeds, bound))

    @abstractmethod
    def _build_signature(self) -> MonoidalSignature:
        pass

    @abstractmethod
    def initial_state(self) -> ParseState:
        pass

    @abstractmethod
    def append_word(self, state: ParseState, word: str) -> ParseState:
        pass

    @abstractmethod
    def applicable_generators(self, state: ParseState) -> list[tuple[Generator, int]]:
        pass

    @abstractmethod
    def _apply(self, state: ParseState, g: Generator, position: int) -> ParseState:
        pass

    @abstractmethod
    def parse_state(self, text: str) -> ParseState:
        """Read a canonical parse-state string back into a state of this grammar."""


class ContextFreeGrammar(MonoidalGrammar):
    def __init__(self, spec: GrammarSpec):
        super().__init__(spec)
        self._by_first: dict[Object, list[Generator]] = defaultdict(list)
        for g in self.signature.generators:
            self._by_first[g.dom[0]].append(g)

    @property
    def start_object(self) -> Object:
        return self.spec.start

    def _build_signature(self) -> MonoidalSignature:
        generators = tuple(Generator(r.name, GeneratorKind.rule, r.rhs, (r.lhs,)) for r in self.spec.rules)
        return MonoidalSignature(self.spec.vocabulary + self.spec.nonterminals, generators)

    def initial_state(self) -> DerivationForest:
        return DerivationForest((), ())

    def append_word(self, state: ParseState, word: str) -> DerivationForest:
        self.check_word(word)
        assert isinstance(state, DerivationForest)
        return DerivationForest(state.prefix + (word,), state.trees + (Tree(word),))

    def applicable_generators(self, state: ParseState) -> list[tuple[Generator, int]]:
        codomain = state.codomain
        result = []
        for position, symbol in enumerate(codomain):
            for g in self._by_first.get(symbol, []):
                if codomain[position : position + len(g.dom)] == g.dom:
                    result.append((g, position))
        return result

    def _apply(self, state: ParseState, g: Generator, position: int) -> DerivationForest:
        assert isinstance(state, DerivationForest)
        width = len(g.dom)
        node = Tree(str(g.cod[0]), g.name, state.trees[position : position + width])
        return DerivationForest(state.prefix, state.trees[:position] + (node,) + state.trees[position + width :])

    def parse_state(self, text: str) -> DerivationForest:
        text = text.strip()
        if text == EMPTY:
            return self.initial_state()
        tokens = re.findall(r"\(|\)|[^\s()]+", text)
        trees: list[Tree] = []
        position = 0

        def parse_tree() -> Tree:
            nonlocal position
            label = tokens[position]
            position += 1
            if position < len(tokens) and tokens[position] == "(":
                position += 1
                children = []
                while position < len(tokens) and tokens[position] != ")":
                    children.append(parse_tree())
                if position >= len(tokens):
                    raise ValueError(f"Unbalanced parentheses in '{text}'")
                position += 1
                rule = Rule(label, tuple(child.label for child in children))
                if rule.name not in self._generators:
                    raise ValueError(f"No rule '{rule.name}' in grammar (reading '{text}')")
                return Tree(label, rule.name, tuple(children))
            self.check_word(label)
            return Tree(label)

        while position < len(tokens):
            if tokens[position] in "()":
                raise ValueError(f"Unexpected '{tokens[position]}' in '{text}'")
            trees.append(parse_tree())
        prefix = tuple(leaf for tree in trees for leaf in tree.leaves())
        return DerivationForest(prefix, tuple(trees))


class PregroupGrammar(MonoidalGrammar):
    """Pregroup grammar restricted to lexicon and cup generators (caps normalized away)."""

    def __init__(self, spec: GrammarSpec):
        super().__init__(spec)
        self._entries_by_word: dict[str, list[Generator]] = defaultdict(list)
        for g in self.signature.generators:
            if g.kind == GeneratorKind.lexicon:
                self._entries_by_word[str(g.dom[0])].append(g)

    @property
    def start_object(self) -> Object:
        return PregroupType(self.spec.start)

    def typed_objects(self) -> list[PregroupType]:
        bound = self.spec.adjoint_bound
        return [PregroupType(base, z) for base in self.spec.basic_types for z in range(-bound, bound + 1)]

    def _build_signature(self) -> MonoidalSignature:
        generators = [Generator(e.name, GeneratorKind.lexicon, (e.word,), e.types) for e in self.spec.lexicon]
        for t in self.typed_objects():
            if t.adjoint_order < self.spec.adjoint_bound:
                generators.append(Generator(cup_name(t), GeneratorKind.cup, (t, t.right()), ()))
        objects: tuple[Object, ...] = self.spec.vocabulary + tuple(self.typed_objects())
        return MonoidalSignature(objects, tuple(generators))

    def initial_state(self) -> LinkDiagram:
        return LinkDiagram((), (), (), ())

    def append_word(self, state: ParseState, word: str) -> LinkDiagram:
        self.check_word(word)
        assert isinstance(state, LinkDiagram)
        return LinkDiagram(state.prefix + (word,), state.lexical + (None,), state.groups + ((word,),), state.links)

    def applicable_generators(self, state: ParseState) -> list[tuple[Generator, int]]:
        codomain = state.codomain
        result = []
        for position, symbol in enumerate(codomain):
            if isinstance(symbol, str):
                result.extend((g, position) for g in self._entries_by_word.get(symbol, []))
            elif position + 1 < len(codomain) and symbol.contracts_with(codomain[position + 1]):
                name = cup_name(symbol)
                if name in self._generators:
                    result.append((self._generators[name], position))
        return result

    def _apply(self, state: ParseState, g: Generator, position: int) -> LinkDiagram:
        assert isinstance(state, LinkDiagram)
        residual = state.residual()
        if g.kind == GeneratorKind.cup:
            link = (residual[position], residual[position + 1])
            return LinkDiagram(state.prefix, state.lexical, state.groups, tuple(sorted(state.links + (link,))))
        wire = residual[position]
        offsets = state.group_offsets()
        word_index = offsets.index(wire)
        shift = len(g.cod) - 1
        links = tuple(
            (left + shift if left > wire else left, right + shift if right > wire else right)
            for left, right in state.links
        )
        return LinkDiagram(
            state.prefix,
            state.lexical[:word_index] + (g.name,) + state.lexical[word_index + 1 :],
            state.groups[:word_index] + (g.cod,) + state.groups[word_index + 1 :],
            links,
        )

    def parse_state(self, text: str) -> LinkDiagram:  # noqa: PLR0914
        text = text.strip()
        if text == EMPTY:
            return self.initial_state()
        body, _, residual_text = text.partition("=>")
        words_text, _, links_text = body.partition("|")
        prefix: list[str] = []
        lexical: list[str | None] = []
        groups: list[tuple[Object, ...]] = []
        for match in re.finditer(r"([^\s<>|]+)(?:<([^>]*)>)?", words_text):
            word, types_text = match.group(1), match.group(2)
            self.check_word(word)
            prefix.append(word)
            if types_text is None:
                lexical.append(None)
                groups.append((word,))
                continue
            name = LexiconEntry(word, tuple(PregroupType.parse(t) for t in types_text.split())).name
            if name not in self._generators:
                raise ValueError(f"No lexicon entry '{name}' in grammar (reading '{text}')")
            lexical.append(name)
            groups.append(self._generators[name].cod)
        state = self.bare_state(prefix)
        for index, name in enumerate(lexical):
            if name is not None:
                assert isinstance(state, LinkDiagram)
                wire = state.group_offsets()[index]
                state = self.apply_generator(state, name, state.residual().index(wire))
        assert isinstance(state, LinkDiagram)
        links = []
        for pair in links_text.split():
            left, _, right = pair.partition("-")
            links.append((int(left), int(right)))
        # Replay the links innermost first so each cup joins residual-adjacent wires.
        for left, right in sorted(links, key=lambda link: link[1] - link[0]):
            residual = state.residual()
            if left not in residual or right not in residual:
                raise ValueError(f"Link {left}-{right} reuses a wire in '{text}'")
            position = residual.index(left)
            if position + 1 >= len(residual) or residual[position + 1] != right:
                raise ValueError(f"Link {left}-{right} is not planar in '{text}'")
            wire = state.wires[left]
            if not isinstance(wire, PregroupType):
                raise ValueError(f"Link {left}-{right} touches an untyped word in '{text}'")
            state = self.apply_generator(state, cup_name(wire), position)
            assert isinstance(state, LinkDiagram)
        residual_text = residual_text.strip()
        if residual_text and residual_text != " ".join(str(o) for o in state.codomain) and residual_text != EMPTY:
            raise ValueError(f"Residual '{residual_text}' does not match the links in '{text}'")
        return state


def signature_of(spec: GrammarSpec) -> MonoidalSignature:
    return MonoidalGrammar.from_spec(spec).signature


def enumerate_parsings(grammar: MonoidalGrammar, sentence: Iterable[str], depth_bound: int | None = None) -> list:
    """Every distinct parsing of the sentence among the states reachable word by word.

    Returns:
        list[ParseState]: parsings sorted by canonical form
    """
    reachable = grammar.reachable_states(tuple(sentence), depth_bound)
    parsings = [state for state in reachable if grammar.is_parsing(state)]
    return sorted(parsings, key=ParseState.sort_key)


def language(grammar: MonoidalGrammar, max_len: int, depth_bound: int | None = None) -> list[tuple[str, ...]]:
    """Sentences up to max_len words with at least one parsing, shortest first."""
    if max_len < 0:
        raise ValueError(f"max_len must be non-negative, got {max_len}")
    result = []
    for length in range(max_len + 1):
        for sentence in itertools.product(grammar.vocabulary, repeat=length):
            if enumerate_parsings(grammar, sentence, depth_bound):
                result.append(sentence)
    return result
