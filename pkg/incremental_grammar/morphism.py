# SPDX-FileCopyrightText: © 2025 Big Ladder Software <info@bigladdersoftware.com>
# SPDX-License-Identifier: BSD-3-Clause

import logging
from pathlib import Path
from typing import Mapping, Sequence

from . import core
from .core import MorphismError
from .grammar import GrammarMode, MonoidalGrammar
from .parse_state import DerivationForest, LinkDiagram, ParseState, Tree
from .signature import Generator, GeneratorKind, Object, PregroupType, cup_name

logger = logging.getLogger("incgram")

ObjectMapInput = Mapping[str, "str | Sequence[str]"]


class ObjectMap:
    """h0 on generating objects. Words and unlisted symbols map to themselves."""

    def __init__(self, vocabulary: Sequence[str], object_map: ObjectMapInput):
        self.vocabulary = set(vocabulary)
        self.images = {key: (value,) if isinstance(value, str) else tuple(value) for key, value in object_map.items()}

    def map_symbol(self, symbol: str) -> tuple[str, ...]:
        return self.images.get(symbol, (symbol,))

    def map_object(self, obj: Object) -> tuple[Object, ...]:
        if isinstance(obj, PregroupType):
            image = self.map_symbol(obj.base)
            if len(image) != 1:
                raise MorphismError(f"Basic type '{obj.base}' must map to a single basic type, got {image}")
            return (PregroupType(image[0], obj.adjoint_order),)
        if obj in self.vocabulary:
            return (obj,)
        return self.map_symbol(obj)

    def map_objects(self, objects: Sequence[Object]) -> tuple[Object, ...]:
        return tuple(image for obj in objects for image in self.map_object(obj))


class GrammarMorphism:
    """A signature homomorphism fixing the vocabulary and the start symbol.

    The object map is given on nonterminals (context-free) or on basic types (pregroup);
    pregroup objects map as (b, z) -> (h(b), z) and cups follow their types. Symbols left out
    of the object map are sent to themselves.
    """

    def __init__(
        self,
        source: MonoidalGrammar,
        target: MonoidalGrammar,
        object_map: ObjectMapInput,
        arrow_map: Mapping[str, str],
    ):
        self.source = source
        self.target = target
        self.objects = ObjectMap(source.vocabulary, object_map)
        self.arrow_map = dict(arrow_map)
        self._validate()

    def __repr__(self) -> str:
        return f"GrammarMorphism({len(self.objects.images)} objects, {len(self.arrow_map)} arrows)"

    def map_symbol(self, symbol: str) -> tuple[str, ...]:
        return self.objects.map_symbol(symbol)

    def map_object(self, obj: Object) -> tuple[Object, ...]:
        return self.objects.map_object(obj)

    def map_objects(self, objects: Sequence[Object]) -> tuple[Object, ...]:
        return self.objects.map_objects(objects)

    def map_generator(self, g: Generator | str) -> Generator:
        name = g if isinstance(g, str) else g.name
        if name not in self.arrow_map:
            raise MorphismError(f"Generator '{name}' has no image")
        image = self.arrow_map[name]
        if image not in self.target.signature.names():
            raise MorphismError(f"Generator '{name}' maps to '{image}', which the target lacks")
        return self.target.generator(image)

    def _validate(self) -> None:
        source, target = self.source, self.target
        if source.mode != target.mode:
            raise MorphismError(f"Cannot map a {source.mode.value} grammar into a {target.mode.value} grammar")
        missing_words = [w for w in source.vocabulary if w not in target.vocabulary]
        if missing_words:
            raise MorphismError(f"Words {missing_words} are not in the target vocabulary")
        if source.spec.start != target.spec.start:
            raise MorphismError(f"Start symbols differ: '{source.spec.start}' and '{target.spec.start}'")
        for key, image in self.objects.images.items():
            if key in source.vocabulary and image != (key,):
                raise MorphismError(f"Word '{key}' must map to itself")
            if key == source.spec.start and image != (key,):
                raise MorphismError(f"Start symbol '{key}' must map to itself")
        target_objects = set(target.signature.objects)
        for obj in source.signature.objects:
            for image in self.map_object(obj):
                if image not in target_objects:
                    raise MorphismError(f"Object '{obj}' maps to '{image}', which the target lacks")
        for g in source.signature.generators:
            image = self.map_generator(g)
            if self.map_objects(g.dom) != image.dom or self.map_objects(g.cod) != image.cod:
                raise MorphismError(f"Generator '{g.name}' maps to '{image.name}'; dom/cod squares do not commute")


def infer_morphism(
    source: MonoidalGrammar,
    target: MonoidalGrammar,
    object_map: ObjectMapInput,
    arrow_map: Mapping[str, str] | None = None,
) -> GrammarMorphism:
    """Complete an arrow map from the object map wherever the image generator is unique."""
    arrows = dict(arrow_map or {})
    objects = ObjectMap(source.vocabulary, object_map)
    by_shape: dict[tuple, list[Generator]] = {}
    for candidate in target.signature.generators:
        by_shape.setdefault((candidate.kind, candidate.dom, candidate.cod), []).append(candidate)
    for g in source.signature.generators:
        if g.name in arrows:
            continue
        if g.kind == GeneratorKind.cup:
            left = objects.map_object(g.dom[0])[0]
            assert isinstance(left, PregroupType)
            arrows[g.name] = cup_name(left)
            continue
        shape = (g.kind, objects.map_objects(g.dom), objects.map_objects(g.cod))
        candidates = by_shape.get(shape, [])
        if len(candidates) != 1:
            problem = "no" if not candidates else "an ambiguous"
            raise MorphismError(f"Generator '{g.name}' has {problem} image; give it in the arrow map")
        arrows[g.name] = candidates[0].name
    return GrammarMorphism(source, target, object_map, arrows)


def identity_morphism(grammar: MonoidalGrammar) -> GrammarMorphism:
    return GrammarMorphism(grammar, grammar, {}, {g.name: g.name for g in grammar.signature.generators})


def compose_morphisms(first: GrammarMorphism, second: GrammarMorphism) -> GrammarMorphism:
    """The morphism `second ∘ first`."""
    if first.target.spec != second.source.spec:
        raise MorphismError("Morphisms do not compose: the first target is not the second source")
    if first.source.mode == GrammarMode.pregroup:
        symbols = first.source.spec.basic_types
    else:
        symbols = first.source.spec.nonterminals
    object_map = {
        symbol: tuple(image for mid in first.map_symbol(symbol) for image in second.map_symbol(mid))
        for symbol in symbols
    }
    arrow_map = {name: second.arrow_map[mid] for name, mid in first.arrow_map.items()}
    return GrammarMorphism(first.source, second.target, object_map, arrow_map)


def load_morphism(path: Path, source: MonoidalGrammar, target: MonoidalGrammar) -> GrammarMorphism:
    """Read a morphism from TOML with an [objects] table and an optional [arrows] table."""
    data = core.read_toml(path)
    unknown = set(data) - {"objects", "arrows"}
    if unknown:
        logger.warning(f"Unrecognized tables {sorted(unknown)} in {path}")
    objects = data.get("objects", {})
    arrows = data.get("arrows", {})
    for table_name, table in (("objects", objects), ("arrows", arrows)):
        if not isinstance(table, dict):
            raise TypeError(
                f"Type mismatch in table {table_name}\n... expected type: table\n... actual value : {table!r}"
            )
    return infer_morphism(source, target, objects, arrows)


def _map_tree(m: GrammarMorphism, tree: Tree) -> Tree:
    if tree.is_leaf:
        return tree
    assert tree.rule is not None
    image = m.map_generator(tree.rule)
    children = tuple(_map_tree(m, child) for child in tree.children)
    if len(image.dom) != len(children) or len(image.cod) != 1:
        raise MorphismError(f"'{tree.rule}' maps to '{image.name}', which does not have the same tree shape")
    return Tree(str(image.cod[0]), image.name, children)


def apply_morphism(m: GrammarMorphism, state: ParseState) -> ParseState:
    """Relabel a source parse state into the target grammar; the prefix is unchanged."""
    if isinstance(state, DerivationForest):
        return DerivationForest(state.prefix, tuple(_map_tree(m, tree) for tree in state.trees))
    assert isinstance(state, LinkDiagram)
    lexical: list[str | None] = []
    groups = []
    for name, group in zip(state.lexical, state.groups):
        if name is None:
            lexical.append(None)
            groups.append(group)
            continue
        image = m.map_generator(name)
        if len(image.cod) != len(group):
            raise MorphismError(f"'{name}' maps to '{image.name}' with a different number of wires")
        lexical.append(image.name)
        groups.append(image.cod)
    return LinkDiagram(state.prefix, tuple(lexical), tuple(groups), state.links)
