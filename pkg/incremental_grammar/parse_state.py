"""Canonical forms for the arrows w1 ... wn -> o of a grammar's monoidal category.

Context-free grammars present a free monoidal category with no relations, so an
arrow is exactly an ordered forest of derivation trees. Pregroup arrows built from
lexicon entries and cups are exactly a lexical choice per word plus a planar set of
links between adjacent residual wires.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .signature import Object, PregroupType, cup_name, format_objects

EMPTY = "ε"


class ParseState(ABC):
    prefix: tuple[str, ...]

    @property
    @abstractmethod
    def codomain(self) -> tuple[Object, ...]:
        pass

    @abstractmethod
    def generator_occurrences(self) -> list[str]:
        """Every generator used to build the state, one entry per occurrence."""

    @abstractmethod
    def canonical(self) -> str:
        pass

    def __str__(self) -> str:
        return self.canonical()

    def sort_key(self) -> str:
        return self.canonical()


@dataclass(frozen=True)
class Tree:
    label: str
    rule: str | None = None
    children: tuple["Tree", ...] = ()

    @cached_property
    def _hash(self) -> int:
        return hash((self.label, self.rule, self.children))

    def __hash__(self) -> int:
        return self._hash

    @property
    def is_leaf(self) -> bool:
        return self.rule is None

    def leaves(self) -> tuple[str, ...]:
        if self.is_leaf:
            return (self.label,)
        return tuple(leaf for child in self.children for leaf in child.leaves())

    def rules(self) -> list[str]:
        if self.rule is None:
            return []
        result = [self.rule]
        for child in self.children:
            result.extend(child.rules())
        return result

    def spans(self, start: int = 0) -> Iterator[tuple[int, int, "Tree"]]:
        """Yield (first leaf, one past last leaf, subtree) for this tree and all its subtrees."""
        if self.is_leaf:
            yield (start, start + 1, self)
            return
        position = start
        for child in self.children:
            yield from child.spans(position)
            position += len(child.leaves())
        yield (start, position, self)

    def canonical(self) -> str:
        if self.is_leaf:
            return self.label
        return f"{self.label}({' '.join(child.canonical() for child in self.children)})"


@dataclass(frozen=True)
class DerivationForest(ParseState):
    prefix: tuple[str, ...]
    trees: tuple[Tree, ...]

    @property
    def codomain(self) -> tuple[Object, ...]:
        return tuple(tree.label for tree in self.trees)

    def generator_occurrences(self) -> list[str]:
        return [rule for tree in self.trees for rule in tree.rules()]

    def canonical(self) -> str:
        if not self.trees:
            return EMPTY
        return " ".join(tree.canonical() for tree in self.trees)

    def spans(self) -> Iterator[tuple[int, int, Tree]]:
        position = 0
        for tree in self.trees:
            yield from tree.spans(position)
            position += len(tree.leaves())

    def roots(self) -> Iterator[tuple[int, int, Tree]]:
        position = 0
        for tree in self.trees:
            width = len(tree.leaves())
            yield (position, position + width, tree)
            position += width


@dataclass(frozen=True)
class LinkDiagram(ParseState):
    """Words with optional lexical types, and cup links between wire indices.

    An unlexicalized word contributes a single wire carrying the word itself.
    """

    prefix: tuple[str, ...]
    lexical: tuple[str | None, ...]
    groups: tuple[tuple[Object, ...], ...]
    links: tuple[tuple[int, int], ...] = ()

    @property
    def wires(self) -> tuple[Object, ...]:
        return tuple(wire for group in self.groups for wire in group)

    def group_offsets(self) -> list[int]:
        offsets = []
        position = 0
        for group in self.groups:
            offsets.append(position)
            position += len(group)
        return offsets

    def residual(self) -> list[int]:
        """Wire indices left unlinked, in order."""
        linked = {end for link in self.links for end in link}
        return [index for index in range(len(self.wires)) if index not in linked]

    @property
    def codomain(self) -> tuple[Object, ...]:
        wires = self.wires
        return tuple(wires[index] for index in self.residual())

    def generator_occurrences(self) -> list[str]:
        wires = self.wires
        occurrences = [name for name in self.lexical if name is not None]
        for left, _ in self.links:
            wire = wires[left]
            assert isinstance(wire, PregroupType)
            occurrences.append(cup_name(wire))
        return occurrences

    def canonical(self) -> str:
        if not self.prefix:
            return EMPTY
        tokens = []
        for word, name, group in zip(self.prefix, self.lexical, self.groups):
            tokens.append(word if name is None else f"{word}<{format_objects(group)}>")
        text = " ".join(tokens)
        if self.links:
            text += " | " + " ".join(f"{left}-{right}" for left, right in self.links)
        return f"{text} => {format_objects(self.codomain)}"
