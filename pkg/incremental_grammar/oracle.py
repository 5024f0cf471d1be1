"""Recognisers that share no code with the parse-state engine, used to cross-check it."""

import itertools
from collections import deque
from functools import lru_cache
from typing import Iterable

from .grammar import GrammarMode, GrammarSpec
from .signature import PregroupType


def cfg_recognises(spec: GrammarSpec, sentence: Iterable[str]) -> bool:
    """Run the rewriting relation backwards: reduce rule right-hand sides until only the start symbol is left."""
    if spec.mode != GrammarMode.cfg:
        raise ValueError("cfg_recognises needs a context-free grammar")
    words = tuple(sentence)
    goal = (spec.start,)
    seen = {words}
    queue = deque([words])
    while queue:
        current = queue.popleft()
        if current == goal:
            return True
        for rule in spec.rules:
            width = len(rule.rhs)
            for position in range(len(current) - width + 1):
                if current[position : position + width] == rule.rhs:
                    reduced = current[:position] + (rule.lhs,) + current[position + width :]
                    if reduced not in seen:
                        seen.add(reduced)
                        queue.append(reduced)
    return False


def reduces_to(types: tuple[PregroupType, ...], target: PregroupType) -> bool:
    """True when the type string contracts to exactly the target type."""

    @lru_cache(maxsize=None)
    def vanishes(start: int, end: int) -> bool:
        if start == end:
            return True
        if (end - start) % 2:
            return False
        for partner in range(start + 1, end, 2):
            if (
                types[start].contracts_with(types[partner])
                and vanishes(start + 1, partner)
                and vanishes(partner + 1, end)
            ):
                return True
        return False

    return any(t == target and vanishes(0, k) and vanishes(k + 1, len(types)) for k, t in enumerate(types))


def pregroup_recognises(spec: GrammarSpec, sentence: Iterable[str]) -> bool:
    """Try every lexical assignment and test it for contraction to the start type."""
    if spec.mode != GrammarMode.pregroup:
        raise ValueError("pregroup_recognises needs a pregroup grammar")
    choices = []
    for word in sentence:
        entries = [entry.types for entry in spec.lexicon if entry.word == word]
        if not entries:
            return False
        choices.append(entries)
    start = PregroupType(spec.start)
    for assignment in itertools.product(*choices):
        if reduces_to(tuple(t for types in assignment for t in types), start):
            return True
    return False


def recognises(spec: GrammarSpec, sentence: Iterable[str]) -> bool:
    if spec.mode == GrammarMode.cfg:
        return cfg_recognises(spec, sentence)
    return pregroup_recognises(spec, sentence)
