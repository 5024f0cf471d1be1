import re
from dataclasses import dataclass
from enum import Enum

SYMBOL_PATTERN = re.compile(r"^[^\s()<>|:@#,^]+$")
TYPE_TERM_PATTERN = re.compile(r"^(?P<base>[^\s()<>|:@#,^]+)(\^(?P<adjoints>l+|r+))?$")


def is_symbol(text: str) -> bool:
    return bool(SYMBOL_PATTERN.match(text))


@dataclass(frozen=True, order=True)
class PregroupType:
    """A basic type with an adjoint order: negative counts left adjoints, positive right."""

    base: str
    adjoint_order: int = 0

    def __str__(self) -> str:
        if self.adjoint_order == 0:
            return self.base
        marks = "l" * -self.adjoint_order if self.adjoint_order < 0 else "r" * self.adjoint_order
        return f"{self.base}^{marks}"

    def left(self) -> "PregroupType":
        return PregroupType(self.base, self.adjoint_order - 1)

    def right(self) -> "PregroupType":
        return PregroupType(self.base, self.adjoint_order + 1)

    def contracts_with(self, other: object) -> bool:
        """True when `self other` reduces to the unit (t^l t or t t^r)."""
        return (
            isinstance(other, PregroupType)
            and other.base == self.base
            and other.adjoint_order == self.adjoint_order + 1
        )

    @classmethod
    def parse(cls, term: str) -> "PregroupType":
        match = TYPE_TERM_PATTERN.match(term)
        if not match:
            raise ValueError(f"'{term}' is not a type term (expected base, base^l, base^r, base^ll, ...)")
        adjoints = match.group("adjoints") or ""
        order = -len(adjoints) if adjoints.startswith("l") else len(adjoints)
        return cls(match.group("base"), order)


# Words and nonterminals are plain strings; pregroup types are PregroupType.
Object = str | PregroupType


def format_objects(objects: tuple[Object, ...] | list[Object]) -> str:
    return " ".join(str(o) for o in objects) if objects else "ε"


def cup_name(left: PregroupType) -> str:
    return f"cup {left} {left.right()}"


class GeneratorKind(str, Enum):
    rule = "rule"
    lexicon = "lexicon"
    cup = "cup"


@dataclass(frozen=True)
class Generator:
    name: str
    kind: GeneratorKind
    dom: tuple[Object, ...]
    cod: tuple[Object, ...]


@dataclass(frozen=True)
class MonoidalSignature:
    """Generating objects and arrows of a free monoidal category, in declaration order."""

    objects: tuple[Object, ...]
    generators: tuple[Generator, ...]

    def __post_init__(self):
        known = set(self.objects)
        for g in self.generators:
            for symbol in g.dom + g.cod:
                if symbol not in known:
                    raise ValueError(f"Generator '{g.name}' uses '{symbol}', which is not an object of the signature")

    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    def generator(self, name: str) -> Generator:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)

    def dom(self, name: str) -> tuple[Object, ...]:
        return self.generator(name).dom

    def cod(self, name: str) -> tuple[Object, ...]:
        return self.generator(name).cod
