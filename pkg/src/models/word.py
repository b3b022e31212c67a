"""Group words in the variables x1, x2, …"""
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, field_validator


def _reduce(syllables: Tuple[Tuple[int, int], ...]) -> Tuple[Tuple[int, int], ...]:
    """Merge adjacent syllables on one variable and drop the ones that cancel."""
    reduced: List[Tuple[int, int]] = []
    for variable, exponent in syllables:
        if reduced and reduced[-1][0] == variable:
            exponent += reduced.pop()[1]
        if exponent:
            reduced.append((variable, exponent))
    return tuple(reduced)


class Word(BaseModel):
    """
    A word as a sequence of ``(variable index, exponent)`` syllables.

    Variables are numbered from 1 and exponents are nonzero. Products and
    powers are freely reduced: adjacent syllables never share a variable.
    """

    model_config = ConfigDict(frozen=True)

    syllables: Tuple[Tuple[int, int], ...] = ()

    @field_validator("syllables")
    @classmethod
    def _check_syllables(cls, value: Tuple[Tuple[int, int], ...]) -> Tuple[Tuple[int, int], ...]:
        for variable, exponent in value:
            if variable < 1:
                raise ValueError(f"variable index must be >= 1, got {variable}")
            if exponent == 0:
                raise ValueError(f"exponent of x{variable} must be nonzero")
        return value

    @classmethod
    def of(cls, syllables: List[Tuple[int, int]]) -> "Word":
        return cls(syllables=tuple((int(v), int(e)) for v, e in syllables))

    @property
    def arity(self) -> int:
        return max((variable for variable, _ in self.syllables), default=0)

    @property
    def is_empty(self) -> bool:
        return not self.syllables

    def inverse(self) -> "Word":
        return Word(syllables=tuple((v, -e) for v, e in reversed(self.syllables)))

    def __mul__(self, other: "Word") -> "Word":
        return Word(syllables=_reduce(self.syllables + other.syllables))

    def __pow__(self, exponent: int) -> "Word":
        if exponent == 0:
            return Word()
        base = self if exponent > 0 else self.inverse()
        return Word(syllables=_reduce(base.syllables * abs(exponent)))

    @staticmethod
    def commutator(a: "Word", b: "Word") -> "Word":
        """``[a, b] = a⁻¹ b⁻¹ a b``."""
        return a.inverse() * b.inverse() * a * b

    @property
    def power_law_exponent(self) -> int:
        """Exponent e if the word is literally a single power x_i^e, else 0."""
        if len(self.syllables) == 1:
            return abs(self.syllables[0][1])
        return 0

    @property
    def is_basic_commutator(self) -> bool:
        """True for the literal law [x_i, x_j] with i != j."""
        if len(self.syllables) != 4:
            return False
        (a, p), (b, q), (c, r), (d, s) = self.syllables
        return a == c and b == d and a != b and (p, q, r, s) == (-1, -1, 1, 1)

    def __str__(self) -> str:
        if not self.syllables:
            return "e"
        return " ".join(f"x{v}" if e == 1 else f"x{v}^{e}" for v, e in self.syllables)
