"""Variety presentations: finite law bases and products of varieties."""
import math
from enum import Enum
from functools import reduce
from typing import Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, model_validator

from src.models.word import Word


class VarietyKind(str, Enum):
    """Enumeration of presentation kinds."""

    BASIS = "basis"
    PRODUCT = "product"


class VarietyPresentation(BaseModel):
    """
    A variety of groups given either by a finite basis of laws or as a product.

    ``Product(N, Q)`` is the class of extensions of an N-group by a Q-group;
    the leftmost factor is the variety of the normal subgroup.
    """

    model_config = ConfigDict(frozen=True)

    name: str = Field(..., description="Human-readable name")
    kind: VarietyKind = Field(VarietyKind.BASIS, description="Basis or product")
    laws: Tuple[Word, ...] = Field((), description="Law basis (basis kind only)")
    factors: Tuple["VarietyPresentation", ...] = Field(
        (), description="Ordered factors, normal-subgroup variety first (product kind only)"
    )
    declared_exponent: Optional[PositiveInt] = Field(
        None, description="Exponent declared by the user"
    )
    abelian_flag: bool = Field(False, description="Declared to satisfy [x1,x2]")
    contained_in: Tuple[str, ...] = Field(
        (), description="Names of varieties this one is declared to be contained in"
    )
    marker: Optional[Literal["trivial", "all"]] = Field(
        None, description="Trivial variety or the variety of all groups"
    )

    @model_validator(mode="after")
    def _check_shape(self) -> "VarietyPresentation":
        if self.kind == VarietyKind.BASIS:
            if self.factors:
                raise ValueError("a basis presentation has no factors")
            if self.marker == "all" and self.laws:
                raise ValueError("the variety of all groups has no laws")
            if not self.laws and self.marker is None:
                raise ValueError(f"variety {self.name!r} needs at least one law or a marker")
        else:
            if len(self.factors) < 2:
                raise ValueError(f"product variety {self.name!r} needs at least two factors")
            if self.laws:
                raise ValueError("a product presentation carries no laws of its own")
        return self

    @property
    def is_product(self) -> bool:
        return self.kind == VarietyKind.PRODUCT

    @property
    def is_trivial_variety(self) -> bool:
        if self.marker == "trivial":
            return True
        return any(law.syllables == ((1, 1),) or law.power_law_exponent == 1 for law in self.laws)

    @property
    def is_all_groups(self) -> bool:
        return self.marker == "all"

    @property
    def abelian(self) -> bool:
        """Declared abelian, or the basis literally contains a law [x_i, x_j]."""
        if self.is_product:
            return False
        return self.abelian_flag or self.is_trivial_variety or any(
            law.is_basic_commutator for law in self.laws
        )

    @property
    def exponent(self) -> Optional[int]:
        """
        The exponent known from declarations, never inferred from general laws.

        A declared value wins. A basis whose laws literally contain powers
        x_i^e has the gcd of those e. A product whose factors all have known
        exponents a, b, … satisfies x^(a·b·…).
        """
        if self.declared_exponent is not None:
            return int(self.declared_exponent)
        if self.is_product:
            exponents = [factor.exponent for factor in self.factors]
            if any(e is None for e in exponents):
                return None
            return reduce(lambda a, b: a * b, exponents, 1)
        powers = [law.power_law_exponent for law in self.laws if law.power_law_exponent]
        if powers:
            return reduce(math.gcd, powers)
        return None

    @property
    def arity(self) -> int:
        if self.is_product:
            return max(factor.arity for factor in self.factors)
        return max((law.arity for law in self.laws), default=0)

    def split(self) -> Tuple["VarietyPresentation", "VarietyPresentation"]:
        """
        Return ``(N, Q)`` with this product equal to NQ.

        For more than two factors the first is N and the rest form Q.
        """
        if not self.is_product:
            raise ValueError(f"variety {self.name!r} is not a product")
        inner = self.factors[0]
        if len(self.factors) == 2:
            outer = self.factors[1]
        else:
            rest = self.factors[1:]
            outer = VarietyPresentation(
                name="·".join(f.name for f in rest),
                kind=VarietyKind.PRODUCT,
                factors=rest,
            )
        return inner, outer

    def declared_subvariety_of(self, other: "VarietyPresentation") -> bool:
        """Containment as declared: identical presentation, listed name, or trivial/all markers."""
        if self.is_trivial_variety or other.is_all_groups:
            return True
        if self.name == other.name or other.name in self.contained_in:
            return True
        return (
            not self.is_product
            and not other.is_product
            and set(other.laws) <= set(self.laws)
        )

    def describe(self) -> str:
        if self.is_product:
            return "(" + ")(".join(f.describe() for f in self.factors) + ")"
        if self.marker == "all":
            return "all groups"
        return ", ".join(str(law) for law in self.laws) or "trivial"


VarietyPresentation.model_rebuild()
