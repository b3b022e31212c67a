"""
JSON report schemas emitted by the command line.

Every report sits in a ``Report`` envelope carrying the toolkit version and
the fingerprints of its inputs. Field order is fixed by the models, so equal
inputs give byte-identical output.
"""
import hashlib
from typing import Any, Dict, List, Optional, Tuple

from pydantic import Field

from src import __version__
from src.models.base import ToolkitModel
from src.models.group import FiniteGroup, Homomorphism, SubgroupRef
from src.models.variety import VarietyPresentation


class GroupSummary(ToolkitModel):
    name: str
    order: int
    fingerprint: str
    abelian: bool
    exponent: int
    order_profile: List[Tuple[int, int]]
    generators: List[str]

    @classmethod
    def of(cls, group: FiniteGroup) -> "GroupSummary":
        return cls(
            name=group.name,
            order=group.order,
            fingerprint=group.fingerprint,
            abelian=group.is_abelian,
            exponent=group.exponent,
            order_profile=list(group.order_profile),
            generators=[group.label(g) for g in group.generating_set],
        )


class SubgroupSummary(ToolkitModel):
    order: int
    elements: List[int]
    labels: List[str]
    generators: List[str]

    @classmethod
    def of(cls, subgroup: SubgroupRef) -> "SubgroupSummary":
        parent = subgroup.parent
        return cls(
            order=subgroup.order,
            elements=list(subgroup.elements),
            labels=subgroup.element_labels(),
            generators=[parent.label(g) for g in subgroup.generators],
        )


class HomSummary(ToolkitModel):
    domain: str
    codomain: str
    image: List[int]
    injective: bool
    kernel_order: int

    @classmethod
    def of(cls, hom: Homomorphism) -> "HomSummary":
        return cls(
            domain=hom.domain.name,
            codomain=hom.codomain.name,
            image=[int(v) for v in hom.image],
            injective=hom.is_injective,
            kernel_order=hom.kernel().order,
        )


class PairSummary(ToolkitModel):
    target: str
    f: List[int]
    g: List[int]
    equalizer_order: int


class ApproxSummary(ToolkitModel):
    subgroup: SubgroupSummary
    query: SubgroupSummary
    vacuous: bool
    trivial: bool
    catalog_fingerprint: str
    targets: List[str]
    contributing_pairs: List[PairSummary]


class WitnessSummary(ToolkitModel):
    kind: str
    status: str
    target_order: Optional[int] = None
    equalizer: Optional[SubgroupSummary] = None
    checks: Dict[str, bool] = Field(default_factory=dict)
    reason: Optional[str] = None
    maps: Dict[str, List[int]] = Field(default_factory=dict)


class SandwichSummary(ToolkitModel):
    status: str
    variety: str
    kernel: SubgroupSummary
    inner: SubgroupSummary
    inner_provenance: str
    lower: SubgroupSummary
    upper: SubgroupSummary
    dominion: Optional[SubgroupSummary] = None
    approx: Optional[ApproxSummary] = None
    rules_fired: List[str]
    witnesses: List[WitnessSummary] = Field(default_factory=list)
    stable: Optional[bool] = None
    targets_complete: bool = False
    notes: List[str] = Field(default_factory=list)


class Report(ToolkitModel):
    """Envelope for every JSON report."""

    version: str = Field(default=__version__)
    command: str
    fingerprints: Dict[str, str] = Field(default_factory=dict)
    result: Any = None

    @classmethod
    def build(cls, command: str, result: Any, **fingerprints: str) -> "Report":
        payload = result.to_dict() if isinstance(result, ToolkitModel) else result
        return cls(command=command, fingerprints=dict(sorted(fingerprints.items())), result=payload)


def variety_fingerprint(variety: VarietyPresentation) -> str:
    """Hash of the presentation as written (names, laws, factors and declarations)."""
    return hashlib.sha256(variety.model_dump_json().encode()).hexdigest()
