"""
On-disk formats: group, extension and variety files and catalog manifests.
"""
from typing import Dict, List, Optional, Union

from pydantic import Field, PositiveInt, model_validator

from src.models.base import ToolkitModel


class GroupFile(ToolkitModel):
    """
    A group as a Cayley table.

    ``table[a][b]`` is the index of ``a·b``. The identity may sit anywhere;
    loaders move it to index 0.
    """

    name: Optional[str] = Field(None, description="Human-readable name")
    order: Optional[PositiveInt] = Field(None, description="Group order (checked against the table)")
    table: List[List[int]] = Field(..., description="Cayley table")
    labels: Optional[List[str]] = Field(None, description="Display label per element")
    generators: Optional[List[int]] = Field(None, description="Generating set, as element indices")
    provenance: Optional[str] = Field(None, description="Construction that produced the group")

    @model_validator(mode="after")
    def _check_order(self) -> "GroupFile":
        if self.order is not None and self.order != len(self.table):
            raise ValueError(f"declared order {self.order} differs from table size {len(self.table)}")
        return self


class VarietyFile(ToolkitModel):
    """
    A variety presentation.

    Either ``builtin`` names a standard variety, or ``laws`` gives a basis,
    or ``factors`` gives a product (normal-subgroup factor first). Factors
    are nested variety files or builtin names.
    """

    name: Optional[str] = Field(None, description="Human-readable name")
    builtin: Optional[str] = Field(None, description="Name of a builtin variety")
    laws: List[str] = Field(default_factory=list, description="Laws in x1, x2, … notation")
    factors: List[Union[str, "VarietyFile"]] = Field(default_factory=list, description="Product factors")
    exponent: Optional[PositiveInt] = Field(None, description="Declared exponent")
    abelian: bool = Field(False, description="Declared abelian")
    contained_in: List[str] = Field(default_factory=list, description="Declared containing varieties")

    @model_validator(mode="after")
    def _check_kind(self) -> "VarietyFile":
        given = [bool(self.builtin), bool(self.laws), bool(self.factors)]
        if sum(given) != 1:
            raise ValueError("a variety file needs exactly one of builtin, laws or factors")
        return self


VarietyFile.model_rebuild()


class ExtensionFile(ToolkitModel):
    """
    An extension ``1 → A → G → G/A → 1`` given by G and its normal subgroup A.

    ``group`` is a standard group name or a group file, resolved relative to
    the extension file; ``normal`` is a subgroup specifier for A.
    """

    group: str = Field(..., description="Standard name or group file of G")
    normal: str = Field(..., description="Subgroup specifier of the normal subgroup A")


class ManifestEntry(ToolkitModel):
    id: str = Field(..., description="Entry id")
    file: str = Field(..., description="Group file, relative to the catalog directory")
    provenance: str = Field(..., description="Construction expression")
    memberships: Dict[str, bool] = Field(default_factory=dict, description="Cached variety memberships")
    fingerprint: Optional[str] = Field(None, description="Table fingerprint at save time")


class CatalogManifest(ToolkitModel):
    """``manifest.json`` of a catalog directory."""

    version: str = Field(..., description="Toolkit version that wrote the catalog")
    variety: Optional[str] = Field(None, description="Variety the catalog was built for")
    entries: List[ManifestEntry] = Field(default_factory=list)
