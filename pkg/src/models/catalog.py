"""Catalogs of small groups used as homomorphism targets and query corpora."""
import hashlib
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from src.models.group import FiniteGroup
from src.utils.errors import NotFoundError


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    """A catalog group with the construction that produced it."""

    id: str
    group: FiniteGroup
    provenance: str
    memberships: Dict[str, bool] = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.group.order


@dataclass(frozen=True, eq=False)
class Catalog:
    """An ordered collection of catalog entries, optionally tied to a variety name."""

    entries: Tuple[CatalogEntry, ...]
    variety: Optional[str] = None

    @classmethod
    def from_groups(
        cls,
        groups: Iterable[FiniteGroup],
        variety: Optional[str] = None,
        provenance: str = "given",
    ) -> "Catalog":
        entries = []
        for k, group in enumerate(groups):
            entries.append(CatalogEntry(f"g{group.order:05d}_{k}", group, f"{provenance}({group.name})"))
        return cls(tuple(entries), variety)

    @classmethod
    def empty(cls, variety: Optional[str] = None) -> "Catalog":
        return cls((), variety)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[CatalogEntry]:
        return iter(self.entries)

    @property
    def groups(self) -> List[FiniteGroup]:
        return [entry.group for entry in self.entries]

    @property
    def max_order(self) -> int:
        return max((entry.order for entry in self.entries), default=0)

    def get(self, entry_id: str) -> CatalogEntry:
        """
        Raises:
            NotFoundError: If no entry has the id
        """
        for entry in self.entries:
            if entry.id == entry_id:
                return entry
        raise NotFoundError(f"catalog entry not found: {entry_id}")

    def extended(self, extra: Sequence[CatalogEntry]) -> "Catalog":
        """A new catalog with ``extra`` appended; entries already present by table are skipped."""
        known = {entry.group.fingerprint for entry in self.entries}
        added = [entry for entry in extra if entry.group.fingerprint not in known]
        return Catalog(self.entries + tuple(added), self.variety)

    @property
    def fingerprint(self) -> str:
        """Hash of the target set; independent of entry order."""
        digest = hashlib.sha256()
        for fp in sorted(entry.group.fingerprint for entry in self.entries):
            digest.update(fp.encode())
        return digest.hexdigest()
