"""Repository for group files and subgroup specifiers."""
import json
import re
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np
from loguru import logger
from pydantic import ValidationError as SchemaError

from src.models.files import ExtensionFile, GroupFile
from src.models.group import FiniteGroup, SubgroupRef
from src.services.groups import closure, is_normal, subgroup_from_elements
from src.services.standard_groups import named_group
from src.utils.errors import GroupAxiomError, NotFoundError, NotNormalError, ValidationError

_INDEX_LIST = re.compile(r"^\[?\s*\d+(\s*,\s*\d+)*\s*\]?$")


def _identity_first(data: GroupFile) -> FiniteGroup:
    """Build the group, moving the identity element to index 0 when needed."""
    table = np.array(data.table, dtype=np.int64)
    order = len(data.table)
    if table.ndim != 2 or table.shape != (order, order):
        raise GroupAxiomError("shape", f"table must be square, got {table.shape}")
    if table.min() < 0 or table.max() >= order:
        bad = np.argwhere((table < 0) | (table >= order))[0]
        raise GroupAxiomError(
            "closure",
            f"entry table[{bad[0]}][{bad[1]}] = {table[bad[0], bad[1]]} is not an element index < {order}",
            (int(bad[0]), int(bad[1])),
        )
    points = np.arange(order)
    rows = np.flatnonzero((table == points[None, :]).all(axis=1) & (table == points[:, None]).all(axis=0))
    if rows.size == 0:
        raise GroupAxiomError("identity", "no element is a two-sided identity")
    e = int(rows[0])
    labels = data.labels
    generators = data.generators
    if e != 0:
        perm = np.array([e] + [x for x in range(order) if x != e])
        back = np.empty(order, dtype=np.int64)
        back[perm] = points
        table = back[table[np.ix_(perm, perm)]]
        labels = [labels[p] for p in perm] if labels is not None else None
        generators = [int(back[g]) for g in generators] if generators is not None else None
        logger.debug(f"Re-indexed group so that element {e} is the identity")
    return FiniteGroup(table, labels=labels, generators=generators, name=data.name)


class GroupRepository:
    """Repository for reading and writing group files."""

    def load(self, path: Union[str, Path]) -> FiniteGroup:
        """
        Load a group file, or a standard group by name (``C6``, ``S3``, …).

        Args:
            path: JSON group file, or a standard group name

        Returns:
            The group with every axiom checked

        Raises:
            NotFoundError: If the file does not exist
            GroupAxiomError: If the table is not a group table
            ValidationError: If the file cannot be decoded
        """
        path = Path(path)
        if not path.exists() and path.suffix == "":
            return named_group(str(path))
        try:
            if not path.exists():
                raise NotFoundError(f"group file not found: {path}")
            raw = json.loads(path.read_text(encoding="utf-8"))
            data = GroupFile.model_validate(raw)
            group = _identity_first(data)
            if group.name == f"G{group.order}" and data.name is None:
                group = group.renamed(path.stem)
            logger.debug(f"Loaded group {group.name} of order {group.order} from {path}")
            return group
        except (NotFoundError, GroupAxiomError, ValidationError):
            raise
        except SchemaError as e:
            logger.error(f"Invalid group file {path}: {e}")
            raise ValidationError(f"invalid group file {path}: {e.errors()[0]['msg']}")
        except Exception as e:
            logger.error(f"Failed to load group file {path}: {e}")
            raise ValidationError(f"failed to load group file {path}: {e}")

    def save(self, group: FiniteGroup, path: Union[str, Path], provenance: Optional[str] = None) -> Path:
        """
        Write a group file.

        Raises:
            ValidationError: If the file cannot be written
        """
        path = Path(path)
        try:
            data = GroupFile(**group.to_dict(), provenance=provenance)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps(data.to_dict(), indent=1) + "\n", encoding="utf-8")
            logger.debug(f"Saved group {group.name} to {path}")
            return path
        except Exception as e:
            logger.error(f"Failed to save group {group.name}: {e}")
            raise ValidationError(f"failed to save group {group.name} to {path}: {e}")

    def load_extension(self, path: Union[str, Path]) -> Tuple[FiniteGroup, SubgroupRef]:
        """
        Load an extension file as the pair ``(G, A)``.

        Raises:
            NotFoundError: If the extension or group file does not exist
            NotNormalError: If A is not normal in G
            ValidationError: If the file cannot be decoded
        """
        path = Path(path)
        if not path.exists():
            raise NotFoundError(f"extension file not found: {path}")
        try:
            data = ExtensionFile.model_validate(json.loads(path.read_text(encoding="utf-8")))
        except SchemaError as e:
            raise ValidationError(f"invalid extension file {path}: {e.errors()[0]['msg']}")
        except json.JSONDecodeError as e:
            raise ValidationError(f"invalid extension file {path}: {e}")
        group_path = path.parent / data.group
        group = self.load(group_path if group_path.suffix else data.group)
        normal = self.parse_subgroup(group, data.normal)
        if not is_normal(group, normal):
            raise NotNormalError(f"{data.normal!r} is not a normal subgroup of {group.name}")
        logger.debug(f"Loaded extension of order {group.order} by A of order {normal.order} from {path}")
        return group, normal

    @staticmethod
    def parse_subgroup(group: FiniteGroup, spec: str) -> SubgroupRef:
        """
        Resolve a subgroup specifier.

        An index list such as ``1,3`` or ``[0, 2]`` names the elements of the
        subgroup. Anything else is a generator label, or a whitespace-separated
        list of them. An empty specifier or ``e`` is the trivial subgroup.

        Raises:
            NotASubgroupError: If an index list is not a subgroup
            NotFoundError: If a label is unknown
        """
        spec = spec.strip()
        if spec in ("", "e", "{}"):
            return SubgroupRef.trivial(group)
        if _INDEX_LIST.match(spec):
            indices: List[int] = [int(tok) for tok in re.findall(r"\d+", spec)]
            return subgroup_from_elements(group, indices)
        if spec in group.labels:
            return closure(group, [group.index_of(spec)])
        return closure(group, [group.index_of(token) for token in spec.split()])


# Create a singleton instance
group_repo = GroupRepository()
