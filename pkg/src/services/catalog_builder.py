"""Service for building and growing catalogs of small groups in a variety."""
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from src.config import settings
from src.models.catalog import Catalog, CatalogEntry
from src.models.group import FiniteGroup
from src.models.variety import VarietyPresentation
from src.services.backtrack import HomomorphismSearch
from src.services.groups import direct_product, normal_subgroups, quotient, semidirect_product
from src.services.isomorphism import isomorphic
from src.services.standard_groups import STANDARD_GROUPS, cyclic, dihedral
from src.services.varieties import is_member
from src.services.wreath import omega_wreath
from src.utils.errors import OrderCapExceededError, ValidationError

CONSTRUCTORS = ("cyclic", "dihedral", "standard", "direct", "semidirect", "wreath", "quotient")

# A construction task: (kind, provenance, ingredients).
Task = Tuple[str, str, tuple]


def _automorphisms(group: FiniteGroup) -> List[np.ndarray]:
    return [hom.image for hom in HomomorphismSearch(group, group, injective=True)]


def _power_action(automorphism: np.ndarray, k: int) -> np.ndarray:
    rows = [np.arange(automorphism.size)]
    for _ in range(1, k):
        rows.append(automorphism[rows[-1]])
    return np.array(rows)


def _construct(task: Task) -> Optional[Tuple[str, FiniteGroup]]:
    """Run one construction; None when it exceeds the order cap."""
    kind, provenance, args = task
    try:
        if kind == "direct":
            group = direct_product(*args).group
        elif kind == "semidirect":
            normal, k, automorphism = args
            acting = cyclic(k)
            group = semidirect_product(normal, acting, _power_action(automorphism, k), name=provenance).group
        elif kind == "wreath":
            group = omega_wreath(*args).flat
        elif kind == "quotient":
            parent, kernel = args
            group = quotient(parent, kernel, name=provenance).group
        else:
            raise ValidationError(f"unknown constructor {kind!r}")
    except OrderCapExceededError as e:
        logger.info(f"Skipping {provenance}: {e.message}")
        return None
    return provenance, group


def _is_new(group: FiniteGroup, kept: Sequence[FiniteGroup]) -> bool:
    return all(isomorphic(group, other) is None for other in kept if other.order == group.order)


class CatalogBuilder:
    """Builds deduplicated catalogs of variety members from standard constructions."""

    def __init__(self, jobs: Optional[int] = None):
        self.jobs = jobs

    def _run(self, tasks: List[Task]) -> List[Tuple[str, FiniteGroup]]:
        jobs = self.jobs if self.jobs is not None else settings.JOBS
        if jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_construct, tasks))
        else:
            results = [_construct(task) for task in tasks]
        return [result for result in results if result is not None]

    @staticmethod
    def _seeds(max_order: int, constructors: Iterable[str]) -> List[Tuple[str, FiniteGroup]]:
        seeds = []
        if "cyclic" in constructors:
            seeds += [(f"cyclic({n})", cyclic(n)) for n in range(1, max_order + 1)]
        if "dihedral" in constructors:
            seeds += [(f"dihedral({n})", dihedral(n)) for n in range(3, max_order // 2 + 1)]
        if "standard" in constructors:
            for name, factory in STANDARD_GROUPS.items():
                group = factory()
                if group.order <= max_order:
                    seeds.append((f"standard({name})", group))
        return seeds

    @staticmethod
    def _tasks(
        members: Sequence[Tuple[str, FiniteGroup]],
        fresh: Sequence[Tuple[str, FiniteGroup]],
        max_order: int,
        constructors: Iterable[str],
    ) -> List[Task]:
        """Constructions with at least one ingredient first seen in the last round."""
        tasks: List[Task] = []
        new_ids = {id(g) for _, g in fresh}
        nontrivial = [g for _, g in members if g.order > 1]
        if "direct" in constructors:
            for i, a in enumerate(nontrivial):
                for b in nontrivial[i:]:
                    if (id(a) in new_ids or id(b) in new_ids) and a.order * b.order <= max_order:
                        tasks.append(("direct", f"direct({a.name},{b.name})", (a, b)))
        if "semidirect" in constructors:
            for normal in nontrivial:
                if id(normal) not in new_ids or 2 * normal.order > max_order:
                    continue
                automorphisms = _automorphisms(normal)
                identity = np.arange(normal.order)
                for k in range(2, max_order // normal.order + 1):
                    for index, automorphism in enumerate(automorphisms):
                        if np.array_equal(automorphism, identity):
                            continue
                        if not np.array_equal(_power_action(automorphism, k + 1)[-1], identity):
                            continue
                        tasks.append((
                            "semidirect",
                            f"semidirect({normal.name},C{k},aut{index})",
                            (normal, k, automorphism),
                        ))
        if "wreath" in constructors:
            for a in nontrivial:
                for b in nontrivial:
                    if (id(a) in new_ids or id(b) in new_ids) and b.order * a.order ** b.order <= max_order:
                        tasks.append(("wreath", f"wreath({a.name},{b.name})", (a, b)))
        if "quotient" in constructors:
            for _, parent in fresh:
                for kernel in normal_subgroups(parent):
                    if kernel.is_trivial or kernel.is_whole:
                        continue
                    tasks.append((
                        "quotient",
                        f"quotient({parent.name},N{kernel.order}:{','.join(map(str, kernel.elements))})",
                        (parent, kernel),
                    ))
        return tasks

    @staticmethod
    def _merge(
        found: Sequence[Tuple[str, FiniteGroup]],
        kept: List[Tuple[str, FiniteGroup]],
    ) -> List[Tuple[str, FiniteGroup]]:
        """Serial dedupe in (order, provenance) order; returns the newly kept pairs."""
        fresh = []
        for provenance, group in sorted(found, key=lambda item: (item[1].order, item[0])):
            if _is_new(group, [g for _, g in kept]):
                kept.append((provenance, group))
                fresh.append((provenance, group))
        return fresh

    def build_catalog(
        self,
        variety: VarietyPresentation,
        max_order: int,
        constructors: Optional[Sequence[str]] = None,
    ) -> Catalog:
        """
        Build every group up to ``max_order`` reachable by the constructors that lies in ``variety``.

        Constructions repeat over the members found so far until no new
        isomorphism class appears. Constructions that exceed the order cap are
        skipped with a log line.

        Args:
            variety: The variety every entry must belong to
            max_order: Largest group order in the catalog
            constructors: Subset of ``CONSTRUCTORS`` (defaults to all)

        Returns:
            Catalog ordered by (order, provenance), no two entries isomorphic

        Raises:
            ValidationError: If a constructor name is unknown or max_order < 1
        """
        constructors = tuple(constructors) if constructors is not None else CONSTRUCTORS
        unknown = set(constructors) - set(CONSTRUCTORS)
        if unknown:
            raise ValidationError(f"unknown constructors: {', '.join(sorted(unknown))}")
        if max_order < 1:
            raise ValidationError(f"max order must be positive, got {max_order}")

        pool: List[Tuple[str, FiniteGroup]] = []
        members: List[Tuple[str, FiniteGroup]] = []
        fresh = self._merge(self._seeds(max_order, constructors), pool)
        while fresh:
            members += [(p, g) for p, g in fresh if is_member(g, variety)]
            tasks = self._tasks(members, fresh, max_order, constructors)
            fresh = self._merge(self._run(tasks), pool)
            logger.debug(f"Catalog round: {len(tasks)} constructions, {len(fresh)} new classes")

        members.sort(key=lambda item: (item[1].order, item[0]))
        entries = [
            CatalogEntry(f"g{group.order:05d}_{k}", group, provenance, {variety.name: True})
            for k, (provenance, group) in enumerate(members)
        ]
        logger.info(f"Built catalog for {variety.name} up to order {max_order}: {len(entries)} entries")
        return Catalog(tuple(entries), variety.name)

    def grow_catalog(
        self,
        catalog: Catalog,
        variety: VarietyPresentation,
        max_order: Optional[int] = None,
    ) -> Catalog:
        """
        One growth step: pairwise direct products and, for a product variety
        ``NQ``, regular wreath products of an N-entry by a Q-entry.

        New groups are capped at ``max_order`` (default twice the largest
        entry, never above ``settings.WITNESS_ORDER_CAP``), checked for
        membership and deduplicated against the catalog.
        """
        limit = max_order if max_order is not None else 2 * catalog.max_order
        limit = min(limit, settings.WITNESS_ORDER_CAP)
        groups = [entry.group for entry in catalog if entry.order > 1]
        tasks: List[Task] = []
        for i, a in enumerate(groups):
            for b in groups[i:]:
                if a.order * b.order <= limit:
                    tasks.append(("direct", f"direct({a.name},{b.name})", (a, b)))
        if variety.is_product:
            inner, outer = variety.split()
            inner_groups = [g for g in groups if is_member(g, inner)]
            outer_groups = [g for g in groups if is_member(g, outer)]
            for a in inner_groups:
                for b in outer_groups:
                    if b.order * a.order ** b.order <= limit:
                        tasks.append(("wreath", f"wreath({a.name},{b.name})", (a, b)))

        kept = [(entry.provenance, entry.group) for entry in catalog]
        fresh = self._merge([item for item in self._run(tasks) if is_member(item[1], variety)], kept)
        start = len(catalog)
        extra = [
            CatalogEntry(f"g{group.order:05d}_{start + k}", group, provenance, {variety.name: True})
            for k, (provenance, group) in enumerate(fresh)
        ]
        logger.debug(f"Grew catalog by {len(extra)} entries (orders up to {limit})")
        return catalog.extended(extra)

    @staticmethod
    def recheck_memberships(catalog: Catalog, variety: VarietyPresentation) -> Dict[str, bool]:
        """Membership of every entry, recomputed."""
        return {entry.id: is_member(entry.group, variety) for entry in catalog}


# Create a singleton instance
catalog_builder = CatalogBuilder()
