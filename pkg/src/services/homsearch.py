"""Homomorphism enumeration, equalizers and catalog-based dominion approximations."""
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np
from loguru import logger

from src.config import settings
from src.models.catalog import Catalog
from src.models.group import FiniteGroup, Homomorphism, SubgroupRef
from src.models.variety import VarietyPresentation
from src.services.backtrack import HomomorphismSearch
from src.services.groups import is_normal, quotient, require_subgroup
from src.services.varieties import is_member
from src.utils.errors import NotASubgroupError, ValidationError


@dataclass(frozen=True, eq=False)
class HomPair:
    """Two homomorphisms with common domain and codomain agreeing on ``constraint``."""

    f: Homomorphism
    g: Homomorphism
    constraint: SubgroupRef

    def __post_init__(self) -> None:
        if not (self.f.domain.same_table(self.g.domain) and self.f.codomain.same_table(self.g.codomain)):
            raise ValidationError("pair members must share domain and codomain")
        members = list(self.constraint.elements)
        if not np.array_equal(self.f.image[members], self.g.image[members]):
            raise ValidationError("pair members disagree on the constraint subgroup")


@dataclass(frozen=True, eq=False)
class ApproxResult:
    """Upper approximation of a dominion over a finite catalog."""

    subgroup: SubgroupRef
    query: SubgroupRef
    contributing_pairs: Tuple[Tuple[str, HomPair], ...]
    catalog_fingerprint: str
    vacuous: bool = False
    targets: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def is_trivial(self) -> bool:
        """True when the approximation is the query subgroup itself."""
        return self.subgroup == self.query


def enumerate_homs(
    domain: FiniteGroup,
    codomain: FiniteGroup,
    node_budget: Optional[int] = None,
) -> List[Homomorphism]:
    """
    All homomorphisms ``domain -> codomain``.

    Raises:
        BudgetExhaustedError: If the search exceeds the node budget
    """
    return list(HomomorphismSearch(domain, codomain, node_budget=node_budget))


def agreeing_pairs(
    domain: FiniteGroup,
    codomain: FiniteGroup,
    subgroup: SubgroupRef,
    unordered: bool = False,
    node_budget: Optional[int] = None,
) -> Iterator[HomPair]:
    """
    Stream the pairs ``(f, g)`` with ``f|_H = g|_H``.

    For each f the second map is found by backtracking with the images of
    H's generators forced to f's values.

    Args:
        domain: The group G
        codomain: The target group C
        subgroup: The subgroup H of G
        unordered: Yield each unordered pair once (f before g in enumeration order)
        node_budget: Node budget per search

    Raises:
        BudgetExhaustedError: If a search exceeds the node budget
    """
    require_subgroup(domain, subgroup)
    generators = domain.greedy_generators(np.ones(domain.order, dtype=bool), seed=subgroup.generators)
    first_maps = enumerate_homs(domain, codomain, node_budget)
    rank = {f.key: i for i, f in enumerate(first_maps)}
    for i, f in enumerate(first_maps):
        forced = {s: f(s) for s in generators if s in subgroup}
        search = HomomorphismSearch(domain, codomain, generators=generators, forced=forced, node_budget=node_budget)
        for g in search:
            if unordered and rank[g.key] < i:
                continue
            yield HomPair(f, g, subgroup)


def equalizer(pair: HomPair) -> SubgroupRef:
    """``{x : f(x) = g(x)}``."""
    return SubgroupRef.from_mask(pair.f.domain, pair.f.agreement_mask(pair.g))


def _target_candidates(
    group: FiniteGroup,
    subgroup: SubgroupRef,
    target: FiniteGroup,
    node_budget: Optional[int],
) -> Tuple[np.ndarray, List[Tuple[Homomorphism, Homomorphism]]]:
    """
    Equalizer intersection for one target plus the pairs that shrank it.

    Homomorphisms are grouped by their restriction to H; within a class the
    intersection of all pairwise equalizers is where every member agrees with
    the first one.
    """
    mask = np.ones(group.order, dtype=bool)
    shrinking: List[Tuple[Homomorphism, Homomorphism]] = []
    classes: Dict[Tuple[int, ...], List[Homomorphism]] = defaultdict(list)
    members = list(subgroup.elements)
    for hom in HomomorphismSearch(group, target, node_budget=node_budget):
        classes[tuple(int(v) for v in hom.image[members])].append(hom)
    for restriction in sorted(classes):
        homs = classes[restriction]
        first = homs[0]
        for other in homs[1:]:
            narrowed = mask & first.agreement_mask(other)
            if not np.array_equal(narrowed, mask):
                shrinking.append((first, other))
                mask = narrowed
    return mask, shrinking


def _target_job(args: Tuple[FiniteGroup, SubgroupRef, FiniteGroup, int]):
    group, subgroup, target, node_budget = args
    return _target_candidates(group, subgroup, target, node_budget)


def dominion_upper_approx(
    group: FiniteGroup,
    subgroup: SubgroupRef,
    variety: Optional[VarietyPresentation],
    catalog: Catalog,
    jobs: Optional[int] = None,
    node_budget: Optional[int] = None,
    validate: bool = True,
) -> ApproxResult:
    """
    Intersect the equalizers of all pairs agreeing on H over the catalog targets.

    The result contains the true dominion of H in the variety. Per-target
    candidates may be computed in worker processes; they are merged in
    catalog order, so the result and its contributing pairs do not depend on
    scheduling.

    Args:
        group: The group G
        subgroup: The subgroup H
        variety: Variety every target must belong to (None skips validation)
        catalog: Homomorphism targets
        jobs: Worker processes (defaults to ``settings.JOBS``)
        node_budget: Node budget per homomorphism search
        validate: Recheck variety membership of every target

    Raises:
        ValidationError: If a catalog member is not in the variety
        BudgetExhaustedError: If a search exceeds the node budget
    """
    require_subgroup(group, subgroup)
    if validate and variety is not None:
        for entry in catalog:
            if not is_member(entry.group, variety):
                raise ValidationError(
                    f"catalog entry {entry.id} ({entry.group.name}) is not in the variety {variety.name}"
                )

    if len(catalog) == 0:
        logger.warning("Empty catalog: dominion approximation is vacuous")
        return ApproxResult(SubgroupRef.whole(group), subgroup, (), catalog.fingerprint, vacuous=True)

    jobs = jobs if jobs is not None else settings.JOBS
    budget = node_budget if node_budget is not None else settings.NODE_BUDGET
    entries = list(catalog)
    if jobs > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_target = list(pool.map(_target_job, [(group, subgroup, e.group, budget) for e in entries]))
    else:
        per_target = []
        running = np.ones(group.order, dtype=bool)
        for entry in entries:
            if np.array_equal(running, subgroup.mask):
                break
            result = _target_candidates(group, subgroup, entry.group, budget)
            running &= result[0]
            per_target.append(result)

    mask = np.ones(group.order, dtype=bool)
    contributing: List[Tuple[str, HomPair]] = []
    for entry, (_, candidates) in zip(entries, per_target):
        for f, g in candidates:
            narrowed = mask & f.agreement_mask(g)
            if not np.array_equal(narrowed, mask):
                contributing.append((entry.id, HomPair(f, g, subgroup)))
                mask = narrowed
        if np.array_equal(mask, subgroup.mask):
            break

    result = SubgroupRef.from_mask(group, mask)
    if not subgroup.issubset(result):
        raise NotASubgroupError("equalizer intersection lost elements of H")
    logger.debug(
        f"Dominion approximation in {group.name}: |H| = {subgroup.order}, "
        f"approx order {result.order} over {len(entries)} targets"
    )
    return ApproxResult(
        result,
        subgroup,
        tuple(contributing),
        catalog.fingerprint,
        targets=tuple(entry.id for entry in entries),
    )


def approx_quotient_check(
    group: FiniteGroup,
    subgroup: SubgroupRef,
    kernel: SubgroupRef,
    variety: Optional[VarietyPresentation],
    catalog: Catalog,
) -> bool:
    """
    Check that the image of ``approx_G(H)`` in G/N lies in ``approx_{G/N}(H/N)``.

    Raises:
        ValidationError: If N is not a normal subgroup of G contained in H
    """
    if not is_normal(group, kernel) or not kernel.issubset(subgroup):
        raise ValidationError("N must be a normal subgroup of G contained in H")
    upstairs = dominion_upper_approx(group, subgroup, variety, catalog)
    q = quotient(group, kernel)
    downstairs = dominion_upper_approx(q.group, q.projection.image_of(subgroup), variety, catalog, validate=False)
    return q.projection.image_of(upstairs.subgroup).issubset(downstairs.subgroup)
