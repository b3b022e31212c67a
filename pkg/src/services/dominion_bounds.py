"""
Sandwich bounds and certification for dominions in product varieties ``NQ``.

For ``N = Q(G)`` and ``D`` the dominion of ``H ∩ N`` in N, every dominion
query satisfies ``HD ⊆ dom(H) ⊆ H·D'`` where ``D'`` is the normal closure
of ``H ∩ N`` in G. ``certify`` runs every rule that applies, cross-checks
them against each other and against a catalog approximation, and files the
outcome in a ``SandwichReport``.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np
from loguru import logger

from src.config import settings
from src.models.catalog import Catalog, CatalogEntry
from src.models.group import FiniteGroup, SubgroupRef
from src.models.variety import VarietyPresentation
from src.services.backtrack import HomomorphismSearch
from src.services.catalog_builder import catalog_builder
from src.services.groups import (
    closure,
    intersection,
    is_normal,
    join,
    normal_closure,
    normalizer,
    quotient,
    require_subgroup,
    subgroup_as_group,
    subgroup_class_representatives,
)
from src.services.homsearch import ApproxResult, dominion_upper_approx
from src.services.varieties import disjoint_by_exponent, is_member, product, trivial_variety, verbal_subgroup
from src.services.witnesses import (
    InnerDominion,
    McKayWitness,
    WitnessReport,
    bigone_witness,
    mckay_witness,
    nontrivial_member,
)
from src.services.wreath import omega_wreath
from src.utils.errors import (
    BudgetExhaustedError,
    NotASubgroupError,
    OrderCapExceededError,
    PreconditionError,
    ToolkitError,
    UndeclaredExponentError,
    ValidationError,
)

RULE_WHOLE_GROUP = "whole-group"
RULE_TRIVIAL_SUBGROUP = "trivial-subgroup"
RULE_NORMAL_SUBGROUP = "normal-subgroup"
RULE_QUOTIENT_MEMBER = "quotient-variety-member"
RULE_CONTAINED_FACTORS = "contained-factors"
RULE_NORMAL_INTERSECTION = "normal-intersection"
RULE_DISJOINT_INNER = "disjoint-inner-member"
RULE_DISJOINT_CLOSED = "disjoint-absolutely-closed"
RULE_NORMALIZER_SUPPLEMENT = "normalizer-supplement"
RULE_SANDWICH_CLOSED = "sandwich-closed"
RULE_CATALOG_CLOSED = "catalog-closed"


class SandwichStatus(str, Enum):
    CERTIFIED_EXACT = "certified_exact"
    SANDWICH = "sandwich"
    CANDIDATE_NONTRIVIAL = "candidate_nontrivial"


@dataclass(eq=False)
class SandwichReport:
    """Bounds, approximation and certification outcome for one dominion query."""

    group: FiniteGroup
    subgroup: SubgroupRef
    variety: VarietyPresentation
    kernel: SubgroupRef
    inner: InnerDominion
    lower: SubgroupRef
    upper: SubgroupRef
    approx: Optional[ApproxResult] = None
    status: SandwichStatus = SandwichStatus.SANDWICH
    dominion: Optional[SubgroupRef] = None
    certificates: Dict[str, SubgroupRef] = field(default_factory=dict)
    mckay: Optional[McKayWitness] = None
    embedding: Optional[WitnessReport] = None
    stable: Optional[bool] = None
    targets_complete: bool = False
    notes: List[str] = field(default_factory=list)

    @property
    def rules_fired(self) -> List[str]:
        return list(self.certificates)

    @property
    def certified(self) -> bool:
        return self.status == SandwichStatus.CERTIFIED_EXACT


class AbsoluteClosednessEmbedding(NamedTuple):
    target_id: str
    image: SubgroupRef
    meet: SubgroupRef
    closed: bool


@dataclass(eq=False)
class AbsoluteClosednessReport:
    group: FiniteGroup
    variety: VarietyPresentation
    embeddings: List[AbsoluteClosednessEmbedding] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return all(item.closed for item in self.embeddings)


def as_product(variety: VarietyPresentation) -> VarietyPresentation:
    """A basis V is handled as the product of V with the trivial variety."""
    if variety.is_product:
        return variety
    return product(variety, trivial_variety(), name=variety.name)


def _normalizes(group: FiniteGroup, sub: SubgroupRef, by: SubgroupRef) -> bool:
    return by.issubset(normalizer(group, sub))


def inner_dominion(
    group: FiniteGroup,
    kernel: SubgroupRef,
    sub: SubgroupRef,
    inner_variety: VarietyPresentation,
    catalog: Optional[Catalog] = None,
    node_budget: Optional[int] = None,
) -> InnerDominion:
    """
    Dominion of K in N with respect to the normal-subgroup variety.

    K = N and K normal in N are exact (normal subgroups are dominion-closed,
    which covers every K when N is abelian). Otherwise the catalog members of
    the variety, with N itself in front, give an upper approximation; it is
    exact only when it comes back as K.

    Args:
        group: The ambient group G
        kernel: The subgroup N of G
        sub: The subgroup K of N
        inner_variety: Variety containing N
        catalog: Further homomorphism targets
        node_budget: Node budget per search

    Raises:
        NotASubgroupError: If K is not contained in N
        BudgetExhaustedError: If a search exceeds the node budget
    """
    for ref in (kernel, sub):
        require_subgroup(group, ref)
    if not sub.issubset(kernel):
        raise NotASubgroupError("K must be a subgroup of N")
    if sub == kernel:
        return InnerDominion(sub, "exact")
    if _normalizes(group, sub, kernel):
        return InnerDominion(sub, "exact")

    n_group, inclusion = subgroup_as_group(kernel, name=f"N{kernel.order}")
    k_in_n = SubgroupRef.from_mask(n_group, sub.mask[inclusion.image])
    targets = [CatalogEntry("kernel", n_group, "verbal subgroup")] if is_member(n_group, inner_variety) else []
    for entry in catalog or ():
        if is_member(entry.group, inner_variety):
            targets.append(entry)
    approx = dominion_upper_approx(
        n_group, k_in_n, inner_variety, Catalog(tuple(targets)), node_budget=node_budget, validate=False
    )
    result = inclusion.image_of(approx.subgroup)
    provenance = "exact" if approx.is_trivial else "approximate"
    logger.debug(f"Inner dominion in N of order {kernel.order}: order {result.order} ({provenance})")
    return InnerDominion(result, provenance)


def lower_bound(group: FiniteGroup, subgroup: SubgroupRef, inner: InnerDominion) -> SubgroupRef:
    """
    ``HD = ⟨H, D⟩``.

    Raises:
        ToolkitError: If D is exact but H does not normalize it
    """
    require_subgroup(group, subgroup)
    if not _normalizes(group, inner.subgroup, subgroup):
        if inner.exact:
            raise ToolkitError("H does not normalize the exact inner dominion D")
        logger.warning("H does not normalize the approximate D; lower bound is heuristic")
    return closure(group, tuple(subgroup.generators) + tuple(inner.subgroup.generators))


def upper_bound(
    group: FiniteGroup,
    subgroup: SubgroupRef,
    variety: VarietyPresentation,
    kernel: Optional[SubgroupRef] = None,
) -> SubgroupRef:
    """
    ``⟨H, D'⟩`` with D' the normal closure of ``H ∩ N`` in G.

    D' lies in N, so this is never larger than ``NH``.
    """
    require_subgroup(group, subgroup)
    if kernel is None:
        _, outer = as_product(variety).split()
        kernel = verbal_subgroup(group, outer)
    meet = intersection(group, subgroup, kernel)
    closed = normal_closure(group, meet.elements)
    return join(group, subgroup, closed)


def _disjoint(inner: VarietyPresentation, outer: VarietyPresentation) -> bool:
    try:
        return disjoint_by_exponent(inner, outer)
    except UndeclaredExponentError:
        return False


def _witness_catalog(
    report: SandwichReport,
    member: Optional[FiniteGroup],
    cap: int,
) -> Tuple[List[CatalogEntry], bool]:
    """
    Targets that pull the approximation under ``⟨H, D'⟩``.

    The McKay group for ``(G/N, HN/N)`` bounds it by HN; the wreath product
    ``(N/D') ≀ (G/N)`` realises the closedness of ``⟨H, D'⟩``. The flag is
    False when one of them was over ``cap``.
    """
    group, subgroup, kernel = report.group, report.subgroup, report.kernel
    entries: List[CatalogEntry] = []
    complete = True
    q = quotient(group, kernel)

    hn_bar = q.projection.image_of(join(group, subgroup, kernel))
    if member is not None and q.group.order > 1 and not hn_bar.is_whole:
        index = q.group.order // hn_bar.order
        if q.group.order * member.order ** index <= cap:
            witness = mckay_witness(q.group, hn_bar, member, order_cap=cap)
            entries.append(CatalogEntry("witness-mckay", witness.wreath.flat, f"mckay({member.name},G/N)"))
        else:
            complete = False

    d_prime = normal_closure(group, intersection(group, subgroup, kernel).elements)
    if d_prime != kernel:
        over = quotient(group, d_prime)
        n_bar, _ = subgroup_as_group(over.projection.image_of(kernel), name=f"N/D'{d_prime.order}")
        if q.group.order * n_bar.order ** q.group.order <= cap:
            target = omega_wreath(n_bar, q.group, order_cap=cap)
            entries.append(CatalogEntry("witness-wreath", target.flat, "wreath(N/D',G/N)"))
        else:
            complete = False
    return entries, complete


def _approximate(
    report: SandwichReport,
    catalog: Catalog,
    member: Optional[FiniteGroup],
    jobs: Optional[int],
    node_budget: Optional[int],
    witnesses: bool,
) -> Tuple[Optional[ApproxResult], bool]:
    cap = settings.WITNESS_ORDER_CAP
    extra: List[CatalogEntry] = []
    complete = False
    if witnesses:
        try:
            extra, complete = _witness_catalog(report, member, cap)
        except OrderCapExceededError as e:
            report.notes.append(f"witness targets skipped: {e.message}")
    try:
        approx = dominion_upper_approx(
            report.group,
            report.subgroup,
            report.variety,
            catalog.extended(extra),
            jobs=jobs,
            node_budget=node_budget,
            validate=False,
        )
    except BudgetExhaustedError as e:
        logger.warning(f"Approximation abandoned for {report.group.name}: {e.message}")
        report.notes.append(f"approximation abandoned: {e.message}")
        return None, complete
    return approx, complete


def certify(
    group: FiniteGroup,
    subgroup: SubgroupRef,
    variety: VarietyPresentation,
    catalog: Optional[Catalog] = None,
    jobs: Optional[int] = None,
    node_budget: Optional[int] = None,
    approximate: bool = True,
    witnesses: bool = True,
    grow: bool = True,
) -> SandwichReport:
    """
    Run every applicable certification rule for ``dom(H)`` in G.

    A rule that fires records the subgroup it certifies; all fired rules
    must name the same subgroup. Rules that rely on the normal-subgroup
    factor being nontrivial only fire once a nontrivial member of it is
    known. The catalog approximation (with witness targets added) closes
    the gap when it meets H or an exact lower bound. An uncertified query
    whose approximation strictly exceeds H and survives a catalog growth
    step is reported as a candidate for a nontrivial dominion.

    Args:
        group: The group G, a member of ``variety``
        subgroup: The subgroup H
        variety: A product variety, or a basis treated as a product with
            the trivial variety
        catalog: Homomorphism targets, validated against ``variety``
        jobs: Worker processes for the approximation
        node_budget: Node budget per homomorphism search
        approximate: Compute the catalog approximation
        witnesses: Build witness groups up to ``settings.WITNESS_ORDER_CAP``
        grow: Check candidate stability under one growth step

    Raises:
        PreconditionError: If G is not in the variety
        ValidationError: If a catalog entry is not in the variety
        ToolkitError: If two rules certify different subgroups
    """
    require_subgroup(group, subgroup)
    variety = as_product(variety)
    if not is_member(group, variety):
        raise PreconditionError(f"{group.name} is not in the variety {variety.name}")
    catalog = catalog if catalog is not None else Catalog.empty(variety.name)
    for entry in catalog:
        if not is_member(entry.group, variety):
            raise ValidationError(f"catalog entry {entry.id} ({entry.group.name}) is not in {variety.name}")

    inner_v, outer_v = variety.split()
    kernel = verbal_subgroup(group, outer_v)
    meet = intersection(group, subgroup, kernel)
    notes: List[str] = []
    try:
        inner = inner_dominion(group, kernel, meet, inner_v, catalog, node_budget=node_budget)
    except BudgetExhaustedError as e:
        notes.append(f"inner dominion abandoned: {e.message}")
        inner = InnerDominion(kernel, "approximate")
    lower = lower_bound(group, subgroup, inner)

    member = nontrivial_member(inner_v, catalog)
    upper = upper_bound(group, subgroup, variety, kernel)
    if member is None and not outer_v.is_trivial_variety:
        notes.append("no nontrivial member of the normal-subgroup variety is known; upper bound is G")
        upper = SubgroupRef.whole(group)

    report = SandwichReport(group, subgroup, variety, kernel, inner, lower, upper, notes=notes)
    fire = report.certificates
    cap = settings.WITNESS_ORDER_CAP

    if subgroup.is_whole:
        fire[RULE_WHOLE_GROUP] = subgroup
    if subgroup.is_trivial:
        fire[RULE_TRIVIAL_SUBGROUP] = subgroup
    if is_normal(group, subgroup):
        fire[RULE_NORMAL_SUBGROUP] = subgroup

    n_rules = member is not None or outer_v.is_trivial_variety
    if n_rules:
        if kernel.is_trivial and member is not None:
            fire[RULE_QUOTIENT_MEMBER] = subgroup
            index = group.order // subgroup.order
            if witnesses and not subgroup.is_whole and group.order * member.order ** index <= cap:
                report.mckay = mckay_witness(group, subgroup, member, order_cap=cap)
        if member is not None and inner_v.declared_subvariety_of(outer_v) and is_member(group, inner_v):
            fire[RULE_CONTAINED_FACTORS] = subgroup
        if is_normal(group, meet):
            fire[RULE_NORMAL_INTERSECTION] = subgroup

        if _disjoint(inner_v, outer_v):
            if inner.exact and is_member(group, inner_v):
                fire[RULE_DISJOINT_INNER] = inner.subgroup
            h_group, _ = subgroup_as_group(subgroup)
            if is_member(h_group, outer_v):
                fire[RULE_DISJOINT_CLOSED] = subgroup

        if inner.exact and _normalizes(group, inner.subgroup, subgroup):
            if join(group, normalizer(group, inner.subgroup), kernel).is_whole:
                fire[RULE_NORMALIZER_SUPPLEMENT] = lower
                if witnesses and not kernel.is_trivial:
                    try:
                        report.embedding = bigone_witness(
                            group, subgroup, variety, inner, catalog, kernel=kernel, order_cap=cap
                        )
                    except (OrderCapExceededError, BudgetExhaustedError) as e:
                        report.notes.append(f"embedding witness skipped: {e.message}")
                    if report.embedding is not None and report.embedding.certified:
                        if report.embedding.dominion != lower:
                            raise ToolkitError("embedding witness disagrees with the normalizer rule")

        if inner.exact and lower == upper:
            fire[RULE_SANDWICH_CLOSED] = lower

    complete = False
    if approximate:
        report.approx, complete = _approximate(
            report, catalog, member if n_rules else None, jobs, node_budget, witnesses
        )
        report.targets_complete = complete
    if report.approx is not None:
        approx = report.approx.subgroup
        if approx == subgroup:
            fire[RULE_CATALOG_CLOSED] = subgroup
        elif inner.exact and approx == lower:
            fire[RULE_CATALOG_CLOSED] = lower
        if inner.exact and not lower.issubset(approx):
            raise ToolkitError("catalog approximation lost elements of the lower bound")
        if not approx.issubset(upper):
            if complete and n_rules:
                raise ToolkitError("catalog approximation exceeds the upper bound despite the witness targets")
            report.notes.append("approximation is coarser than the upper bound")

    certified = set(fire.values())
    if len(certified) > 1:
        detail = ", ".join(f"{rule}: order {sub.order}" for rule, sub in fire.items())
        raise ToolkitError(f"certification rules disagree ({detail})")

    if certified:
        dominion = next(iter(certified))
        if report.approx is not None and not dominion.issubset(report.approx.subgroup):
            raise ToolkitError("certified dominion is not contained in the catalog approximation")
        if report.approx is not None and report.approx.subgroup != dominion:
            report.notes.append(f"catalog approximation has order {report.approx.subgroup.order}")
        if (report.lower, report.upper) != (dominion, dominion):
            report.notes.append(f"sandwich bounds were orders {report.lower.order}..{report.upper.order}")
        report.lower = report.upper = dominion
        report.dominion = dominion
        report.status = SandwichStatus.CERTIFIED_EXACT
    elif report.approx is not None and not report.approx.vacuous and subgroup < report.approx.subgroup:
        if grow and len(catalog):
            grown = catalog_builder.grow_catalog(catalog, variety)
            again, _ = _approximate(report, grown, member if n_rules else None, jobs, node_budget, witnesses)
            report.stable = again is not None and again.subgroup == report.approx.subgroup
        else:
            report.stable = not grow
        if report.stable:
            report.status = SandwichStatus.CANDIDATE_NONTRIVIAL
            report.notes.append("candidate only: the approximation is not a certificate")

    logger.info(
        f"Certified query in {group.name} (|H| = {subgroup.order}): {report.status.value}, "
        f"rules {report.rules_fired or 'none'}"
    )
    return report


def absolute_closedness_check(
    group: FiniteGroup,
    variety: VarietyPresentation,
    catalog: Catalog,
    node_budget: Optional[int] = None,
) -> AbsoluteClosednessReport:
    """
    Check that G is its own dominion in every catalog overgroup K from ``NQ``.

    For each K in the variety and each embedding of G into K the image
    must meet ``Q(K)`` in a normal subgroup of K.

    Raises:
        PreconditionError: If the factors are not disjoint or G is not in Q
        UndeclaredExponentError: If a factor has no known exponent
    """
    if not variety.is_product:
        raise PreconditionError(f"variety {variety.name!r} is not a product variety")
    inner_v, outer_v = variety.split()
    if not disjoint_by_exponent(inner_v, outer_v):
        raise PreconditionError(f"factors {inner_v.name} and {outer_v.name} are not disjoint")
    if not is_member(group, outer_v):
        raise PreconditionError(f"{group.name} is not in the quotient variety {outer_v.name}")

    report = AbsoluteClosednessReport(group, variety)
    for entry in catalog:
        target = entry.group
        if target.order % group.order or not is_member(target, variety):
            report.skipped.append(entry.id)
            continue
        kernel = verbal_subgroup(target, outer_v)
        seen = set()
        for hom in HomomorphismSearch(group, target, injective=True, node_budget=node_budget):
            image = hom.image_subgroup()
            if image.elements in seen:
                continue
            seen.add(image.elements)
            meet = intersection(target, image, kernel)
            report.embeddings.append(
                AbsoluteClosednessEmbedding(entry.id, image, meet, is_normal(target, meet))
            )
    logger.info(
        f"Absolute closedness of {group.name}: {len(report.embeddings)} embeddings, "
        f"certified={report.certified}"
    )
    return report


def _reverify(report: SandwichReport) -> bool:
    """Recompute the approximation from the recorded pairs."""
    approx = report.approx
    mask = np.ones(report.group.order, dtype=bool)
    members = list(report.subgroup.elements)
    for _, pair in approx.contributing_pairs:
        if not (pair.f.is_homomorphism() and pair.g.is_homomorphism()):
            return False
        if not np.array_equal(pair.f.image[members], pair.g.image[members]):
            return False
        mask &= pair.f.agreement_mask(pair.g)
    return bool(np.array_equal(mask, approx.subgroup.mask))


def _hunt_job(args) -> Optional[SandwichReport]:
    group, subgroup, variety, catalog, node_budget = args
    report = certify(group, subgroup, variety, catalog, node_budget=node_budget)
    if report.status != SandwichStatus.CANDIDATE_NONTRIVIAL:
        return None
    if not report.lower < report.approx.subgroup or not _reverify(report):
        return None
    return report


def hunt_candidates(
    variety: VarietyPresentation,
    max_order: int,
    catalog: Catalog,
    jobs: Optional[int] = None,
    node_budget: Optional[int] = None,
) -> List[SandwichReport]:
    """
    Scan catalog groups of the variety for candidate nontrivial dominions.

    Every conjugacy class of subgroups of every member up to ``max_order``
    is certified; normal subgroups are skipped. Survivors are the
    candidate reports whose approximation strictly exceeds the lower bound
    and whose recorded pairs re-validate. Output order follows the catalog
    and the subgroup order, independent of ``jobs``.
    """
    variety = as_product(variety)
    members = Catalog(tuple(e for e in catalog if is_member(e.group, variety)), catalog.variety)
    queries = []
    for entry in members:
        if entry.order > max_order or entry.order == 1:
            continue
        for sub in subgroup_class_representatives(entry.group):
            if sub.is_whole or sub.is_trivial or is_normal(entry.group, sub):
                continue
            queries.append((entry.group, sub, variety, members, node_budget))
    logger.info(f"Hunting over {len(queries)} queries in {variety.name} up to order {max_order}")

    jobs = jobs if jobs is not None else settings.JOBS
    if jobs > 1 and len(queries) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_hunt_job, queries))
    else:
        results = [_hunt_job(query) for query in queries]
    return [report for report in results if report is not None]
