"""Structural operations on finite groups: subgroups, quotients and products."""
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from src.config import settings
from src.models.group import INDEX_DTYPE, FiniteGroup, Homomorphism, SubgroupRef
from src.utils.errors import (
    InvalidActionError,
    NotASubgroupError,
    NotNormalError,
    OrderCapExceededError,
    ValidationError,
)


class DirectProduct(NamedTuple):
    group: FiniteGroup
    injections: Tuple[Homomorphism, Homomorphism]
    projections: Tuple[Homomorphism, Homomorphism]


class SemidirectProduct(NamedTuple):
    group: FiniteGroup
    normal_injection: Homomorphism
    complement_injection: Homomorphism


class Quotient(NamedTuple):
    group: FiniteGroup
    projection: Homomorphism
    representatives: Tuple[int, ...]


def check_order_cap(order: int, what: str, cap: Optional[int] = None) -> None:
    """
    Refuse constructions above the desk-scale cap.

    Raises:
        OrderCapExceededError: If ``order`` exceeds the cap
    """
    limit = cap if cap is not None else settings.ORDER_CAP
    if order > limit:
        raise OrderCapExceededError(f"{what} would have order {order}, above the order cap {limit}")


def _validate_indices(group: FiniteGroup, elements: Iterable[int]) -> List[int]:
    checked = []
    for x in elements:
        if not isinstance(x, (int, np.integer)) or not 0 <= int(x) < group.order:
            raise ValidationError(f"{x!r} is not an element index of {group.name} (order {group.order})")
        checked.append(int(x))
    return checked


def require_subgroup(group: FiniteGroup, subgroup: SubgroupRef) -> None:
    """
    Raises:
        NotASubgroupError: If ``subgroup`` does not live in ``group``
    """
    if not subgroup.parent.same_table(group):
        raise NotASubgroupError(
            f"subgroup of {subgroup.parent.name} is not a subgroup of {group.name}"
        )


def closure(group: FiniteGroup, generators: Iterable[int]) -> SubgroupRef:
    """
    Smallest subgroup containing ``generators``.

    Raises:
        ValidationError: If an index is invalid
    """
    gens = _validate_indices(group, generators)
    mask = group.closure_mask(gens)
    return SubgroupRef.from_mask(group, mask, tuple(dict.fromkeys(gens)))


def subgroup_from_elements(group: FiniteGroup, elements: Iterable[int]) -> SubgroupRef:
    """
    Wrap an element set that must already be a subgroup.

    Raises:
        NotASubgroupError: If the set is not closed
    """
    members = _validate_indices(group, elements)
    mask = np.zeros(group.order, dtype=bool)
    mask[members] = True
    mask[0] = True
    if not np.array_equal(group.closure_mask(np.flatnonzero(mask)), mask):
        raise NotASubgroupError(f"elements {sorted(set(members))} do not form a subgroup of {group.name}")
    return SubgroupRef.from_mask(group, mask)


def join(group: FiniteGroup, *subgroups: SubgroupRef) -> SubgroupRef:
    """Subgroup generated by the union of the given subgroups."""
    gens: List[int] = []
    for sub in subgroups:
        require_subgroup(group, sub)
        gens.extend(sub.generators)
    return closure(group, gens)


def intersection(group: FiniteGroup, *subgroups: SubgroupRef) -> SubgroupRef:
    mask = np.ones(group.order, dtype=bool)
    for sub in subgroups:
        require_subgroup(group, sub)
        mask &= sub.mask
    return SubgroupRef.from_mask(group, mask)


def conjugate(group: FiniteGroup, g: int, subgroup: SubgroupRef) -> SubgroupRef:
    """Return ``g·H·g⁻¹``."""
    require_subgroup(group, subgroup)
    (g,) = _validate_indices(group, [g])
    members = np.asarray(subgroup.elements, dtype=INDEX_DTYPE)
    conjugated = group.table[group.table[g, members], group.inverses[g]]
    mask = np.zeros(group.order, dtype=bool)
    mask[conjugated] = True
    gens = [group.conj(g, h) for h in subgroup.generators]
    return SubgroupRef.from_mask(group, mask, gens)


def _conjugates_of(group: FiniteGroup, elements: Sequence[int]) -> np.ndarray:
    """Array ``[g, i] = g·s_i·g⁻¹`` over all g."""
    members = np.asarray(elements, dtype=INDEX_DTYPE)
    table = group.table
    return table[table[:, members], group.inverses[:, None]]


def is_normal(group: FiniteGroup, subgroup: SubgroupRef) -> bool:
    require_subgroup(group, subgroup)
    if not subgroup.generators:
        return True
    return bool(subgroup.mask[_conjugates_of(group, subgroup.generators)].all())


def normal_closure(group: FiniteGroup, generators: Iterable[int]) -> SubgroupRef:
    """
    Smallest normal subgroup containing ``generators``.

    Raises:
        ValidationError: If an index is invalid
    """
    gens = _validate_indices(group, generators)
    if not gens:
        return SubgroupRef.trivial(group)
    conjugates = np.unique(_conjugates_of(group, gens))
    mask = group.closure_mask(conjugates)
    return SubgroupRef.from_mask(group, mask)


def normalizer(group: FiniteGroup, subgroup: SubgroupRef) -> SubgroupRef:
    """
    ``{g : gHg⁻¹ = H}``.

    Raises:
        NotASubgroupError: If H is not a subgroup of G
    """
    require_subgroup(group, subgroup)
    if not subgroup.generators:
        return SubgroupRef.whole(group)
    stable = subgroup.mask[_conjugates_of(group, subgroup.generators)].all(axis=1)
    return SubgroupRef.from_mask(group, stable)


def cosets(group: FiniteGroup, subgroup: SubgroupRef) -> List[Tuple[int, ...]]:
    """Left cosets ``xH`` as sorted element tuples, ordered by their least element."""
    require_subgroup(group, subgroup)
    members = np.asarray(subgroup.elements, dtype=INDEX_DTYPE)
    seen = np.zeros(group.order, dtype=bool)
    result = []
    for x in range(group.order):
        if seen[x]:
            continue
        coset = np.unique(group.table[x, members])
        seen[coset] = True
        result.append(tuple(int(c) for c in coset))
    return result


def left_coset_index(group: FiniteGroup, subgroup: SubgroupRef) -> Tuple[np.ndarray, List[int]]:
    """
    Label every element by the index of its left coset.

    Returns:
        ``(coset_of, representatives)`` where representatives are least elements
    """
    members = np.asarray(subgroup.elements, dtype=INDEX_DTYPE)
    least = group.table[:, members].min(axis=1)
    representatives = np.unique(least)
    lookup = np.full(group.order, -1, dtype=np.int64)
    lookup[representatives] = np.arange(representatives.size)
    return lookup[least], [int(r) for r in representatives]


def quotient(group: FiniteGroup, subgroup: SubgroupRef, name: Optional[str] = None) -> Quotient:
    """
    Quotient group on coset representatives plus the canonical projection.

    Raises:
        NotNormalError: If the subgroup is not normal
    """
    if not is_normal(group, subgroup):
        witness = next(
            (g, h)
            for h in subgroup.generators
            for g in range(group.order)
            if group.conj(g, h) not in subgroup
        )
        raise NotNormalError(
            f"subgroup is not normal in {group.name}: "
            f"{group.label(witness[0])}·{group.label(witness[1])}·{group.label(witness[0])}⁻¹ leaves it"
        )
    coset_of, reps = left_coset_index(group, subgroup)
    reps_array = np.asarray(reps, dtype=INDEX_DTYPE)
    table = coset_of[group.table[np.ix_(reps_array, reps_array)]]
    labels = [group.label(r) if subgroup.order == 1 else f"[{group.label(r)}]" for r in reps]
    quotient_group = FiniteGroup(
        table,
        labels=labels,
        name=name or f"{group.name}/N{subgroup.order}",
        check=False,
    )
    projection = Homomorphism(group, quotient_group, coset_of)
    logger.debug(f"Built quotient {quotient_group.name} of order {quotient_group.order}")
    return Quotient(quotient_group, projection, tuple(reps))


def direct_product(left: FiniteGroup, right: FiniteGroup, name: Optional[str] = None) -> DirectProduct:
    """
    Direct product with element (a, b) at index ``a·|right| + b``.

    Raises:
        OrderCapExceededError: If the product is too large
    """
    n1, n2 = left.order, right.order
    check_order_cap(n1 * n2, f"direct product {left.name}×{right.name}")
    t1 = left.table.astype(np.int64)
    t2 = right.table.astype(np.int64)
    table = (t1[:, None, :, None] * n2 + t2[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    labels = [f"({a},{b})" for a in left.labels for b in right.labels]
    group = FiniteGroup(table, labels=labels, name=name or f"{left.name}×{right.name}", check=False)
    index = np.arange(n1 * n2)
    injections = (
        Homomorphism(left, group, np.arange(n1) * n2),
        Homomorphism(right, group, np.arange(n2)),
    )
    projections = (
        Homomorphism(group, left, index // n2),
        Homomorphism(group, right, index % n2),
    )
    return DirectProduct(group, injections, projections)


def semidirect_product(
    normal: FiniteGroup,
    acting: FiniteGroup,
    action: "np.ndarray | Sequence[Sequence[int]]",
    name: Optional[str] = None,
) -> SemidirectProduct:
    """
    Semidirect product N ⋊ K with ``(n1, k1)(n2, k2) = (n1·σ_k1(n2), k1·k2)``.

    Element (n, k) sits at index ``n·|K| + k``.

    Args:
        normal: The group N
        acting: The group K
        action: Row k is the permutation σ_k of N's elements

    Raises:
        InvalidActionError: If some σ_k is not an automorphism or k ↦ σ_k is not a homomorphism
        OrderCapExceededError: If the product is too large
    """
    sigma = np.array(action, dtype=np.int64)
    n, k = normal.order, acting.order
    if sigma.shape != (k, n):
        raise InvalidActionError(f"action must be a {k}×{n} array of permutations, got {sigma.shape}")
    check_order_cap(n * k, f"semidirect product {normal.name}⋊{acting.name}")
    expected = np.arange(n)
    for g in range(k):
        if not np.array_equal(np.sort(sigma[g]), expected):
            raise InvalidActionError(f"action of {acting.label(g)} is not a permutation of {normal.name}")
        bad = np.argwhere(sigma[g][normal.table] != normal.table[np.ix_(sigma[g], sigma[g])])
        if bad.size:
            a, b = (int(v) for v in bad[0])
            raise InvalidActionError(
                f"action of {acting.label(g)} is not an automorphism: "
                f"σ({normal.label(a)}·{normal.label(b)}) != σ({normal.label(a)})·σ({normal.label(b)})"
            )
    for g in range(k):
        for h in range(k):
            if not np.array_equal(sigma[acting.table[g, h]], sigma[g][sigma[h]]):
                raise InvalidActionError(
                    f"action is not a homomorphism: σ({acting.label(g)}·{acting.label(h)}) "
                    f"!= σ({acting.label(g)})∘σ({acting.label(h)})"
                )

    # (n1, k1)(n2, k2) = (n1·σ_k1(n2), k1·k2)
    nt = normal.table.astype(np.int64)
    kt = acting.table.astype(np.int64)
    n1 = np.arange(n)[:, None, None, None]
    k1 = np.arange(k)[None, :, None, None]
    n2 = np.arange(n)[None, None, :, None]
    k2 = np.arange(k)[None, None, None, :]
    new_n = nt[n1, sigma[k1, n2]]
    new_k = kt[k1, k2]
    table = (new_n * k + new_k).reshape(n * k, n * k)
    labels = [f"({a},{b})" for a in normal.labels for b in acting.labels]
    group = FiniteGroup(table, labels=labels, name=name or f"{normal.name}⋊{acting.name}", check=False)
    return SemidirectProduct(
        group,
        Homomorphism(normal, group, np.arange(n) * k),
        Homomorphism(acting, group, np.arange(k)),
    )


def subgroup_as_group(subgroup: SubgroupRef, name: Optional[str] = None) -> Tuple[FiniteGroup, Homomorphism]:
    """
    Re-index a subgroup as a group in its own right.

    Returns:
        ``(group, inclusion)`` with the inclusion into the parent
    """
    parent = subgroup.parent
    members = np.asarray(subgroup.elements, dtype=INDEX_DTYPE)
    lookup = np.full(parent.order, -1, dtype=np.int64)
    lookup[members] = np.arange(members.size)
    table = lookup[parent.table[np.ix_(members, members)]]
    labels = [parent.label(x) for x in members]
    generators = [int(lookup[g]) for g in subgroup.generators]
    group = FiniteGroup(
        table,
        labels=labels,
        generators=generators,
        name=name or f"{parent.name}[{members.size}]",
        check=False,
    )
    return group, Homomorphism(group, parent, members)


def conjugacy_classes(group: FiniteGroup) -> List[Tuple[int, ...]]:
    """Conjugacy classes ordered by their least element."""
    table = group.table
    seen = np.zeros(group.order, dtype=bool)
    classes = []
    for x in range(group.order):
        if seen[x]:
            continue
        members = np.unique(table[table[:, x], group.inverses])
        seen[members] = True
        classes.append(tuple(int(m) for m in members))
    return classes


def subgroups(group: FiniteGroup) -> List[SubgroupRef]:
    """
    Every subgroup, ordered by (order, elements).

    Joins of cyclic subgroups are closed under pairwise joins until stable;
    meant for desk-scale groups.
    """
    cyclic = {}
    for x in range(group.order):
        mask = group.closure_mask([x])
        cyclic[tuple(np.flatnonzero(mask))] = mask
    found = dict(cyclic)
    frontier = list(found.items())
    cyclic_masks = list(cyclic.values())
    while frontier:
        fresh = []
        for _, mask in frontier:
            for cmask in cyclic_masks:
                if np.all(mask[cmask]):
                    continue
                joined = group.closure_mask(np.flatnonzero(mask | cmask))
                key = tuple(np.flatnonzero(joined))
                if key not in found:
                    found[key] = joined
                    fresh.append((key, joined))
        frontier = fresh
    ordered = sorted(found.items(), key=lambda item: (len(item[0]), item[0]))
    return [SubgroupRef.from_mask(group, mask) for _, mask in ordered]


def normal_subgroups(group: FiniteGroup) -> List[SubgroupRef]:
    return [sub for sub in subgroups(group) if is_normal(group, sub)]


def subgroup_class_representatives(group: FiniteGroup) -> List[SubgroupRef]:
    """One subgroup per conjugacy class (the first in (order, elements) order)."""
    reps: List[SubgroupRef] = []
    covered = set()
    for sub in subgroups(group):
        if sub.elements in covered:
            continue
        reps.append(sub)
        for g in range(group.order):
            covered.add(conjugate(group, g, sub).elements)
    return reps
