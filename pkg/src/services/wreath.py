"""
Permutational wreath products ``N ≀_Ω K`` and the maps between them.

An element is a pair ``(k, φ)`` with ``k ∈ K`` and ``φ: Ω → N``. With K
acting on Ω from the right, the product is
``(k, φ)(ℓ, ψ) = (kℓ, φ^ℓ ψ)`` where ``φ^ℓ(ω) = φ(ω·ℓ⁻¹)``.
The pair sits at flat index ``k·|N|^|Ω| + Σ φ(ω)·|N|^ω``, so the identity
is index 0.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from src.models.group import INDEX_DTYPE, FiniteGroup, Homomorphism, SubgroupRef
from src.models.variety import VarietyPresentation
from src.services.groups import check_order_cap, left_coset_index, require_subgroup, subgroup_as_group
from src.services.varieties import is_member
from src.utils.errors import InvalidActionError, PreconditionError, ValidationError

# Target number of table cells materialised per block while filling a wreath table.
_BLOCK_CELLS = 1 << 22


@dataclass(frozen=True, eq=False)
class GroupAction:
    """
    A right action of ``group`` on ``{0, …, domain_size-1}``.

    ``perms[g][ω]`` is ``ω·g``; consistency means ``perms[g·h] = perms[h] ∘ perms[g]``.
    """

    group: FiniteGroup
    domain_size: int
    perms: np.ndarray
    description: str = "custom"

    def __post_init__(self) -> None:
        perms = np.array(self.perms, dtype=np.int64)
        if perms.shape != (self.group.order, self.domain_size):
            raise InvalidActionError(
                f"action needs a {self.group.order}×{self.domain_size} array, got {perms.shape}"
            )
        perms.setflags(write=False)
        object.__setattr__(self, "perms", perms)

    def check(self) -> None:
        """
        Raises:
            InvalidActionError: If the identity moves a point or the action is inconsistent
        """
        points = np.arange(self.domain_size)
        if not np.array_equal(self.perms[0], points):
            raise InvalidActionError("the identity must act trivially")
        for g in range(self.group.order):
            if not np.array_equal(np.sort(self.perms[g]), points):
                raise InvalidActionError(f"{self.group.label(g)} does not act as a permutation")
        table = self.group.table
        for g in range(self.group.order):
            composed = self.perms[:, self.perms[g]]  # row h: ω ↦ (ω·g)·h
            if not np.array_equal(self.perms[table[g]], composed):
                h = int(np.flatnonzero((self.perms[table[g]] != composed).any(axis=1))[0])
                raise InvalidActionError(
                    f"action is not a right action: ω·({self.group.label(g)}·{self.group.label(h)}) "
                    f"!= (ω·{self.group.label(g)})·{self.group.label(h)}"
                )

    @cached_property
    def inverse_perms(self) -> np.ndarray:
        """``inverse_perms[g][ω] = ω·g⁻¹``."""
        return self.perms[self.group.inverses]

    def stabilizer(self, point: int) -> SubgroupRef:
        return SubgroupRef.from_mask(self.group, self.perms[:, point] == point)


def regular_action(group: FiniteGroup) -> GroupAction:
    """Right regular action ``ω·g = ωg`` on the group's own elements."""
    return GroupAction(group, group.order, group.table.T.copy(), description="regular")


def coset_action(group: FiniteGroup, subgroup: SubgroupRef) -> GroupAction:
    """
    Action on the left cosets of ``subgroup`` by left multiplication.

    Written as a right action ``ω·g = g⁻¹ω``. Cosets are numbered by their
    least element, so the coset ``H`` itself is point 0 and its stabilizer is H.
    """
    require_subgroup(group, subgroup)
    coset_of, reps = left_coset_index(group, subgroup)
    reps_array = np.asarray(reps, dtype=np.int64)
    perms = coset_of[group.table[group.inverses[:, None], reps_array[None, :]]]
    return GroupAction(group, len(reps), perms, description=f"cosets of a subgroup of order {subgroup.order}")


@dataclass(frozen=True, eq=False)
class WreathGroup:
    """A materialised wreath product with its coordinates and canonical maps."""

    base: FiniteGroup
    top: FiniteGroup
    action: GroupAction
    flat: FiniteGroup
    top_embedding: Homomorphism

    @property
    def degree(self) -> int:
        return self.action.domain_size

    @property
    def base_order(self) -> int:
        return self.base.order ** self.degree

    @cached_property
    def place_values(self) -> np.ndarray:
        return self.base.order ** np.arange(self.degree, dtype=np.int64)

    def encode(self, k: int, phi: Sequence[int]) -> int:
        if len(phi) != self.degree:
            raise ValidationError(f"function must have {self.degree} values, got {len(phi)}")
        return int(k) * self.base_order + int(np.dot(np.asarray(phi, dtype=np.int64), self.place_values))

    def decode(self, index: int) -> Tuple[int, Tuple[int, ...]]:
        k, rest = divmod(int(index), self.base_order)
        phi = (rest // self.place_values) % self.base.order
        return k, tuple(int(v) for v in phi)

    def decode_all(self) -> Tuple[np.ndarray, np.ndarray]:
        """Arrays ``(k, φ)`` for every flat index; φ has one column per point."""
        index = np.arange(self.flat.order, dtype=np.int64)
        k, rest = np.divmod(index, self.base_order)
        phi = (rest[:, None] // self.place_values[None, :]) % self.base.order
        return k, phi

    def support(self, index: int) -> Tuple[int, ...]:
        _, phi = self.decode(index)
        return tuple(point for point, value in enumerate(phi) if value != 0)

    @cached_property
    def projection(self) -> Homomorphism:
        """Canonical projection ``(k, φ) ↦ k`` onto the top group."""
        return Homomorphism(self.flat, self.top, np.arange(self.flat.order) // self.base_order)

    @cached_property
    def base_subgroup(self) -> SubgroupRef:
        """The base group ``N^Ω``, the kernel of the projection."""
        return SubgroupRef.from_mask(self.flat, np.arange(self.flat.order) < self.base_order)

    @cached_property
    def base_embedding(self) -> Homomorphism:
        """Inclusion of the base group ``N^Ω``, realised as a group of its own."""
        _, inclusion = subgroup_as_group(self.base_subgroup, name=f"{self.base.name}^{self.degree}")
        return inclusion

    def coordinate_embedding(self, point: int) -> Homomorphism:
        """``n ↦ (e, φ)`` with φ supported on ``point`` and ``φ(point) = n``."""
        if not 0 <= point < self.degree:
            raise ValidationError(f"point {point} is outside Ω of size {self.degree}")
        return Homomorphism(self.base, self.flat, np.arange(self.base.order) * self.place_values[point])


def _wreath_table(base: FiniteGroup, top: FiniteGroup, action: GroupAction) -> np.ndarray:
    n, m = base.order, action.domain_size
    base_order = n ** m
    size = top.order * base_order
    place = n ** np.arange(m, dtype=np.int64)
    index = np.arange(size, dtype=np.int64)
    k_all, rest = np.divmod(index, base_order)
    phi_all = (rest[:, None] // place[None, :]) % n
    shift = action.inverse_perms[k_all]  # [b, ω] = ω·ℓ_b⁻¹
    base_table = base.table.astype(np.int64)
    top_table = top.table.astype(np.int64)

    table = np.empty((size, size), dtype=INDEX_DTYPE)
    rows_per_block = max(1, _BLOCK_CELLS // max(1, size * max(m, 1)))
    for start in range(0, size, rows_per_block):
        rows = slice(start, min(start + rows_per_block, size))
        k_new = top_table[k_all[rows][:, None], k_all[None, :]]
        if m:
            shifted = phi_all[rows][:, shift]  # [a, b, ω] = φ_a(ω·ℓ_b⁻¹)
            values = base_table[shifted, phi_all[None, :, :]]
            encoded = values @ place
        else:
            encoded = 0
        table[rows] = k_new * base_order + encoded
    return table


def omega_wreath(
    base: FiniteGroup,
    top: FiniteGroup,
    action: Optional[GroupAction] = None,
    name: Optional[str] = None,
    order_cap: Optional[int] = None,
) -> WreathGroup:
    """
    Build ``N ≀_Ω K`` for a finite K-set Ω.

    Args:
        base: The group N
        top: The group K
        action: Right action of K on Ω (defaults to the right regular action)
        name: Name for the flat group
        order_cap: Override for the configured order cap

    Raises:
        OrderCapExceededError: If ``|K|·|N|^|Ω|`` exceeds the cap
        InvalidActionError: If the action is not a right action of K
    """
    action = action if action is not None else regular_action(top)
    if not action.group.same_table(top):
        raise InvalidActionError(f"action is by {action.group.name}, not by {top.name}")
    action.check()
    size = top.order * base.order ** action.domain_size
    check_order_cap(size, f"wreath product {base.name}≀{top.name}", order_cap)

    table = _wreath_table(base, top, action)
    base_order = base.order ** action.domain_size
    place = base.order ** np.arange(action.domain_size)

    labels: List[str] = []
    for k in range(top.order):
        for rest in range(base_order):
            phi = (rest // place) % base.order
            labels.append(f"({top.label(k)};{','.join(base.label(v) for v in phi)})")

    default_name = f"{base.name}≀{top.name}"
    if action.description != "regular":
        default_name = f"{base.name}≀_Ω{top.name}"
    flat = FiniteGroup(table, labels=labels, name=name or default_name, check=False)
    top_embedding = Homomorphism(top, flat, np.arange(top.order) * base_order)
    logger.info(f"Built wreath product {flat.name} of order {flat.order}")
    return WreathGroup(base, top, action, flat, top_embedding)


def induced_map(
    f: Homomorphism,
    wreath: WreathGroup,
    target: Optional[WreathGroup] = None,
) -> Homomorphism:
    """
    The induced map ``f*: N ≀_Ω K → M ≀_Ω K``, ``(k, φ) ↦ (k, f∘φ)``.

    Args:
        f: Homomorphism N → M
        wreath: The wreath product over N
        target: Wreath product over M with the same top group and action
            (built when omitted)

    Raises:
        ValidationError: If the groups or actions do not line up
    """
    if not f.domain.same_table(wreath.base):
        raise ValidationError(f"{f!r} does not start at the base {wreath.base.name}")
    if target is None:
        target = omega_wreath(f.codomain, wreath.top, wreath.action)
    elif not (
        target.base.same_table(f.codomain)
        and target.top.same_table(wreath.top)
        and np.array_equal(target.action.perms, wreath.action.perms)
    ):
        raise ValidationError("target wreath product must be over the codomain with the same top group and action")
    k, phi = wreath.decode_all()
    mapped = f.image[phi].astype(np.int64)
    image = k * target.base_order + mapped @ target.place_values
    return Homomorphism(wreath.flat, target.flat, image)


def check_wreath_membership(
    wreath: WreathGroup,
    variety: VarietyPresentation,
) -> bool:
    """
    Test that ``N ≀_Ω K`` lies in the product variety ``NQ``.

    Raises:
        PreconditionError: If the variety is not a product, or the base or
            top group is not in the corresponding factor
    """
    if not variety.is_product:
        raise PreconditionError(f"variety {variety.name!r} is not a product variety")
    inner, outer = variety.split()
    if not is_member(wreath.base, inner):
        raise PreconditionError(f"base group {wreath.base.name} is not in {inner.name}")
    if not is_member(wreath.top, outer):
        raise PreconditionError(f"top group {wreath.top.name} is not in {outer.name}")
    return is_member(wreath.flat, variety)
