"""Group extensions, transversals and the embedding of an extension into a wreath product."""
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from loguru import logger

from src.models.group import FiniteGroup, Homomorphism, SubgroupRef
from src.services.groups import (
    is_normal,
    normalizer,
    quotient,
    require_subgroup,
    subgroup_as_group,
)
from src.services.transversal_checks import verify_orbit_transversal
from src.services.wreath import WreathGroup, omega_wreath
from src.utils.errors import (
    HypothesisViolatedError,
    NotNormalError,
    PreconditionError,
    ToolkitError,
    ValidationError,
)


@dataclass(frozen=True, eq=False)
class ExtensionPresentation:
    """An exact sequence ``1 → A → G → B → 1`` with ``α: A → G`` and ``π: G → B``."""

    total: FiniteGroup
    kernel: SubgroupRef
    quotient: FiniteGroup
    injection: Homomorphism
    projection: Homomorphism

    @property
    def kernel_group(self) -> FiniteGroup:
        return self.injection.domain

    @classmethod
    def from_normal_subgroup(cls, group: FiniteGroup, kernel: SubgroupRef) -> "ExtensionPresentation":
        """
        Present G as an extension of N by G/N.

        Raises:
            NotNormalError: If N is not normal in G
        """
        require_subgroup(group, kernel)
        if not is_normal(group, kernel):
            raise NotNormalError(f"subgroup of order {kernel.order} is not normal in {group.name}")
        _, injection = subgroup_as_group(kernel, name=f"N{kernel.order}")
        q = quotient(group, kernel, name=f"{group.name}/N{kernel.order}")
        return cls(group, kernel, q.group, injection, q.projection)

    def check(self) -> None:
        """
        Raises:
            ValidationError: If the sequence is not exact
        """
        for hom in (self.injection, self.projection):
            hom.check()
        if not self.injection.is_injective:
            raise ValidationError("injection is not injective")
        if not self.projection.is_surjective:
            raise ValidationError("projection is not surjective")
        if self.injection.image_subgroup() != self.projection.kernel():
            raise ValidationError("image of the injection differs from the kernel of the projection")
        if self.injection.image_subgroup() != self.kernel:
            raise ValidationError("kernel subgroup differs from the image of the injection")


@dataclass(frozen=True, eq=False)
class Transversal:
    """A section ``τ`` of ``π: G → B``; ``lift[b]`` is τ(b)."""

    quotient: FiniteGroup
    lift: np.ndarray
    projection: Homomorphism
    method: str = "default"

    def __post_init__(self) -> None:
        lift = np.array(self.lift, dtype=np.int64)
        lift.setflags(write=False)
        object.__setattr__(self, "lift", lift)

    def __call__(self, b: int) -> int:
        return int(self.lift[b])

    def check(self) -> None:
        """
        Raises:
            ValidationError: If ``π∘τ`` is not the identity or ``τ(e) != e``
        """
        if self.lift.shape != (self.quotient.order,):
            raise ValidationError(f"transversal needs {self.quotient.order} lifts, got {self.lift.shape}")
        if self.lift[0] != 0:
            raise ValidationError("the identity coset must lift to the identity")
        back = self.projection.image[self.lift]
        if not np.array_equal(back, np.arange(self.quotient.order)):
            b = int(np.flatnonzero(back != np.arange(self.quotient.order))[0])
            raise ValidationError(f"lift of {self.quotient.label(b)} lies in the wrong coset")


def default_transversal(
    extension: ExtensionPresentation,
    complement: Optional[SubgroupRef] = None,
) -> Transversal:
    """
    Lowest-index element of each coset, or the complement's element when given.

    Raises:
        ValidationError: If ``complement`` does not meet every coset exactly once
    """
    projection = extension.projection
    image = projection.image
    order = extension.quotient.order
    if complement is not None:
        require_subgroup(extension.total, complement)
        members = np.asarray(complement.elements, dtype=np.int64)
        counts = np.bincount(image[members], minlength=order)
        if not np.all(counts == 1):
            b = int(np.flatnonzero(counts != 1)[0])
            raise ValidationError(
                f"subgroup is not a complement: it meets coset {extension.quotient.label(b)} "
                f"{int(counts[b])} times"
            )
        lift = np.empty(order, dtype=np.int64)
        lift[image[members]] = members
        transversal = Transversal(extension.quotient, lift, projection, method="complement")
    else:
        lift = np.full(order, -1, dtype=np.int64)
        for x in range(extension.total.order - 1, -1, -1):
            lift[image[x]] = x
        transversal = Transversal(extension.quotient, lift, projection)
    transversal.check()
    return transversal


class Embedding(NamedTuple):
    wreath: WreathGroup
    gamma: Homomorphism


def kk_embedding(
    extension: ExtensionPresentation,
    transversal: Transversal,
    order_cap: Optional[int] = None,
) -> Embedding:
    """
    Embed G into ``A ≀ B`` by ``γ(g) = (π(g), φ_g)``.

    ``φ_g(y) = α⁻¹(τ(y·π(g)⁻¹) · g · τ(y)⁻¹)`` for y in B.

    Raises:
        OrderCapExceededError: If the wreath product exceeds the cap
        ValidationError: If the transversal belongs to another projection
    """
    if not transversal.projection.domain.same_table(extension.total) or not transversal.quotient.same_table(
        extension.quotient
    ):
        raise ValidationError("transversal does not belong to this extension")
    transversal.check()
    group = extension.total
    b_group = extension.quotient
    kernel_group = extension.kernel_group
    wreath = omega_wreath(kernel_group, b_group, order_cap=order_cap)

    alpha_inverse = np.full(group.order, -1, dtype=np.int64)
    alpha_inverse[extension.injection.image] = np.arange(kernel_group.order)
    proj = extension.projection.image.astype(np.int64)
    tau = transversal.lift
    points = np.arange(b_group.order)

    shifted = b_group.table[points[None, :], b_group.inverses[proj][:, None]]  # [g, y] = y·π(g)⁻¹
    table = group.table
    u = table[table[tau[shifted], np.arange(group.order)[:, None]], group.inverses[tau][None, :]]
    phi = alpha_inverse[u]
    if np.any(phi < 0):
        raise ToolkitError("transversal values do not land in the kernel; the extension is inconsistent")
    image = proj * wreath.base_order + phi @ wreath.place_values
    gamma = Homomorphism(group, wreath.flat, image)
    gamma.check()
    if not gamma.is_injective:
        raise ToolkitError(f"embedding of {group.name} is not injective")
    logger.debug(f"Embedded {group.name} into {wreath.flat.name}")
    return Embedding(wreath, gamma)


def orbit_transversal(
    group: FiniteGroup,
    kernel: SubgroupRef,
    subgroup: SubgroupRef,
    inner: SubgroupRef,
    extension: Optional[ExtensionPresentation] = None,
) -> Transversal:
    """
    Transversal of N in G adapted to H and D.

    H acts on the cosets of N by ``tN ↦ th⁻¹N``. In each orbit the first
    coset gets the lowest-index representative inside ``N_G(D)`` (e for N
    itself); every other coset ``t'N`` gets ``τ(tN)h⁻¹`` for the first h in
    index order landing in it. The result satisfies

    1. ``τ(N) = e``;
    2. ``τ(yN) ∈ N_G(D)``;
    3. for h in H, ``τ(yh⁻¹N) = τ(yN)h'⁻¹`` for some h' in H.

    Args:
        group: The group G
        kernel: Normal subgroup N
        subgroup: The subgroup H, contained in ``N_G(D)``
        inner: The subgroup D of N
        extension: Extension presentation of G by G/N to reuse

    Raises:
        PreconditionError: If H does not normalize D
        HypothesisViolatedError: If some coset of N misses ``N_G(D)``
    """
    for sub in (kernel, subgroup, inner):
        require_subgroup(group, sub)
    if extension is None:
        extension = ExtensionPresentation.from_normal_subgroup(group, kernel)
    norm = normalizer(group, inner)
    if not subgroup.issubset(norm):
        bad = next(h for h in subgroup if h not in norm)
        raise PreconditionError(f"{group.label(bad)} in H does not normalize D")

    image = extension.projection.image
    b_group = extension.quotient
    table = group.table
    h_elements = np.asarray(subgroup.elements, dtype=np.int64)
    h_inverses = group.inverses[h_elements]
    lift = np.full(b_group.order, -1, dtype=np.int64)
    norm_mask = norm.mask

    for b in range(b_group.order):
        if lift[b] >= 0:
            continue
        if b == 0:
            rep = 0
        else:
            candidates = np.flatnonzero((image == b) & norm_mask)
            if candidates.size == 0:
                coset = np.flatnonzero(image == b)
                shown = ", ".join(group.label(x) for x in coset[:6])
                raise HypothesisViolatedError(
                    f"N_G(D)N != G: the coset {{{shown}{', …' if coset.size > 6 else ''}}} "
                    "does not intersect N_G(D)"
                )
            rep = int(candidates[0])
        lift[b] = rep
        for moved in table[rep, h_inverses]:
            target = int(image[moved])
            if lift[target] < 0:
                lift[target] = int(moved)

    transversal = Transversal(b_group, lift, extension.projection, method="orbit")
    transversal.check()
    verify_orbit_transversal(group, transversal.lift, image, subgroup.elements, inner.elements)
    return transversal
