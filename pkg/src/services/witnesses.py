"""
Witness constructions: pairs of homomorphisms whose equalizers pin dominions down.

* ``mckay_witness`` separates G from everything outside H when G lies in
  the quotient variety, using a wreath product over the cosets of H.
* ``separating_pair`` finds maps out of N agreeing exactly on D.
* ``bigone_witness`` runs the full embedding pipeline for an extension
  ``N → G → G/N`` and machine-checks the resulting equalizer.
"""
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np
from loguru import logger

from src.models.catalog import Catalog
from src.models.group import FiniteGroup, Homomorphism, SubgroupRef
from src.models.variety import VarietyPresentation
from src.services.backtrack import HomomorphismSearch
from src.services.extensions import (
    Embedding,
    ExtensionPresentation,
    Transversal,
    kk_embedding,
    orbit_transversal,
)
from src.services.groups import (
    check_order_cap,
    closure,
    direct_product,
    intersection,
    is_normal,
    normalizer,
    quotient,
    require_subgroup,
)
from src.services.standard_groups import cyclic, trivial_group
from src.services.varieties import is_member, verbal_subgroup
from src.services.wreath import WreathGroup, coset_action, induced_map, omega_wreath
from src.utils.errors import (
    HypothesisViolatedError,
    PreconditionError,
    SeparationNotFoundError,
    ToolkitError,
)

# Cyclic groups of prime order tried first when a nontrivial member of a variety is needed.
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


class McKayWitness(NamedTuple):
    wreath: WreathGroup
    f: Homomorphism
    g: Homomorphism
    pivot: int
    equalizer: SubgroupRef


class SeparatingPair(NamedTuple):
    target: FiniteGroup
    lam: Homomorphism
    rho: Homomorphism
    method: str
    sources: Tuple[str, ...]

    def agreement(self) -> SubgroupRef:
        return SubgroupRef.from_mask(self.lam.domain, self.lam.agreement_mask(self.rho))


class InnerDominion(NamedTuple):
    subgroup: SubgroupRef
    provenance: str  # "exact" or "approximate"

    @property
    def exact(self) -> bool:
        return self.provenance == "exact"


@dataclass(eq=False)
class WitnessReport:
    """Every intermediate object of the embedding pipeline plus its verdict."""

    group: FiniteGroup
    subgroup: SubgroupRef
    variety: VarietyPresentation
    kernel: SubgroupRef
    inner: InnerDominion
    certified: bool = False
    dominion: Optional[SubgroupRef] = None
    reason: str = ""
    transversal: Optional[Transversal] = None
    embedding: Optional[Embedding] = None
    separating: Optional[SeparatingPair] = None
    target: Optional[WreathGroup] = None
    left: Optional[Homomorphism] = None
    right: Optional[Homomorphism] = None
    equalizer: Optional[SubgroupRef] = None
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "certified" if self.certified else "sandwich_only"


def nontrivial_member(
    variety: VarietyPresentation,
    catalog: Optional[Catalog] = None,
) -> Optional[FiniteGroup]:
    """
    A small nontrivial group in ``variety``: the first cyclic group of prime
    order that belongs, else the smallest nontrivial catalog member.
    """
    for p in _SMALL_PRIMES:
        candidate = cyclic(p)
        if is_member(candidate, variety):
            return candidate
    if catalog is not None:
        for entry in sorted(catalog, key=lambda e: (e.order, e.id)):
            if entry.order > 1 and is_member(entry.group, variety):
                return entry.group
    return None


def mckay_witness(
    group: FiniteGroup,
    subgroup: SubgroupRef,
    member: FiniteGroup,
    variety: Optional[VarietyPresentation] = None,
    order_cap: Optional[int] = None,
) -> McKayWitness:
    """
    Two maps out of G that agree exactly on H.

    K is ``M ≀ G`` over the left cosets of H; f is the top embedding and g is
    f followed by conjugation with the base element supported on the coset H
    with value the first nonidentity element of M.

    Args:
        group: The group G (in the quotient variety when ``variety`` is given)
        subgroup: The subgroup H
        member: A nontrivial group M (in the normal-subgroup variety)
        variety: Product variety used to check the preconditions
        order_cap: Override for the order cap

    Raises:
        PreconditionError: If M is trivial or a membership precondition fails
        OrderCapExceededError: If the wreath product is too large
    """
    require_subgroup(group, subgroup)
    if member.order == 1:
        raise PreconditionError("the wreath coefficient group M must be nontrivial")
    if variety is not None:
        if not variety.is_product:
            raise PreconditionError(f"variety {variety.name!r} is not a product variety")
        inner, outer = variety.split()
        if not is_member(group, outer):
            raise PreconditionError(f"{group.name} is not in the quotient variety {outer.name}")
        if not is_member(member, inner):
            raise PreconditionError(f"{member.name} is not in the normal-subgroup variety {inner.name}")

    action = coset_action(group, subgroup)
    wreath = omega_wreath(member, group, action, name=f"{member.name}≀[G:H]{group.name}", order_cap=order_cap)
    f = wreath.top_embedding
    pivot = wreath.encode(0, [1] + [0] * (wreath.degree - 1))
    table = wreath.flat.table
    conjugated = table[table[pivot, f.image], wreath.flat.inverses[pivot]]
    g = Homomorphism(group, wreath.flat, conjugated)
    eq = SubgroupRef.from_mask(group, f.agreement_mask(g))
    if eq != subgroup:
        raise ToolkitError(
            f"witness equalizer has order {eq.order} but H has order {subgroup.order}; "
            "the coset action is inconsistent"
        )
    logger.debug(f"McKay witness for |H| = {subgroup.order} in {group.name}: K of order {wreath.flat.order}")
    return McKayWitness(wreath, f, g, pivot, eq)


def _diagonal(pairs: List[Tuple[FiniteGroup, Homomorphism, Homomorphism]]) -> Tuple[FiniteGroup, Homomorphism, Homomorphism]:
    target, lam, rho = pairs[0]
    lam_image = lam.image.astype(np.int64)
    rho_image = rho.image.astype(np.int64)
    for next_target, next_lam, next_rho in pairs[1:]:
        product = direct_product(target, next_target)
        lam_image = lam_image * next_target.order + next_lam.image
        rho_image = rho_image * next_target.order + next_rho.image
        target = product.group
    domain = lam.domain
    return target, Homomorphism(domain, target, lam_image), Homomorphism(domain, target, rho_image)


def separating_pair(
    group: FiniteGroup,
    inner: SubgroupRef,
    variety: VarietyPresentation,
    catalog: Optional[Catalog] = None,
    node_budget: Optional[int] = None,
) -> SeparatingPair:
    """
    Homomorphisms ``λ, ρ: N → M`` with M in ``variety`` agreeing exactly on D.

    A normal D in an N from the variety gives ``(N/D, projection, trivial)``.
    Otherwise agreeing pairs into N itself and then into the catalog members
    are scanned; pairs are collected until every element outside D is
    separated by one of them, and several pairs are combined diagonally into
    a direct product.

    Raises:
        SeparationNotFoundError: If some elements outside D cannot be separated
    """
    require_subgroup(group, inner)
    if inner.is_whole:
        trivial = trivial_group()
        zero = Homomorphism.trivial(group, trivial)
        return SeparatingPair(trivial, zero, zero, "whole", ())

    group_in_variety = is_member(group, variety)
    if is_normal(group, inner) and group_in_variety:
        q = quotient(group, inner)
        return SeparatingPair(
            q.group, q.projection, Homomorphism.trivial(group, q.group), "quotient", (group.name,)
        )

    targets: List[Tuple[str, FiniteGroup]] = []
    if group_in_variety:
        targets.append((group.name, group))
    for entry in catalog or ():
        if is_member(entry.group, variety):
            targets.append((entry.id, entry.group))

    unseparated = ~inner.mask
    chosen: List[Tuple[FiniteGroup, Homomorphism, Homomorphism]] = []
    sources: List[str] = []
    generators = group.greedy_generators(np.ones(group.order, dtype=bool), seed=inner.generators)
    for source, target in targets:
        first_maps = list(HomomorphismSearch(group, target, node_budget=node_budget))
        for f in first_maps:
            forced = {s: f(s) for s in generators if s in inner}
            search = HomomorphismSearch(group, target, generators=generators, forced=forced, node_budget=node_budget)
            for g in search:
                disagree = ~f.agreement_mask(g)
                if np.any(disagree & unseparated):
                    if np.array_equal(disagree, ~inner.mask):
                        return SeparatingPair(target, f, g, "catalog", (source,))
                    chosen.append((target, f, g))
                    sources.append(source)
                    unseparated &= ~disagree
                if not unseparated.any():
                    break
            if not unseparated.any():
                break
        if not unseparated.any():
            break

    if unseparated.any():
        raise SeparationNotFoundError(
            f"no separating pair for D of order {inner.order} in {group.name}",
            [int(x) for x in np.flatnonzero(unseparated)],
        )
    size = 1
    for target, _, _ in chosen:
        size *= target.order
    check_order_cap(size, "diagonal separating target")
    target, lam, rho = _diagonal(chosen)
    return SeparatingPair(target, lam, rho, "diagonal", tuple(sources))


def bigone_witness(
    group: FiniteGroup,
    subgroup: SubgroupRef,
    variety: VarietyPresentation,
    inner: InnerDominion,
    catalog: Optional[Catalog] = None,
    kernel: Optional[SubgroupRef] = None,
    order_cap: Optional[int] = None,
) -> WitnessReport:
    """
    Certify ``dom(H) = HD`` through the wreath-product embedding.

    Builds the orbit transversal, the embedding ``γ: G → N ≀ G/N``, a
    separating pair ``λ, ρ: N → M`` and the induced maps into ``M ≀ G/N``,
    then checks that ``λ*γ`` and ``ρ*γ`` (a) agree on H and (b) have an
    equalizer meeting N exactly in D. The report is downgraded to sandwich
    only when D is approximate, when some coset of N misses ``N_G(D)``,
    when no separating pair is found or when the normal-subgroup variety has
    no known nontrivial member.

    Args:
        group: The group G, a member of ``variety``
        subgroup: The subgroup H
        variety: Product variety ``Product(N, Q)``
        inner: Dominion of ``H ∩ N`` in N from the normal-subgroup variety
        catalog: Targets for the separating-pair search
        kernel: Precomputed ``Q(G)``
        order_cap: Override for the order cap on the wreath products

    Raises:
        PreconditionError: If the variety is not a product or G is not a member
        OrderCapExceededError: If a wreath product exceeds the cap
    """
    require_subgroup(group, subgroup)
    if not variety.is_product:
        raise PreconditionError(f"variety {variety.name!r} is not a product variety")
    inner_variety, outer_variety = variety.split()
    if not is_member(group, variety):
        raise PreconditionError(f"{group.name} is not in the variety {variety.name}")
    kernel = kernel if kernel is not None else verbal_subgroup(group, outer_variety)
    d = inner.subgroup
    report = WitnessReport(group, subgroup, variety, kernel, inner)
    if not d.issubset(kernel):
        raise PreconditionError("D must be a subgroup of N")

    # The upper bound dom(H) ⊆ NH needs a nontrivial N unless Q is trivial.
    report.checks["inner_variety_nontrivial"] = (
        outer_variety.is_trivial_variety or nontrivial_member(inner_variety, catalog) is not None
    )
    if not report.checks["inner_variety_nontrivial"]:
        report.reason = f"no nontrivial member of {inner_variety.name} found"
        logger.warning(f"Sandwich only for {group.name}: {report.reason}")
        return report

    norm = normalizer(group, d)
    report.checks["H_normalizes_D"] = subgroup.issubset(norm)
    if not report.checks["H_normalizes_D"]:
        report.reason = "H does not normalize D"
        return report

    extension = ExtensionPresentation.from_normal_subgroup(group, kernel)
    try:
        report.transversal = orbit_transversal(group, kernel, subgroup, d, extension=extension)
    except HypothesisViolatedError as e:
        logger.warning(f"Sandwich only for {group.name}: {e.message}")
        report.checks["normalizer_supplements_N"] = False
        report.reason = e.message
        return report
    report.checks["normalizer_supplements_N"] = True

    report.embedding = kk_embedding(extension, report.transversal, order_cap=order_cap)
    kernel_group = extension.kernel_group
    d_in_kernel = SubgroupRef.from_mask(kernel_group, d.mask[extension.injection.image])
    try:
        report.separating = separating_pair(kernel_group, d_in_kernel, inner_variety, catalog)
    except SeparationNotFoundError as e:
        logger.warning(f"Sandwich only for {group.name}: {e.message}")
        report.reason = e.message
        return report

    sep = report.separating
    wreath = report.embedding.wreath
    report.target = omega_wreath(sep.target, extension.quotient, wreath.action, order_cap=order_cap)
    lam_star = induced_map(sep.lam, wreath, report.target)
    rho_star = induced_map(sep.rho, wreath, report.target)
    report.left = lam_star.compose(report.embedding.gamma)
    report.right = rho_star.compose(report.embedding.gamma)
    report.equalizer = SubgroupRef.from_mask(group, report.left.agreement_mask(report.right))

    h_members = list(subgroup.elements)
    report.checks["agree_on_H"] = bool(
        np.array_equal(report.left.image[h_members], report.right.image[h_members])
    )
    report.checks["equalizer_meets_N_in_D"] = intersection(group, report.equalizer, kernel) == d
    report.checks["inner_exact"] = inner.exact

    if all(report.checks.values()):
        report.certified = True
        report.dominion = closure(group, tuple(subgroup.generators) + tuple(d.generators))
        report.reason = "dominion equals HD"
    elif not inner.exact:
        report.reason = "D is only an approximation"
    else:
        failed = [name for name, ok in report.checks.items() if not ok]
        report.reason = f"checks failed: {', '.join(failed)}"
    logger.info(f"Embedding witness for {group.name}: {report.status} ({report.reason})")
    return report

