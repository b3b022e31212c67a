"""
Stand-alone verification of orbit transversals.

Works on plain element sets and the Cayley table only; nothing here is
shared with the transversal builder in ``extensions``.
"""
from typing import Iterable, Sequence, Set

from src.models.group import FiniteGroup
from src.utils.errors import ToolkitError


def _normalizer_elements(group: FiniteGroup, inner: Set[int]) -> Set[int]:
    table = group.table
    result = set()
    for g in range(group.order):
        g_inv = int(group.inverses[g])
        if all(int(table[table[g, d], g_inv]) in inner for d in inner):
            result.add(g)
    return result


def verify_orbit_transversal(
    group: FiniteGroup,
    lift: Sequence[int],
    coset_of: Sequence[int],
    subgroup: Iterable[int],
    inner: Iterable[int],
) -> None:
    """
    Check the three transversal properties used for the sandwich certificate.

    Args:
        group: The group G
        lift: ``lift[b]`` is τ of coset b
        coset_of: Coset index of every element of G
        subgroup: Elements of H
        inner: Elements of D

    Raises:
        ToolkitError: Naming the first property that fails
    """
    h_set = {int(h) for h in subgroup}
    d_set = {int(d) for d in inner}
    lifts = [int(x) for x in lift]
    table = group.table

    for b, t in enumerate(lifts):
        if int(coset_of[t]) != b:
            raise ToolkitError(f"transversal check: lift of coset {b} lies in coset {int(coset_of[t])}")

    if lifts[0] != 0:
        raise ToolkitError("transversal check (1): τ(N) is not the identity")

    normalizer = _normalizer_elements(group, d_set)
    for b, t in enumerate(lifts):
        if t not in normalizer:
            raise ToolkitError(f"transversal check (2): τ of coset {b} = {group.label(t)} does not normalize D")

    for b, y in enumerate(lifts):
        y_inv = int(group.inverses[y])
        for h in sorted(h_set):
            moved = int(table[y, group.inverses[h]])
            target = lifts[int(coset_of[moved])]
            # τ(yh⁻¹N) = τ(yN)·h'⁻¹ means τ(yN)⁻¹·τ(yh⁻¹N) lies in H
            if int(table[y_inv, target]) not in h_set:
                raise ToolkitError(
                    f"transversal check (3): no h' in H with τ(yh⁻¹N) = τ(yN)h'⁻¹ "
                    f"for y = {group.label(y)}, h = {group.label(h)}"
                )
