"""Isomorphism testing between small groups."""
from typing import Optional

from loguru import logger

from src.models.group import FiniteGroup, Homomorphism
from src.services.backtrack import HomomorphismSearch


def invariants_match(first: FiniteGroup, second: FiniteGroup) -> bool:
    """Cheap necessary conditions: order, element-order profile and commutativity."""
    return (
        first.order == second.order
        and first.order_profile == second.order_profile
        and first.is_abelian == second.is_abelian
    )


def isomorphic(first: FiniteGroup, second: FiniteGroup) -> Optional[Homomorphism]:
    """
    Find an isomorphism ``first -> second``.

    Generator images are searched among elements of the same order, keeping
    the partial map injective; any complete injective assignment between
    groups of equal order is a bijection.

    Returns:
        A witness isomorphism, or None when the groups are not isomorphic
    """
    if not invariants_match(first, second):
        return None
    if first.order == 1:
        return Homomorphism(first, second, [0])
    witness = HomomorphismSearch(first, second, injective=True).first()
    if witness is None:
        logger.debug(f"{first.name} and {second.name} share invariants but are not isomorphic")
    return witness
