"""
Brute-force reference computations.

Only the raw Cayley table is used here; nothing is shared with the search
or closure code under test.
"""
import itertools
from typing import FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from src.models.group import FiniteGroup


def _mul(group: FiniteGroup, a: int, b: int) -> int:
    return int(group.table[a, b])


def _inv(group: FiniteGroup, a: int) -> int:
    for b in range(group.order):
        if _mul(group, a, b) == 0:
            return b
    raise AssertionError(f"no inverse for {a}")


def is_hom(domain: FiniteGroup, codomain: FiniteGroup, image: Sequence[int]) -> bool:
    for a in range(domain.order):
        for b in range(domain.order):
            if image[_mul(domain, a, b)] != _mul(codomain, image[a], image[b]):
                return False
    return True


def _extend(
    domain: FiniteGroup,
    codomain: FiniteGroup,
    generators: Sequence[int],
    values: Sequence[int],
) -> Optional[Tuple[int, ...]]:
    image: List[int] = [-1] * domain.order
    image[0] = 0
    queue = [0]
    while queue:
        x = queue.pop()
        for s, v in zip(generators, values):
            y = _mul(domain, x, s)
            value = _mul(codomain, image[x], v)
            if image[y] < 0:
                image[y] = value
                queue.append(y)
            elif image[y] != value:
                return None
    if min(image) < 0 or not is_hom(domain, codomain, image):
        return None
    return tuple(image)


def homs_by_generator_assignment(domain: FiniteGroup, codomain: FiniteGroup) -> Set[Tuple[int, ...]]:
    """Every assignment of the generators, extended along the Cayley graph and checked."""
    generators = list(domain.generators or range(1, domain.order))
    found = set()
    for values in itertools.product(range(codomain.order), repeat=len(generators)):
        image = _extend(domain, codomain, generators, values)
        if image is not None:
            found.add(image)
    return found


def homs_by_total_functions(domain: FiniteGroup, codomain: FiniteGroup) -> Set[Tuple[int, ...]]:
    """Every total function with ``e ↦ e`` filtered by the homomorphism law."""
    found = set()
    for rest in itertools.product(range(codomain.order), repeat=domain.order - 1):
        image = (0,) + rest
        if is_hom(domain, codomain, image):
            found.add(image)
    return found


def generated(group: FiniteGroup, elements: Iterable[int]) -> FrozenSet[int]:
    """Subgroup generated by ``elements`` by repeated multiplication."""
    current = {0} | {int(x) for x in elements}
    while True:
        bigger = {_mul(group, a, b) for a in current for b in current}
        if bigger <= current:
            return frozenset(current)
        current |= bigger


def commutator_subgroup(group: FiniteGroup, within: Iterable[int]) -> FrozenSet[int]:
    """``[W, W]`` for an element set W closed under multiplication."""
    members = list(within)
    values = set()
    for a in members:
        for b in members:
            values.add(_mul(group, _mul(group, _inv(group, a), _inv(group, b)), _mul(group, a, b)))
    return generated(group, values)


def derived_series(group: FiniteGroup, steps: int) -> FrozenSet[int]:
    current: FrozenSet[int] = frozenset(range(group.order))
    for _ in range(steps):
        current = commutator_subgroup(group, current)
    return current


def element_power_subgroup(group: FiniteGroup, n: int) -> FrozenSet[int]:
    """Subgroup generated by all n-th powers."""
    powers = set()
    for x in range(group.order):
        value = 0
        for _ in range(n):
            value = _mul(group, value, x)
        powers.add(value)
    return generated(group, powers)
