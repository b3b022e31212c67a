"""Small named groups used as seeds, fixtures and catalog constructors."""
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.models.group import INDEX_DTYPE, FiniteGroup
from src.utils.errors import ValidationError

Permutation = Tuple[int, ...]


def cycle_label(perm: Permutation) -> str:
    """Cycle notation with points numbered from 1, e.g. ``(12)(34)``."""
    seen = set()
    cycles = []
    sep = "" if len(perm) < 10 else " "
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        nxt = perm[start]
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = perm[nxt]
        cycles.append("(" + sep.join(str(p + 1) for p in cycle) + ")")
    return "".join(cycles) or "e"


def from_permutations(
    generators: Sequence[Sequence[int]],
    name: Optional[str] = None,
    degree: Optional[int] = None,
) -> FiniteGroup:
    """
    Build the permutation group generated by ``generators``.

    Points are ``0..degree-1`` and products compose left to right:
    ``(p·q)(i) = q(p(i))``. Elements are numbered in breadth-first order
    from the identity, so the result is deterministic.

    Raises:
        ValidationError: If a generator is not a permutation of the points
    """
    if degree is None:
        degree = max((len(g) for g in generators), default=1)
    gens: List[Permutation] = []
    for g in generators:
        perm = tuple(int(x) for x in g)
        if sorted(perm) != list(range(degree)):
            raise ValidationError(f"{list(g)} is not a permutation of {degree} points")
        gens.append(perm)

    identity = tuple(range(degree))
    elements: List[Permutation] = [identity]
    index: Dict[Permutation, int] = {identity: 0}
    position = 0
    while position < len(elements):
        current = elements[position]
        for g in gens:
            product = tuple(g[current[i]] for i in range(degree))
            if product not in index:
                index[product] = len(elements)
                elements.append(product)
        position += 1

    perms = np.array(elements, dtype=np.int64)
    order = len(elements)
    table = np.empty((order, order), dtype=INDEX_DTYPE)
    for a in range(order):
        composed = perms[:, perms[a]]  # composed[b] = a·b
        for b in range(order):
            table[a, b] = index[tuple(composed[b].tolist())]
    labels = [cycle_label(p) for p in elements]
    generator_indices = [index[g] for g in gens if g != identity]
    return FiniteGroup(table, labels=labels, generators=generator_indices, name=name, check=False)


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], labels=["e"], generators=[], name="C1", check=False)


def cyclic(n: int) -> FiniteGroup:
    """Cyclic group C_n generated by ``c`` (index 1)."""
    if n < 1:
        raise ValidationError(f"cyclic group order must be positive, got {n}")
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    labels = ["e"] + ["c" if i == 1 else f"c^{i}" for i in range(1, n)]
    return FiniteGroup(table, labels=labels, generators=[1] if n > 1 else [], name=f"C{n}", check=False)


def dihedral(n: int) -> FiniteGroup:
    """
    Dihedral group of order 2n, named ``Dn``.

    Element ``r^i s^a`` sits at index ``i + n·a`` and
    ``r^i s^a · r^j s^b = r^(i + (-1)^a j) s^(a+b)``.
    """
    if n < 1:
        raise ValidationError(f"dihedral parameter must be positive, got {n}")
    i = np.arange(2 * n) % n
    a = np.arange(2 * n) // n
    sign = np.where(a == 1, -1, 1)
    rot = (i[:, None] + sign[:, None] * i[None, :]) % n
    ref = (a[:, None] + a[None, :]) % 2
    table = rot + n * ref

    def label(k: int) -> str:
        r = k % n
        base = "" if r == 0 else ("r" if r == 1 else f"r^{r}")
        if k >= n:
            return f"{base}s" if base else "s"
        return base or "e"

    generators = [1, n] if n > 1 else [n]
    return FiniteGroup(
        table,
        labels=[label(k) for k in range(2 * n)],
        generators=generators,
        name=f"D{n}",
        check=False,
    )


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise ValidationError(f"symmetric degree must be positive, got {n}")
    if n == 1:
        return trivial_group().renamed("S1")
    transposition = [1, 0] + list(range(2, n))
    cycle = list(range(1, n)) + [0]
    return from_permutations([cycle, transposition], name=f"S{n}", degree=n)


def alternating(n: int) -> FiniteGroup:
    """Alternating group generated by the 3-cycles (1 2 k)."""
    if n < 3:
        return trivial_group().renamed(f"A{n}")
    gens = []
    for k in range(2, n):
        perm = list(range(n))
        perm[0], perm[1], perm[k] = 1, k, 0
        gens.append(perm)
    return from_permutations(gens, name=f"A{n}", degree=n)


# Unit quaternions ±1, ±i, ±j, ±k at indices 0..7 (sign in the low bit).
_QUATERNION_BASIS = {("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
                     ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
                     ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
                     ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1")}


def quaternion() -> FiniteGroup:
    units = ["1", "i", "j", "k"]
    elements = [(sign, u) for u in units for sign in (1, -1)]
    index = {e: n for n, e in enumerate(elements)}
    table = np.empty((8, 8), dtype=INDEX_DTYPE)
    for x, (sx, ux) in enumerate(elements):
        for y, (sy, uy) in enumerate(elements):
            s, u = _QUATERNION_BASIS[(ux, uy)]
            table[x, y] = index[(sx * sy * s, u)]
    labels = ["e" if (s, u) == (1, "1") else ("" if s == 1 else "-") + u for s, u in elements]
    return FiniteGroup(table, labels=labels, generators=[2, 4], name="Q8", check=False)


def klein() -> FiniteGroup:
    idx = np.arange(4)
    return FiniteGroup(
        idx[:, None] ^ idx[None, :],
        labels=["e", "a", "b", "ab"],
        generators=[1, 2],
        name="V4",
        check=False,
    )


STANDARD_GROUPS = {
    "S3": lambda: symmetric(3),
    "S4": lambda: symmetric(4),
    "A4": lambda: alternating(4),
    "Q8": quaternion,
    "V4": klein,
}


def named_group(name: str) -> FiniteGroup:
    """
    Resolve names such as ``C6``, ``D4``, ``S3``, ``A4``, ``Q8`` or ``V4``.

    Raises:
        ValidationError: If the name is not recognised
    """
    if name in STANDARD_GROUPS:
        return STANDARD_GROUPS[name]()
    prefix, digits = name[:1], name[1:]
    if digits.isdigit():
        n = int(digits)
        if prefix == "C":
            return cyclic(n)
        if prefix == "D":
            return dihedral(n)
        if prefix == "S":
            return symmetric(n)
        if prefix == "A":
            return alternating(n)
    raise ValidationError(f"unknown standard group {name!r}")
