"""
Core finite-group types: Cayley-table groups, subgroups and homomorphisms.

Elements are the integers ``0..order-1`` and index 0 is always the identity.
Tables are read-only numpy arrays, so every value here is immutable after
construction and can be shared between workers.
"""
import hashlib
import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.utils.errors import GroupAxiomError, NotASubgroupError, NotFoundError, ValidationError

INDEX_DTYPE = np.int32

# Row block size for table-wide checks; keeps temporaries at a few MB.
_ROW_BLOCK = 256


class FiniteGroup:
    """
    A finite group stored as a Cayley table.

    ``table[a, b]`` is the product ``a·b`` (the row acts on the left). The
    identity is index 0; loaders re-index tables whose identity sits elsewhere.
    """

    def __init__(
        self,
        table: "np.ndarray | Sequence[Sequence[int]]",
        labels: Optional[Sequence[str]] = None,
        generators: Optional[Sequence[int]] = None,
        name: Optional[str] = None,
        check: bool = True,
    ):
        """
        Build a group from its table.

        Args:
            table: order×order array of element indices
            labels: Optional display string per element
            generators: Optional generating set recorded with the group
            name: Human-readable name
            check: Run the full axiom check (Light's associativity test included)

        Raises:
            GroupAxiomError: If the table is not a group table with identity 0
        """
        array = np.array(table, dtype=INDEX_DTYPE)
        if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] == 0:
            raise GroupAxiomError("shape", f"table must be a non-empty square array, got {array.shape}")
        order = int(array.shape[0])
        if array.min() < 0 or array.max() >= order:
            bad = np.argwhere((array < 0) | (array >= order))[0]
            raise GroupAxiomError(
                "closure",
                f"entry table[{bad[0]}][{bad[1]}] = {array[bad[0], bad[1]]} is not an element index < {order}",
                (int(bad[0]), int(bad[1])),
            )
        array.setflags(write=False)
        self._table = array
        self.order = order
        self.name = name or f"G{order}"

        if labels is not None:
            if len(labels) != order:
                raise ValidationError(f"expected {order} labels, got {len(labels)}")
            self._labels: Optional[Tuple[str, ...]] = tuple(str(label) for label in labels)
        else:
            self._labels = None

        self._check_identity()
        self.inverses = self._compute_inverses()
        self.generators: Optional[Tuple[int, ...]] = (
            tuple(int(g) for g in generators) if generators is not None else None
        )
        if self.generators is not None:
            for g in self.generators:
                if not 0 <= g < order:
                    raise ValidationError(f"generator {g} is not an element index < {order}")
        if check:
            self.check_associativity()

    # -- construction-time checks -------------------------------------------------

    def _check_identity(self) -> None:
        expected = np.arange(self.order, dtype=INDEX_DTYPE)
        row = self._table[0]
        col = self._table[:, 0]
        if not np.array_equal(row, expected):
            x = int(np.flatnonzero(row != expected)[0])
            raise GroupAxiomError("identity", f"0·{x} = {int(row[x])}, expected {x}", (0, x))
        if not np.array_equal(col, expected):
            x = int(np.flatnonzero(col != expected)[0])
            raise GroupAxiomError("identity", f"{x}·0 = {int(col[x])}, expected {x}", (x, 0))

    def _compute_inverses(self) -> np.ndarray:
        is_zero = self._table == 0
        has_right = is_zero.any(axis=1)
        if not has_right.all():
            x = int(np.flatnonzero(~has_right)[0])
            raise GroupAxiomError("inverse", f"element {x} has no right inverse", (x,))
        inverses = np.argmax(is_zero, axis=1).astype(INDEX_DTYPE)
        left = self._table[inverses, np.arange(self.order)]
        if (left != 0).any():
            x = int(np.flatnonzero(left != 0)[0])
            raise GroupAxiomError(
                "inverse",
                f"{int(inverses[x])} is a right inverse of {x} but not a left inverse",
                (x, int(inverses[x])),
            )
        inverses.setflags(write=False)
        return inverses

    def check_associativity(self) -> None:
        """
        Verify associativity exactly with Light's test.

        It suffices to check ``(x·y)·s = x·(y·s)`` for all x, y and every s in
        a set that generates the table by right multiplication.

        Raises:
            GroupAxiomError: Naming the first failing triple
        """
        table = self._table
        for s in self.generating_set:
            for start in range(0, self.order, _ROW_BLOCK):
                block = table[start:start + _ROW_BLOCK]
                left = table[block, s]
                right = table[start:start + _ROW_BLOCK][:, table[:, s]]
                if not np.array_equal(left, right):
                    i, y = np.argwhere(left != right)[0]
                    x = start + int(i)
                    raise GroupAxiomError(
                        "associativity",
                        f"({x}·{int(y)})·{s} != {x}·({int(y)}·{s})",
                        (x, int(y), int(s)),
                    )

    def check_axioms(self) -> None:
        """Run every group-axiom check (closure and identity ran at construction)."""
        self._check_identity()
        self._compute_inverses()
        self.check_associativity()

    # -- basic access -------------------------------------------------------------

    @property
    def table(self) -> np.ndarray:
        return self._table

    @property
    def identity(self) -> int:
        return 0

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup(name={self.name!r}, order={self.order})"

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return int(self._table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def conj(self, g: int, x: int) -> int:
        """Return ``g·x·g⁻¹``."""
        return int(self._table[self._table[g, x], self.inverses[g]])

    def product(self, elements: Iterable[int]) -> int:
        acc = 0
        for x in elements:
            acc = int(self._table[acc, x])
        return acc

    @property
    def has_labels(self) -> bool:
        return self._labels is not None

    @property
    def labels(self) -> Tuple[str, ...]:
        if self._labels is None:
            return tuple("e" if i == 0 else f"g{i}" for i in range(self.order))
        return self._labels

    def label(self, x: int) -> str:
        return self.labels[int(x)]

    def index_of(self, label: str) -> int:
        """
        Resolve an element label.

        Raises:
            NotFoundError: If no element carries the label
        """
        try:
            return self._label_index[label]
        except KeyError:
            raise NotFoundError(f"no element labelled {label!r} in {self.name}")

    @cached_property
    def _label_index(self) -> Dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    # -- element statistics ---------------------------------------------------------

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.order, dtype=np.int64)
        orders[0] = 1
        base = np.arange(self.order, dtype=INDEX_DTYPE)
        current = base.copy()
        k = 1
        while (orders == 0).any():
            current = self._table[current, base]
            k += 1
            orders[(current == 0) & (orders == 0)] = k
        orders.setflags(write=False)
        return orders

    def element_order(self, x: int) -> int:
        return int(self.element_orders[x])

    @cached_property
    def order_profile(self) -> Tuple[Tuple[int, int], ...]:
        """Sorted multiset of element orders as ``(order, count)`` pairs."""
        return tuple(sorted(Counter(int(o) for o in self.element_orders).items()))

    @cached_property
    def exponent(self) -> int:
        return int(math.lcm(*(int(o) for o in set(self.element_orders.tolist()))))

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self._table, self._table.T))

    def power_map(self, k: int) -> np.ndarray:
        """Return the array ``x ↦ x^k`` (negative k allowed)."""
        cache = self._power_cache
        if k not in cache:
            exponents = np.mod(k, self.element_orders)
            result = np.zeros(self.order, dtype=INDEX_DTYPE)
            base = np.arange(self.order, dtype=INDEX_DTYPE)
            while exponents.any():
                odd = (exponents & 1).astype(bool)
                result[odd] = self._table[result[odd], base[odd]]
                base = self._table[base, base]
                exponents = exponents >> 1
            result.setflags(write=False)
            cache[k] = result
        return cache[k]

    @cached_property
    def _power_cache(self) -> Dict[int, np.ndarray]:
        return {}

    def power(self, x: int, k: int) -> int:
        return int(self.power_map(k)[x])

    # -- generation -----------------------------------------------------------------

    def closure_mask(self, generators: Iterable[int], start: Optional[np.ndarray] = None) -> np.ndarray:
        """
        Boolean mask of the subgroup generated by ``generators``.

        In a finite group closing ``{e} ∪ S`` under right multiplication by S
        yields ⟨S⟩, since inverses are positive powers.
        """
        gens = np.unique(np.asarray(list(generators), dtype=INDEX_DTYPE))
        mask = np.zeros(self.order, dtype=bool) if start is None else start.copy()
        mask[0] = True
        mask[gens] = True
        if gens.size == 0:
            return mask
        frontier = np.flatnonzero(mask)
        while frontier.size:
            products = np.unique(self._table[np.ix_(frontier, gens)])
            fresh = products[~mask[products]]
            mask[fresh] = True
            frontier = fresh
        return mask

    def greedy_generators(self, mask: np.ndarray, seed: Sequence[int] = ()) -> Tuple[int, ...]:
        """
        Pick generators for the subgroup given by ``mask``.

        Elements are taken by descending order (ties by index) and kept when
        they are not yet generated; ``seed`` elements come first.
        """
        members = np.flatnonzero(mask)
        orders = self.element_orders[members]
        ranked = members[np.lexsort((members, -orders))]
        gens: List[int] = []
        current = self.closure_mask(())
        for x in list(seed) + [int(x) for x in ranked]:
            if not current[x]:
                gens.append(int(x))
                current = self.closure_mask(gens)
                if np.array_equal(current, mask):
                    break
        return tuple(gens)

    @cached_property
    def generating_set(self) -> Tuple[int, ...]:
        """Deterministic generating set chosen greedily by descending element order."""
        return self.greedy_generators(np.ones(self.order, dtype=bool))

    # -- identity and persistence ---------------------------------------------------

    @cached_property
    def fingerprint(self) -> str:
        digest = hashlib.sha256()
        digest.update(str(self.order).encode())
        digest.update(np.ascontiguousarray(self._table, dtype=np.int32).tobytes())
        return digest.hexdigest()

    def same_table(self, other: "FiniteGroup") -> bool:
        return self is other or (
            self.order == other.order and np.array_equal(self._table, other._table)
        )

    def renamed(self, name: str, labels: Optional[Sequence[str]] = None) -> "FiniteGroup":
        """Copy with a new name (and optionally new labels); the table is shared."""
        group = FiniteGroup.__new__(FiniteGroup)
        group.__dict__.update(self.__dict__)
        group.name = name
        if labels is not None:
            group._labels = tuple(labels)
            group.__dict__.pop("_label_index", None)
        return group

    def to_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "order": self.order,
            "table": self._table.tolist(),
            "labels": list(self._labels) if self._labels is not None else None,
            "generators": list(self.generators) if self.generators is not None else None,
        }


@dataclass(frozen=True, eq=False)
class SubgroupRef:
    """A subgroup of ``parent`` as a sorted element tuple plus a generator witness."""

    parent: FiniteGroup
    elements: Tuple[int, ...]
    generators: Tuple[int, ...]

    @classmethod
    def from_mask(
        cls,
        parent: FiniteGroup,
        mask: np.ndarray,
        generators: Optional[Sequence[int]] = None,
    ) -> "SubgroupRef":
        elements = tuple(int(x) for x in np.flatnonzero(mask))
        if generators is None:
            generators = parent.greedy_generators(mask)
        return cls(parent, elements, tuple(int(g) for g in generators))

    @classmethod
    def whole(cls, parent: FiniteGroup) -> "SubgroupRef":
        return cls(parent, tuple(range(parent.order)), parent.generating_set)

    @classmethod
    def trivial(cls, parent: FiniteGroup) -> "SubgroupRef":
        return cls(parent, (0,), ())

    @cached_property
    def mask(self) -> np.ndarray:
        mask = np.zeros(self.parent.order, dtype=bool)
        mask[list(self.elements)] = True
        mask.setflags(write=False)
        return mask

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, (int, np.integer)) and 0 <= int(x) < self.parent.order and bool(self.mask[int(x)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubgroupRef):
            return NotImplemented
        return self.parent.same_table(other.parent) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __le__(self, other: "SubgroupRef") -> bool:
        return self.issubset(other)

    def __lt__(self, other: "SubgroupRef") -> bool:
        return self.issubset(other) and self.order < other.order

    def __repr__(self) -> str:
        shown = ", ".join(self.parent.label(x) for x in self.elements[:12])
        more = ", …" if len(self.elements) > 12 else ""
        return f"SubgroupRef({self.parent.name}, order={self.order}, {{{shown}{more}}})"

    def issubset(self, other: "SubgroupRef") -> bool:
        return bool(np.all(other.mask[list(self.elements)]))

    @property
    def is_trivial(self) -> bool:
        return self.elements == (0,)

    @property
    def is_whole(self) -> bool:
        return len(self.elements) == self.parent.order

    def element_labels(self) -> List[str]:
        return [self.parent.label(x) for x in self.elements]

    def check(self) -> None:
        """
        Verify this really is a subgroup generated by its generators.

        Raises:
            NotASubgroupError: If closure or the generator witness fails
        """
        if 0 not in self.elements:
            raise NotASubgroupError(f"subgroup of {self.parent.name} does not contain the identity")
        closed = self.parent.closure_mask(self.elements)
        if not np.array_equal(closed, self.mask):
            extra = int(np.flatnonzero(closed & ~self.mask)[0])
            raise NotASubgroupError(
                f"element set is not closed in {self.parent.name}: "
                f"{self.parent.label(extra)} is generated but missing"
            )
        if not np.array_equal(self.parent.closure_mask(self.generators), self.mask):
            raise NotASubgroupError(f"generators {list(self.generators)} do not generate the element set")


@dataclass(frozen=True, eq=False)
class Homomorphism:
    """A total map between finite groups stored as an image array."""

    domain: FiniteGroup
    codomain: FiniteGroup
    image: np.ndarray

    def __post_init__(self) -> None:
        image = np.array(self.image, dtype=INDEX_DTYPE)
        if image.shape != (self.domain.order,):
            raise ValidationError(
                f"image array has shape {image.shape}, expected ({self.domain.order},)"
            )
        if image.size and (image.min() < 0 or image.max() >= self.codomain.order):
            raise ValidationError(f"image values must be element indices of {self.codomain.name}")
        image.setflags(write=False)
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, group: FiniteGroup) -> "Homomorphism":
        return cls(group, group, np.arange(group.order))

    @classmethod
    def trivial(cls, domain: FiniteGroup, codomain: FiniteGroup) -> "Homomorphism":
        return cls(domain, codomain, np.zeros(domain.order, dtype=INDEX_DTYPE))

    def __call__(self, x: int) -> int:
        return int(self.image[x])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Homomorphism):
            return NotImplemented
        return (
            self.domain.same_table(other.domain)
            and self.codomain.same_table(other.codomain)
            and np.array_equal(self.image, other.image)
        )

    def __hash__(self) -> int:
        return hash(self.image.tobytes())

    def __repr__(self) -> str:
        return f"Homomorphism({self.domain.name} -> {self.codomain.name})"

    @property
    def key(self) -> Tuple[int, ...]:
        return tuple(int(x) for x in self.image)

    def first_violation(self) -> Optional[Tuple[int, int]]:
        """Return a pair (x, y) with f(xy) != f(x)f(y), or None."""
        if self.image[0] != 0:
            return (0, 0)
        dom = self.domain.table
        cod = self.codomain.table
        image = self.image
        for start in range(0, self.domain.order, _ROW_BLOCK):
            rows = slice(start, start + _ROW_BLOCK)
            left = image[dom[rows]]
            right = cod[image[rows][:, None], image[None, :]]
            if not np.array_equal(left, right):
                i, y = np.argwhere(left != right)[0]
                return (start + int(i), int(y))
        return None

    def is_homomorphism(self) -> bool:
        return self.first_violation() is None

    def check(self) -> None:
        """
        Raises:
            ValidationError: If the map is not a homomorphism
        """
        bad = self.first_violation()
        if bad is not None:
            x, y = bad
            raise ValidationError(
                f"map {self.domain.name} -> {self.codomain.name} is not a homomorphism: "
                f"f({x}·{y}) != f({x})·f({y})"
            )

    def compose(self, first: "Homomorphism") -> "Homomorphism":
        """Return ``self ∘ first``."""
        if not first.codomain.same_table(self.domain):
            raise ValidationError(
                f"cannot compose {self!r} after {first!r}: codomain and domain differ"
            )
        return Homomorphism(first.domain, self.codomain, self.image[first.image])

    @property
    def is_injective(self) -> bool:
        return np.unique(self.image).size == self.domain.order

    @property
    def is_surjective(self) -> bool:
        return np.unique(self.image).size == self.codomain.order

    def kernel(self) -> SubgroupRef:
        return SubgroupRef.from_mask(self.domain, self.image == 0)

    def image_subgroup(self) -> SubgroupRef:
        mask = np.zeros(self.codomain.order, dtype=bool)
        mask[self.image] = True
        gens = [int(self.image[g]) for g in self.domain.generating_set]
        generators = self.codomain.greedy_generators(mask, seed=[g for g in gens if g != 0])
        return SubgroupRef.from_mask(self.codomain, mask, generators)

    def image_of(self, subgroup: SubgroupRef) -> SubgroupRef:
        """Image of a subgroup of the domain."""
        mask = np.zeros(self.codomain.order, dtype=bool)
        mask[self.image[list(subgroup.elements)]] = True
        return SubgroupRef.from_mask(self.codomain, mask)

    def agreement_mask(self, other: "Homomorphism") -> np.ndarray:
        return self.image == other.image
