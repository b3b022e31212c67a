"""
Backtracking search for homomorphisms defined by generator images.

A partial assignment of generator images is propagated along the Cayley
graph of the subgroup generated so far: ``f(x·s) = f(x)·f(s)`` for every
known x and assigned generator s. A conflict prunes the branch. Once every
generator is assigned and no edge conflicts, the map is a homomorphism.
"""
from typing import Dict, Iterator, List, Mapping, Optional, Sequence

import numpy as np
from loguru import logger

from src.config import settings
from src.models.group import FiniteGroup, Homomorphism
from src.utils.errors import BudgetExhaustedError, ValidationError


class HomomorphismSearch:
    """
    Enumerate homomorphisms ``domain -> codomain`` in a deterministic order.

    Candidates for a generator s are the codomain elements whose order divides
    the order of s, taken in index order. Every candidate tried counts as one
    node against the budget.
    """

    def __init__(
        self,
        domain: FiniteGroup,
        codomain: FiniteGroup,
        generators: Optional[Sequence[int]] = None,
        forced: Optional[Mapping[int, int]] = None,
        injective: bool = False,
        node_budget: Optional[int] = None,
    ):
        """
        Args:
            domain: Source group
            codomain: Target group
            generators: Generators of the domain (defaults to its greedy generating set)
            forced: Fixed images for some of the generators
            injective: Only yield injective maps
            node_budget: Maximum candidates tried (defaults to ``settings.NODE_BUDGET``)

        Raises:
            ValidationError: If the generators do not generate the domain
        """
        self.domain = domain
        self.codomain = codomain
        self.generators: List[int] = [
            int(g) for g in (generators if generators is not None else domain.generating_set)
        ]
        if not domain.closure_mask(self.generators).all():
            raise ValidationError(f"elements {self.generators} do not generate {domain.name}")
        self.forced: Dict[int, int] = {int(k): int(v) for k, v in (forced or {}).items()}
        self.injective = injective
        self.node_budget = node_budget if node_budget is not None else settings.NODE_BUDGET
        self.nodes = 0

        dom_orders = domain.element_orders
        cod_orders = codomain.element_orders
        self._candidates: List[np.ndarray] = []
        for s in self.generators:
            if s in self.forced:
                self._candidates.append(np.array([self.forced[s]], dtype=np.int64))
                continue
            if injective:
                allowed = cod_orders == dom_orders[s]
            else:
                allowed = dom_orders[s] % cod_orders == 0
            self._candidates.append(np.flatnonzero(allowed))

    def _propagate(self, image: np.ndarray, nodes: np.ndarray, gens: List[int], vals: List[int]) -> bool:
        """Extend ``image`` in place along edges ``x -> x·s``; False on a conflict."""
        dom = self.domain.table
        cod = self.codomain.table
        new_gens = np.asarray(gens[-1:], dtype=np.int64)
        new_vals = np.asarray(vals[-1:], dtype=np.int64)
        all_gens = np.asarray(gens, dtype=np.int64)
        all_vals = np.asarray(vals, dtype=np.int64)
        gen_idx, val_idx = new_gens, new_vals
        while nodes.size:
            targets = dom[np.ix_(nodes, gen_idx)].ravel()
            values = cod[np.ix_(image[nodes], val_idx)].ravel()
            known = image[targets] >= 0
            if np.any(image[targets[known]] != values[known]):
                return False
            fresh_targets = targets[~known]
            fresh_values = values[~known]
            if fresh_targets.size == 0:
                break
            unique, first = np.unique(fresh_targets, return_index=True)
            image[unique] = fresh_values[first]
            if np.any(image[fresh_targets] != fresh_values):
                return False
            if self.injective:
                defined = image[image >= 0]
                if np.unique(defined).size != defined.size:
                    return False
            nodes = unique
            gen_idx, val_idx = all_gens, all_vals
        return True

    def _search(self, depth: int, image: np.ndarray, vals: List[int]) -> Iterator[np.ndarray]:
        if depth == len(self.generators):
            yield image
            return
        s = self.generators[depth]
        known = int(image[s])
        candidates = self._candidates[depth]
        if known >= 0:
            candidates = candidates[candidates == known]
        for c in candidates:
            self.nodes += 1
            if self.nodes > self.node_budget:
                raise BudgetExhaustedError(
                    f"homomorphism search {self.domain.name} -> {self.codomain.name} "
                    f"exceeded the node budget of {self.node_budget}"
                )
            extended = image.copy()
            defined = np.flatnonzero(extended >= 0)
            if self._propagate(extended, defined, self.generators[: depth + 1], vals + [int(c)]):
                yield from self._search(depth + 1, extended, vals + [int(c)])

    def __iter__(self) -> Iterator[Homomorphism]:
        image = np.full(self.domain.order, -1, dtype=np.int64)
        image[0] = 0
        count = 0
        for found in self._search(0, image, []):
            count += 1
            yield Homomorphism(self.domain, self.codomain, found)
        logger.debug(
            f"Homomorphism search {self.domain.name} -> {self.codomain.name}: "
            f"{count} maps, {self.nodes} nodes"
        )

    def first(self) -> Optional[Homomorphism]:
        return next(iter(self), None)
