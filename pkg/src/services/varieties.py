"""Verbal subgroups, variety membership and the standard variety presentations."""
import math
import re
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from src.config import settings
from src.models.group import INDEX_DTYPE, FiniteGroup, SubgroupRef
from src.models.variety import VarietyKind, VarietyPresentation
from src.models.word import Word
from src.services.groups import (
    check_order_cap,
    conjugacy_classes,
    normal_closure,
    subgroup_as_group,
)
from src.services.words import evaluate_columns, parse_word
from src.utils.errors import UndeclaredExponentError, ValidationError

# Assignments evaluated per vectorized step.
_TUPLE_CHUNK = 1 << 16


def _law_value_mask(
    group: FiniteGroup,
    laws: Sequence[Word],
    class_representatives: bool,
    stop_when_nontrivial: bool,
) -> np.ndarray:
    """
    Mask of the subgroup generated by law values (before any normal closure).

    Tuples are enumerated in chunks; enumeration stops early once the
    generated subgroup is the whole group.
    """
    n = group.order
    mask = np.zeros(n, dtype=bool)
    mask[0] = True
    if n == 1:
        return mask
    first_choices = (
        np.array([c[0] for c in conjugacy_classes(group)], dtype=INDEX_DTYPE)
        if class_representatives
        else np.arange(n, dtype=INDEX_DTYPE)
    )
    for law in laws:
        arity = law.arity
        if arity == 0:
            continue
        sizes = [first_choices.size] + [n] * (arity - 1)
        total = math.prod(sizes)
        for start in range(0, total, _TUPLE_CHUNK):
            flat = np.arange(start, min(start + _TUPLE_CHUNK, total), dtype=np.int64)
            digits = np.unravel_index(flat, sizes)
            columns = [first_choices[digits[0]]] + [d.astype(INDEX_DTYPE) for d in digits[1:]]
            values = np.unique(evaluate_columns(group, law, columns))
            fresh = values[~mask[values]]
            if fresh.size == 0:
                continue
            if stop_when_nontrivial:
                mask[fresh] = True
                return mask
            mask = group.closure_mask(fresh, start=mask)
            if mask.all():
                return mask
    return mask


def verbal_subgroup(
    group: FiniteGroup,
    variety: VarietyPresentation,
    class_representatives: Optional[bool] = None,
) -> SubgroupRef:
    """
    The verbal subgroup V(G).

    For a basis this is the subgroup generated by all law values. For a
    product ``Product(N, Q)`` it is ``N(Q(G))``: the rightmost factor is
    evaluated first and the next factor is applied inside the result.

    Args:
        group: The group G
        variety: The variety presentation
        class_representatives: Restrict the first variable to conjugacy-class
            representatives and take the normal closure (defaults to
            ``settings.VERBAL_CLASS_REPRESENTATIVES``)

    Raises:
        OrderCapExceededError: If G exceeds the order cap
    """
    check_order_cap(group.order, f"verbal subgroup of {group.name}")
    if class_representatives is None:
        class_representatives = settings.VERBAL_CLASS_REPRESENTATIVES

    if variety.is_all_groups:
        return SubgroupRef.trivial(group)
    if variety.marker == "trivial":
        return SubgroupRef.whole(group)

    if variety.is_product:
        inner_variety, outer_variety = variety.split()
        outer = verbal_subgroup(group, outer_variety, class_representatives)
        if outer.is_trivial:
            return outer
        sub, inclusion = subgroup_as_group(outer)
        nested = verbal_subgroup(sub, inner_variety, class_representatives)
        return inclusion.image_of(nested)

    mask = _law_value_mask(group, variety.laws, class_representatives, stop_when_nontrivial=False)
    if class_representatives and not mask.all():
        return normal_closure(group, np.flatnonzero(mask))
    result = SubgroupRef.from_mask(group, mask)
    logger.debug(f"Verbal subgroup of {group.name} in {variety.name}: order {result.order}")
    return result


def is_member(group: FiniteGroup, variety: VarietyPresentation) -> bool:
    """``G ∈ V`` exactly when the verbal subgroup ``V(G)`` is trivial."""
    if group.order == 1 or variety.is_all_groups:
        return True
    if variety.marker == "trivial":
        return False
    if variety.is_product:
        return verbal_subgroup(group, variety).is_trivial
    check_order_cap(group.order, f"membership test for {group.name}")
    mask = _law_value_mask(group, variety.laws, False, stop_when_nontrivial=True)
    return bool(mask.sum() == 1)


def group_exponent(group: FiniteGroup) -> int:
    """Least common multiple of the element orders."""
    return group.exponent


def disjoint_by_exponent(first: VarietyPresentation, second: VarietyPresentation) -> bool:
    """
    Two varieties of finite exponent are disjoint iff their exponents are coprime.

    Raises:
        UndeclaredExponentError: If either presentation has no known exponent
    """
    for variety in (first, second):
        if variety.exponent is None:
            raise UndeclaredExponentError(
                f"variety {variety.name!r} has no declared exponent; "
                "declare one or include a law x1^n"
            )
    return math.gcd(first.exponent, second.exponent) == 1


# -- standard presentations -------------------------------------------------------

X1, X2, X3, X4 = (Word(syllables=((i, 1),)) for i in range(1, 5))
COMMUTATOR = Word.commutator(X1, X2)


def basis(
    name: str,
    laws: Iterable["Word | str"],
    exponent: Optional[int] = None,
    abelian: bool = False,
    contained_in: Sequence[str] = (),
) -> VarietyPresentation:
    """
    Build a basis presentation from words or law strings.

    Raises:
        ParseError: If a law string does not parse
        ValidationError: If the presentation is malformed
    """
    words = tuple(parse_word(law) if isinstance(law, str) else law for law in laws)
    try:
        return VarietyPresentation(
            name=name,
            kind=VarietyKind.BASIS,
            laws=words,
            declared_exponent=exponent,
            abelian_flag=abelian,
            contained_in=tuple(contained_in),
        )
    except ValueError as e:
        raise ValidationError(f"invalid variety {name!r}: {e}")


def product(*factors: VarietyPresentation, name: Optional[str] = None) -> VarietyPresentation:
    """``Product(N, Q, …)``; the first factor is the variety of the normal subgroup."""
    try:
        return VarietyPresentation(
            name=name or "".join(f"({f.name})" for f in factors),
            kind=VarietyKind.PRODUCT,
            factors=tuple(factors),
        )
    except ValueError as e:
        raise ValidationError(f"invalid product variety: {e}")


def trivial_variety() -> VarietyPresentation:
    return VarietyPresentation(name="trivial", laws=(X1,), marker="trivial", declared_exponent=1)


def all_groups() -> VarietyPresentation:
    return VarietyPresentation(name="all", marker="all")


def abelian() -> VarietyPresentation:
    return basis("abelian", [COMMUTATOR], abelian=True, contained_in=("metabelian", "nilpotent2"))


def abelian_of_exponent(n: int) -> VarietyPresentation:
    return basis(
        f"abelian-exp-{n}",
        [COMMUTATOR, X1 ** n],
        exponent=n,
        abelian=True,
        contained_in=("abelian", f"exp-{n}", "metabelian", "nilpotent2"),
    )


def of_exponent(n: int) -> VarietyPresentation:
    return basis(f"exp-{n}", [X1 ** n], exponent=n)


def nilpotent_class_two() -> VarietyPresentation:
    return basis("nilpotent2", [Word.commutator(COMMUTATOR, X3)], contained_in=("metabelian",))


def solvable(length: int) -> VarietyPresentation:
    """``A^length``; length 1 is the abelian variety and length 2 is ``metabelian``."""
    if length < 1:
        raise ValidationError(f"derived length must be positive, got {length}")
    if length == 1:
        return abelian()
    name = "metabelian" if length == 2 else f"solvable-{length}"
    return product(*(abelian() for _ in range(length)), name=name)


def metabelian() -> VarietyPresentation:
    return solvable(2)


_PARAMETRIC = (
    (re.compile(r"^abelian-exp-(\d+)$"), abelian_of_exponent),
    (re.compile(r"^exp-(\d+)$"), of_exponent),
    (re.compile(r"^solvable-(\d+)$"), solvable),
)

BUILTIN_VARIETIES = {
    "trivial": trivial_variety,
    "all": all_groups,
    "abelian": abelian,
    "metabelian": metabelian,
    "nilpotent2": nilpotent_class_two,
}


def builtin_variety(name: str) -> VarietyPresentation:
    """
    Resolve builtin names such as ``abelian``, ``metabelian`` or ``abelian-exp-3``.

    Raises:
        ValidationError: If the name is unknown
    """
    if name in BUILTIN_VARIETIES:
        return BUILTIN_VARIETIES[name]()
    for pattern, factory in _PARAMETRIC:
        match = pattern.match(name)
        if match:
            value = int(match.group(1))
            if value < 1:
                raise ValidationError(f"parameter of {name!r} must be positive")
            return factory(value)
    raise ValidationError(
        f"unknown variety {name!r}; builtins are {sorted(BUILTIN_VARIETIES)} "
        "and abelian-exp-N, exp-N, solvable-N"
    )


def verbal_series(group: FiniteGroup, variety: VarietyPresentation) -> Tuple[SubgroupRef, ...]:
    """Iterated verbal subgroups ``G ⊇ V(G) ⊇ V(V(G)) ⊇ …`` until they stabilise."""
    series = [SubgroupRef.whole(group)]
    current_group, inclusion = group, None
    while True:
        step = verbal_subgroup(current_group, variety)
        lifted = inclusion.image_of(step) if inclusion is not None else step
        if lifted == series[-1]:
            break
        series.append(lifted)
        if step.is_trivial:
            break
        sub, sub_inclusion = subgroup_as_group(step)
        inclusion = inclusion.compose(sub_inclusion) if inclusion is not None else sub_inclusion
        current_group = sub
    return tuple(series)
