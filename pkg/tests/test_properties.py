"""Property tests for the catalog approximation of dominions."""
from hypothesis import HealthCheck, given, settings as hypothesis_settings, strategies as st

from src.models.catalog import Catalog
from src.services.groups import closure, join
from src.services.homsearch import dominion_upper_approx
from src.services.standard_groups import cyclic, dihedral, klein, quaternion, symmetric

GROUPS = [symmetric(3), dihedral(4), quaternion(), cyclic(6), klein(), dihedral(5)]
TARGETS = [cyclic(2), cyclic(3), klein(), symmetric(3), dihedral(4)]

PROPERTY_SETTINGS = hypothesis_settings(
    max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)


@st.composite
def group_and_subgroups(draw):
    group = draw(st.sampled_from(GROUPS))
    elements = st.integers(min_value=0, max_value=group.order - 1)
    first = closure(group, draw(st.lists(elements, max_size=2)))
    second = join(group, first, closure(group, draw(st.lists(elements, max_size=2))))
    return group, first, second


@st.composite
def catalogs(draw):
    chosen = draw(st.lists(st.sampled_from(range(len(TARGETS))), min_size=1, max_size=3, unique=True))
    extra = draw(st.sampled_from(range(len(TARGETS))))
    small = Catalog.from_groups([TARGETS[k] for k in sorted(chosen)])
    large = Catalog.from_groups([TARGETS[k] for k in sorted(set(chosen) | {extra})])
    return small, large


@PROPERTY_SETTINGS
@given(group_and_subgroups(), catalogs())
def test_approximation_is_extensive_and_monotone(case, targets):
    group, first, second = case
    small, _ = targets
    lower = dominion_upper_approx(group, first, None, small).subgroup
    upper = dominion_upper_approx(group, second, None, small).subgroup
    assert first.issubset(lower)
    assert lower.issubset(upper)


@PROPERTY_SETTINGS
@given(group_and_subgroups(), catalogs())
def test_approximation_is_idempotent(case, targets):
    group, first, _ = case
    small, _ = targets
    once = dominion_upper_approx(group, first, None, small).subgroup
    assert dominion_upper_approx(group, once, None, small).subgroup == once


@PROPERTY_SETTINGS
@given(group_and_subgroups(), catalogs())
def test_more_targets_never_enlarge_the_approximation(case, targets):
    group, first, _ = case
    small, large = targets
    coarse = dominion_upper_approx(group, first, None, small).subgroup
    fine = dominion_upper_approx(group, first, None, large).subgroup
    assert fine.issubset(coarse)
