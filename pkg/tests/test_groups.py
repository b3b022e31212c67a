"""Tests for Cayley-table groups and subgroup operations."""
import numpy as np
import pytest

from src.models.group import FiniteGroup, Homomorphism, SubgroupRef
from src.services.groups import (
    check_order_cap,
    closure,
    conjugacy_classes,
    conjugate,
    cosets,
    direct_product,
    intersection,
    is_normal,
    join,
    normal_closure,
    normal_subgroups,
    normalizer,
    quotient,
    semidirect_product,
    subgroup_as_group,
    subgroup_class_representatives,
    subgroup_from_elements,
    subgroups,
)
from src.services.isomorphism import isomorphic
from src.services.standard_groups import (
    cyclic,
    dihedral,
    klein,
    named_group,
    quaternion,
    symmetric,
    trivial_group,
)
from src.utils.errors import (
    GroupAxiomError,
    InvalidActionError,
    NotASubgroupError,
    NotFoundError,
    NotNormalError,
    OrderCapExceededError,
    ValidationError,
)
from tests.oracles import generated


class TestFiniteGroup:
    def test_standard_orders(self, s3, s4, a4, d4, q8, v4):
        assert [g.order for g in (s3, s4, a4, d4, q8, v4)] == [6, 24, 12, 8, 8, 4]
        for group in (s3, s4, a4, d4, q8, v4):
            group.check_axioms()

    def test_identity_is_index_zero(self, s4):
        assert s4.label(0) == "e"
        assert all(s4.mul(0, x) == x == s4.mul(x, 0) for x in s4.elements())

    def test_non_latin_table_rejected(self):
        with pytest.raises(GroupAxiomError):
            FiniteGroup([[0, 1], [1, 1]])

    def test_non_associative_table_rejected(self):
        # A Latin square with identity 0 that is not a group (order 5 loop).
        table = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        with pytest.raises(GroupAxiomError) as excinfo:
            FiniteGroup(table)
        assert excinfo.value.axiom == "associativity"

    def test_out_of_range_entry_rejected(self):
        with pytest.raises(GroupAxiomError) as excinfo:
            FiniteGroup([[0, 1], [1, 2]])
        assert excinfo.value.axiom == "closure"

    def test_exponent_and_profile(self, q8, d4):
        assert q8.exponent == 4
        assert dict(q8.order_profile) == {1: 1, 2: 1, 4: 6}
        assert dict(d4.order_profile) == {1: 1, 2: 5, 4: 2}

    def test_labels_resolve(self, s3):
        x = s3.index_of("(12)")
        assert s3.label(x) == "(12)"
        with pytest.raises(NotFoundError):
            s3.index_of("(14)")

    def test_named_groups(self):
        assert named_group("C6").order == 6
        assert named_group("D5").order == 10
        assert named_group("A4").order == 12
        with pytest.raises(ValidationError):
            named_group("X9")


class TestSubgroups:
    def test_closure_of_transposition(self, s3, transposition):
        assert transposition.order == 2
        assert s3.index_of("(12)") in transposition

    def test_subgroup_from_elements_rejects_non_closed(self, s3):
        with pytest.raises(NotASubgroupError):
            subgroup_from_elements(s3, [s3.index_of("(12)"), s3.index_of("(13)")])

    def test_join_and_intersection(self, s3, transposition):
        other = closure(s3, [s3.index_of("(13)")])
        assert join(s3, transposition, other).is_whole
        assert intersection(s3, transposition, other).is_trivial

    def test_normality(self, s3, transposition):
        a3 = closure(s3, [s3.index_of("(123)")])
        assert is_normal(s3, a3)
        assert not is_normal(s3, transposition)
        assert normalizer(s3, transposition) == transposition
        assert normal_closure(s3, transposition.elements).is_whole

    def test_subgroup_counts(self, s3, s4, a4, q8):
        assert len(subgroups(s3)) == 6
        assert len(subgroups(s4)) == 30
        assert len(subgroups(a4)) == 10
        assert len(subgroups(q8)) == 6
        assert len(subgroup_class_representatives(s4)) == 11

    def test_subgroups_are_closed(self, d4):
        for sub in subgroups(d4):
            assert set(sub.elements) == set(generated(d4, sub.elements))

    def test_normal_subgroup_orders(self, s4, q8):
        assert sorted(sub.order for sub in normal_subgroups(s4)) == [1, 4, 12, 24]
        assert len(normal_subgroups(q8)) == 6

    def test_conjugacy_class_counts(self, s3, s4, d4, q8):
        assert [len(conjugacy_classes(g)) for g in (s3, s4, d4, q8)] == [3, 5, 5, 5]

    def test_subgroup_ordering(self, s3):
        sub = closure(s3, [s3.index_of("(12)")])
        assert SubgroupRef.trivial(s3) < sub < SubgroupRef.whole(s3)
        assert sub <= sub

    def test_cosets_partition_the_group(self, s3, transposition):
        result = cosets(s3, transposition)
        assert len(result) == 3
        assert result[0] == tuple(sorted(transposition.elements))
        assert sorted(x for coset in result for x in coset) == list(s3.elements())
        assert [coset[0] for coset in result] == sorted(coset[0] for coset in result)

    def test_conjugate(self, s3, transposition):
        swapped = conjugate(s3, s3.index_of("(13)"), transposition)
        assert swapped == closure(s3, [s3.index_of("(23)")])
        a3 = closure(s3, [s3.index_of("(123)")])
        assert all(conjugate(s3, g, a3) == a3 for g in s3.elements())


class TestConstructions:
    def test_quotient_by_a3(self, s3):
        a3 = closure(s3, [s3.index_of("(123)")])
        q = quotient(s3, a3)
        assert q.group.order == 2
        q.projection.check()
        assert q.projection.kernel() == a3

    def test_quotient_rejects_non_normal(self, s3, transposition):
        with pytest.raises(NotNormalError):
            quotient(s3, transposition)

    def test_direct_product(self):
        prod = direct_product(cyclic(2), cyclic(3))
        assert prod.group.order == 6
        assert prod.group.is_abelian
        assert isomorphic(prod.group, cyclic(6)) is not None
        for hom in prod.injections + prod.projections:
            hom.check()

    def test_semidirect_inversion_gives_dihedral(self):
        c3, c2 = cyclic(3), cyclic(2)
        inversion = [[0, 1, 2], [0, 2, 1]]
        sd = semidirect_product(c3, c2, inversion)
        assert not sd.group.is_abelian
        assert isomorphic(sd.group, dihedral(3)) is not None

    def test_semidirect_rejects_non_automorphism(self):
        with pytest.raises(InvalidActionError):
            semidirect_product(cyclic(3), cyclic(2), [[0, 1, 2], [1, 0, 2]])

    def test_subgroup_as_group(self, s4):
        v4 = next(sub for sub in normal_subgroups(s4) if sub.order == 4)
        group, inclusion = subgroup_as_group(v4)
        assert group.order == 4 and group.exponent == 2
        inclusion.check()
        assert inclusion.image_subgroup() == v4

    def test_order_cap(self):
        with pytest.raises(OrderCapExceededError) as excinfo:
            check_order_cap(101, "test group", cap=100)
        assert excinfo.value.exit_code == 2

    def test_trivial_group(self):
        group = trivial_group()
        assert group.order == 1
        assert SubgroupRef.whole(group).is_trivial


class TestHomomorphism:
    def test_identity_and_trivial(self, s3):
        assert Homomorphism.identity(s3).is_injective
        assert Homomorphism.trivial(s3, cyclic(2)).kernel().is_whole

    def test_sign_map(self, s3):
        sign = np.array([0 if s3.element_order(x) != 2 else 1 for x in s3.elements()])
        hom = Homomorphism(s3, cyclic(2), sign)
        assert hom.is_homomorphism()
        assert hom.kernel().order == 3

    def test_non_homomorphism_reports_violation(self, s3):
        hom = Homomorphism(s3, cyclic(3), np.arange(6) % 3)
        assert not hom.is_homomorphism()
        assert hom.first_violation() is not None
        with pytest.raises(ValidationError):
            hom.check()


class TestIsomorphism:
    @pytest.mark.parametrize("name", ["C6", "S3", "D4", "Q8", "V4", "A4"])
    def test_reflexive(self, name):
        group = named_group(name)
        iso = isomorphic(group, group)
        assert iso is not None
        assert iso.is_homomorphism() and iso.is_injective

    @pytest.mark.parametrize(
        "first,second",
        [
            (dihedral(3), symmetric(3)),
            (direct_product(cyclic(2), cyclic(2)).group, klein()),
            (direct_product(cyclic(2), cyclic(3)).group, cyclic(6)),
            (dihedral(4), quaternion()),
            (cyclic(4), klein()),
        ],
        ids=["D3-S3", "C2xC2-V4", "C2xC3-C6", "D4-Q8", "C4-V4"],
    )
    def test_symmetric(self, first, second):
        forward, backward = isomorphic(first, second), isomorphic(second, first)
        assert (forward is None) == (backward is None)
        if forward is not None:
            assert forward.is_homomorphism() and backward.is_homomorphism()
