"""Tests for homomorphism enumeration, isomorphism and catalog approximations."""
import itertools

import pytest

from src.models.catalog import Catalog
from src.models.group import SubgroupRef
from src.services.backtrack import HomomorphismSearch
from src.services.groups import closure, normal_subgroups
from src.services.homsearch import (
    agreeing_pairs,
    approx_quotient_check,
    dominion_upper_approx,
    enumerate_homs,
    equalizer,
)
from src.services.isomorphism import isomorphic
from src.services.standard_groups import cyclic, dihedral, klein, symmetric, trivial_group
from src.services.varieties import abelian
from src.services.wreath import omega_wreath
from src.utils.errors import BudgetExhaustedError, ValidationError
from tests.oracles import homs_by_generator_assignment, homs_by_total_functions

SMALL = [trivial_group(), cyclic(2), cyclic(3), klein(), cyclic(4), cyclic(5), cyclic(6), symmetric(3)]


class TestEnumeration:
    def test_endomorphisms_of_s3(self, s3):
        assert len(enumerate_homs(s3, s3)) == 10

    @pytest.mark.parametrize(
        "domain,codomain",
        list(itertools.product(SMALL, SMALL)),
        ids=lambda g: g.name,
    )
    def test_matches_generator_assignment_oracle(self, domain, codomain):
        found = {hom.key for hom in enumerate_homs(domain, codomain)}
        assert found == homs_by_generator_assignment(domain, codomain)

    @pytest.mark.parametrize(
        "domain,codomain",
        [(d, c) for d in SMALL if d.order <= 5 for c in SMALL],
        ids=lambda g: g.name,
    )
    def test_matches_total_function_oracle(self, domain, codomain):
        found = {hom.key for hom in enumerate_homs(domain, codomain)}
        assert found == homs_by_total_functions(domain, codomain)

    def test_every_result_is_a_homomorphism(self, s3, d4):
        for hom in enumerate_homs(d4, s3):
            assert hom.is_homomorphism()

    def test_forced_generator_images(self, s3):
        gen = s3.index_of("(12)")
        generators = s3.greedy_generators(s3.closure_mask(range(s3.order)), seed=[gen])
        search = HomomorphismSearch(s3, s3, generators=generators, forced={gen: 0})
        maps = list(search)
        assert maps and all(hom(gen) == 0 for hom in maps)

    def test_injective_search(self, q8, d4):
        assert HomomorphismSearch(q8, d4, injective=True).first() is None
        assert HomomorphismSearch(klein(), d4, injective=True).first() is not None

    def test_generators_must_generate(self, s3):
        with pytest.raises(ValidationError):
            HomomorphismSearch(s3, s3, generators=[s3.index_of("(12)")])

    def test_node_budget(self, s4):
        with pytest.raises(BudgetExhaustedError) as excinfo:
            enumerate_homs(s4, s4, node_budget=3)
        assert excinfo.value.exit_code == 2


class TestIsomorphism:
    def test_small_wreath_is_dihedral(self):
        w = omega_wreath(cyclic(2), cyclic(2))
        assert w.flat.order == 8
        witness = isomorphic(w.flat, dihedral(4))
        assert witness is not None
        assert witness.is_injective and witness.is_homomorphism()

    def test_non_isomorphic_pairs(self, q8, d4, c4, v4):
        assert isomorphic(q8, d4) is None
        assert isomorphic(c4, v4) is None
        assert isomorphic(symmetric(3), cyclic(6)) is None


class TestEqualizers:
    def test_agreeing_pairs_respect_constraint(self, s3, transposition):
        for pair in agreeing_pairs(s3, cyclic(2), transposition):
            eq = equalizer(pair)
            assert transposition.issubset(eq)

    def test_unordered_pairs_are_fewer(self, s3, transposition):
        ordered = list(agreeing_pairs(s3, s3, transposition))
        unordered = list(agreeing_pairs(s3, s3, transposition, unordered=True))
        assert 0 < len(unordered) < len(ordered)


class TestApproximation:
    def test_c4_with_c2_target(self, c4):
        square = closure(c4, [c4.index_of("c^2")])
        result = dominion_upper_approx(c4, square, abelian(), Catalog.from_groups([cyclic(2)]))
        assert result.subgroup == square
        assert result.is_trivial

    def test_trivial_subgroup_of_c4(self, c4):
        trivial = SubgroupRef.trivial(c4)
        only_c2 = dominion_upper_approx(c4, trivial, abelian(), Catalog.from_groups([cyclic(2)]))
        assert only_c2.subgroup.order == 2
        with_c4 = dominion_upper_approx(c4, trivial, abelian(), Catalog.from_groups([cyclic(2), c4]))
        assert with_c4.subgroup.is_trivial
        assert with_c4.contributing_pairs

    def test_empty_catalog_is_vacuous(self, c4):
        result = dominion_upper_approx(c4, SubgroupRef.trivial(c4), abelian(), Catalog.empty())
        assert result.vacuous
        assert result.subgroup.is_whole

    def test_catalog_members_are_validated(self, c4, s3):
        with pytest.raises(ValidationError):
            dominion_upper_approx(c4, SubgroupRef.trivial(c4), abelian(), Catalog.from_groups([s3]))

    def test_contributing_pairs_reproduce_the_result(self, s3, transposition):
        catalog = Catalog.from_groups([cyclic(2), cyclic(3), s3])
        result = dominion_upper_approx(s3, transposition, None, catalog)
        mask = SubgroupRef.whole(s3).mask.copy()
        for _, pair in result.contributing_pairs:
            mask &= pair.f.agreement_mask(pair.g)
        assert SubgroupRef.from_mask(s3, mask) == result.subgroup

    def test_parallel_matches_serial(self, s3, transposition):
        catalog = Catalog.from_groups([cyclic(2), cyclic(3), s3])
        serial = dominion_upper_approx(s3, transposition, None, catalog, jobs=1)
        parallel = dominion_upper_approx(s3, transposition, None, catalog, jobs=2)
        assert serial.subgroup == parallel.subgroup

    def test_quotient_compatibility(self, d4, small_abelian_catalog):
        center = next(sub for sub in normal_subgroups(d4) if sub.order == 2)
        reflections = closure(d4, list(center.elements) + [d4.index_of("s")])
        assert approx_quotient_check(d4, reflections, center, None, small_abelian_catalog)
