"""Tests for verbal subgroups, membership and variety presentations."""
import pytest

from src.services.groups import direct_product, normal_subgroups, quotient, subgroup_as_group
from src.services.homsearch import enumerate_homs
from src.services.standard_groups import cyclic, dihedral, named_group, quaternion, symmetric, trivial_group
from src.services.varieties import (
    abelian,
    abelian_of_exponent,
    all_groups,
    basis,
    builtin_variety,
    disjoint_by_exponent,
    group_exponent,
    is_member,
    metabelian,
    nilpotent_class_two,
    of_exponent,
    product,
    solvable,
    trivial_variety,
    verbal_series,
    verbal_subgroup,
)
from src.utils.errors import ParseError, UndeclaredExponentError, ValidationError
from tests.oracles import derived_series, element_power_subgroup


class TestVerbalSubgroups:
    def test_derived_subgroup_of_s3_is_a3(self, s3):
        sub = verbal_subgroup(s3, abelian())
        assert sub.order == 3
        assert set(sub.elements) == set(derived_series(s3, 1))

    def test_metabelian_verbal_subgroup_of_s4_is_v4(self, s4):
        sub = verbal_subgroup(s4, metabelian())
        assert sub.order == 4
        assert set(sub.elements) == set(derived_series(s4, 2))

    @pytest.mark.parametrize("name", ["S3", "S4", "A4", "D4", "Q8"])
    def test_derived_subgroups_match_oracle(self, name):
        group = named_group(name)
        assert set(verbal_subgroup(group, abelian()).elements) == set(derived_series(group, 1))
        assert set(verbal_subgroup(group, metabelian()).elements) == set(derived_series(group, 2))

    def test_power_law(self):
        c6 = cyclic(6)
        sub = verbal_subgroup(c6, of_exponent(3))
        assert set(sub.elements) == set(element_power_subgroup(c6, 3))
        assert sub.order == 2

    def test_class_representative_pruning_agrees(self, s4, a4):
        for group in (s4, a4):
            for variety in (abelian(), metabelian(), of_exponent(2)):
                assert verbal_subgroup(group, variety, class_representatives=True) == verbal_subgroup(
                    group, variety, class_representatives=False
                )

    def test_verbal_series(self, s4):
        assert [sub.order for sub in verbal_series(s4, abelian())] == [24, 12, 4, 1]

    def test_trivial_and_all(self, s3):
        assert verbal_subgroup(s3, trivial_variety()).is_whole
        assert verbal_subgroup(s3, all_groups()).is_trivial


GROUP_NAMES = ["S3", "S4", "A4", "D4", "Q8", "C6"]


def _laws():
    return [abelian(), metabelian(), of_exponent(2), nilpotent_class_two()]


class TestVerbalFunctoriality:
    @pytest.mark.parametrize("name", GROUP_NAMES)
    def test_quotient_in_variety_iff_verbal_subgroup_inside(self, name):
        group = named_group(name)
        for variety in _laws():
            verbal = verbal_subgroup(group, variety)
            for normal in normal_subgroups(group):
                assert is_member(quotient(group, normal).group, variety) == verbal.issubset(normal)

    @pytest.mark.parametrize(
        "domain,codomain",
        [
            (symmetric(3), symmetric(3)),
            (dihedral(4), symmetric(3)),
            (quaternion(), dihedral(4)),
            (cyclic(6), symmetric(3)),
        ],
        ids=["S3-S3", "D4-S3", "Q8-D4", "C6-S3"],
    )
    def test_homomorphic_images_commute_with_verbal_subgroups(self, domain, codomain):
        for hom in enumerate_homs(domain, codomain):
            image, inclusion = subgroup_as_group(hom.image_subgroup())
            for variety in _laws():
                assert hom.image_of(verbal_subgroup(domain, variety)) == inclusion.image_of(
                    verbal_subgroup(image, variety)
                )

    @pytest.mark.parametrize("name", GROUP_NAMES + ["D5", "V4"])
    def test_product_membership_goes_through_the_outer_verbal_subgroup(self, name):
        group = named_group(name)
        pairs = [
            (abelian(), abelian()),
            (abelian_of_exponent(3), abelian_of_exponent(2)),
            (abelian(), of_exponent(2)),
            (of_exponent(2), abelian()),
        ]
        for inner, outer in pairs:
            kernel, _ = subgroup_as_group(verbal_subgroup(group, outer))
            assert is_member(group, product(inner, outer)) == is_member(kernel, inner)

    def test_group_exponent(self, s3, q8, v4):
        assert group_exponent(s3) == 6
        assert group_exponent(q8) == 4
        assert group_exponent(v4) == 2
        assert group_exponent(trivial_group()) == 1


class TestMembership:
    def test_metabelian_members(self, s3, s4, a4, d4):
        variety = metabelian()
        assert is_member(s3, variety)
        assert is_member(a4, variety)
        assert is_member(d4, variety)
        assert not is_member(s4, variety)
        assert is_member(s4, solvable(3))

    def test_abelian_members(self, s3, v4):
        assert is_member(v4, abelian())
        assert not is_member(s3, abelian())
        assert is_member(direct_product(cyclic(2), cyclic(4)).group, abelian())

    def test_nilpotent_class_two(self, s3, d4, q8):
        variety = nilpotent_class_two()
        assert is_member(d4, variety)
        assert is_member(q8, variety)
        assert not is_member(s3, variety)

    def test_exponent_varieties(self, v4, c4):
        assert is_member(v4, abelian_of_exponent(2))
        assert not is_member(c4, abelian_of_exponent(2))
        assert is_member(c4, of_exponent(4))

    def test_trivial_variety(self):
        assert is_member(trivial_group(), trivial_variety())
        assert not is_member(cyclic(2), trivial_variety())

    def test_product_of_coprime_exponents(self, s3, exp3_by_exp2):
        assert is_member(s3, exp3_by_exp2)
        assert not is_member(dihedral(4), exp3_by_exp2)
        assert is_member(cyclic(6), exp3_by_exp2)


class TestPresentations:
    def test_disjointness_by_exponent(self):
        assert disjoint_by_exponent(abelian_of_exponent(3), abelian_of_exponent(2))
        assert not disjoint_by_exponent(of_exponent(2), of_exponent(4))

    def test_undeclared_exponent(self):
        with pytest.raises(UndeclaredExponentError):
            disjoint_by_exponent(abelian(), abelian_of_exponent(2))

    def test_exponent_inference(self, exp3_by_exp2):
        assert exp3_by_exp2.exponent == 6
        assert basis("e6", ["x1^6", "x1^4"]).exponent == 2
        assert abelian().exponent is None

    def test_parsed_power_laws_declare_exponents(self):
        assert basis("e4", ["x1^4"]).exponent == 4
        assert disjoint_by_exponent(basis("e3", ["x1^3"]), basis("e2", ["x1^2"]))

    def test_split(self, exp3_by_exp2):
        inner, outer = exp3_by_exp2.split()
        assert (inner.name, outer.name) == ("abelian-exp-3", "abelian-exp-2")
        with pytest.raises(ValueError):
            abelian().split()

    def test_three_factor_split(self):
        inner, outer = solvable(3).split()
        assert inner.name == "abelian"
        assert outer.is_product and len(outer.factors) == 2

    def test_declared_containment(self):
        assert abelian().declared_subvariety_of(metabelian())
        assert abelian_of_exponent(2).declared_subvariety_of(abelian())
        assert trivial_variety().declared_subvariety_of(abelian())
        assert not metabelian().declared_subvariety_of(abelian())

    def test_builtin_names(self):
        assert builtin_variety("metabelian").is_product
        assert builtin_variety("abelian-exp-5").exponent == 5
        assert builtin_variety("solvable-3").arity == 2
        with pytest.raises(ValidationError):
            builtin_variety("nilpotent7")
        with pytest.raises(ValidationError):
            builtin_variety("exp-0")

    def test_basis_from_strings(self):
        variety = basis("commutative", ["[x1,x2]"], abelian=True)
        assert variety.abelian
        with pytest.raises(ParseError):
            basis("broken", ["[x1 x2]"])

    def test_product_needs_two_factors(self):
        with pytest.raises(ValidationError):
            product(abelian())
