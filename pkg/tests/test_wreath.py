"""Tests for group actions and wreath products."""
import numpy as np
import pytest

from src.models.group import Homomorphism
from src.services.isomorphism import isomorphic
from src.services.standard_groups import cyclic, dihedral, klein, symmetric
from src.services.varieties import abelian, is_member, metabelian
from src.services.wreath import (
    GroupAction,
    check_wreath_membership,
    coset_action,
    induced_map,
    omega_wreath,
    regular_action,
)
from src.utils.errors import InvalidActionError, OrderCapExceededError, PreconditionError, ValidationError


class TestActions:
    def test_regular_action_is_valid(self, s3):
        action = regular_action(s3)
        action.check()
        assert action.domain_size == 6
        assert action.stabilizer(0).is_trivial

    def test_coset_action_stabilizes_the_subgroup(self, s3, transposition):
        action = coset_action(s3, transposition)
        action.check()
        assert action.domain_size == 3
        assert action.stabilizer(0) == transposition

    def test_left_action_rejected(self, s3):
        # ω·g = gω is a left action; it fails the right-action law in a nonabelian group.
        bad = GroupAction(s3, 6, s3.table.copy())
        with pytest.raises(InvalidActionError):
            bad.check()

    def test_shape_checked(self, s3):
        with pytest.raises(InvalidActionError):
            GroupAction(s3, 3, np.zeros((6, 4), dtype=int))


class TestWreathProducts:
    def test_c2_wreath_c2_is_d4(self):
        w = omega_wreath(cyclic(2), cyclic(2))
        assert w.flat.order == 8
        assert isomorphic(w.flat, dihedral(4)) is not None

    def test_c2_wreath_c3(self):
        w = omega_wreath(cyclic(2), cyclic(3))
        assert w.flat.order == 24
        w.flat.check_axioms()
        assert not w.flat.is_abelian

    def test_coset_wreath_order(self, s3, transposition):
        w = omega_wreath(cyclic(2), s3, coset_action(s3, transposition))
        assert w.degree == 3
        assert w.flat.order == 48
        w.flat.check_axioms()

    def test_canonical_maps(self):
        w = omega_wreath(cyclic(3), cyclic(2))
        w.projection.check()
        w.top_embedding.check()
        assert w.projection.kernel() == w.base_subgroup
        assert np.array_equal(w.projection.compose(w.top_embedding).image, np.arange(2))
        for point in range(w.degree):
            embedding = w.coordinate_embedding(point)
            embedding.check()
            assert embedding.is_injective
        w.base_embedding.check()

    def test_coordinates(self):
        w = omega_wreath(cyclic(3), cyclic(2))
        index = w.encode(1, [2, 1])
        assert w.decode(index) == (1, (2, 1))
        assert w.support(w.encode(0, [0, 2])) == (1,)
        with pytest.raises(ValidationError):
            w.encode(0, [1])

    def test_base_acts_by_shifting_coordinates(self):
        w = omega_wreath(cyclic(3), cyclic(2))
        top = w.top_embedding(1)
        placed = w.encode(0, [1, 0])
        conjugated = w.flat.mul(w.flat.mul(w.flat.inv(top), placed), top)
        assert w.support(conjugated) == (1,)

    def test_order_cap(self):
        with pytest.raises(OrderCapExceededError):
            omega_wreath(cyclic(3), cyclic(4), order_cap=100)

    def test_action_must_come_from_top_group(self, s3):
        with pytest.raises(InvalidActionError):
            omega_wreath(cyclic(2), cyclic(6), regular_action(s3))


class TestInducedMaps:
    def test_induced_map_is_homomorphism(self):
        c4, c2 = cyclic(4), cyclic(2)
        f = Homomorphism(c4, c2, np.arange(4) % 2)
        source = omega_wreath(c4, c2)
        induced = induced_map(f, source)
        induced.check()
        target_projection = omega_wreath(c2, c2).projection
        assert np.array_equal(target_projection.image[induced.image], source.projection.image)

    def test_induced_map_checks_target(self):
        c4, c2 = cyclic(4), cyclic(2)
        f = Homomorphism(c4, c2, np.arange(4) % 2)
        with pytest.raises(ValidationError):
            induced_map(f, omega_wreath(c4, c2), omega_wreath(c2, cyclic(3)))

    def test_induced_maps_are_functorial(self, s3, transposition):
        c2, c4 = cyclic(2), cyclic(4)
        square = c4.index_of("c^2")
        f = Homomorphism(c2, c4, np.array([0, square]))
        g = Homomorphism(c4, c4, np.array([c4.power(x, 3) for x in c4.elements()]))
        action = coset_action(s3, transposition)
        small, large = omega_wreath(c2, s3, action), omega_wreath(c4, s3, action)

        f_star = induced_map(f, small, large)
        g_star = induced_map(g, large, large)
        assert induced_map(g.compose(f), small, large) == g_star.compose(f_star)
        assert induced_map(Homomorphism.identity(c4), large, large) == Homomorphism.identity(large.flat)

    def test_embedding_induces_an_embedding(self):
        c2, c4 = cyclic(2), cyclic(4)
        f = Homomorphism(c2, c4, np.array([0, c4.index_of("c^2")]))
        induced = induced_map(f, omega_wreath(c2, cyclic(3)))
        assert induced.is_injective
        assert induced.image_subgroup().order == 2 ** 3 * 3


class TestWreathMembership:
    @pytest.mark.parametrize(
        "base,top",
        [
            (cyclic(2), cyclic(2)),
            (cyclic(3), cyclic(2)),
            (cyclic(2), cyclic(3)),
            (klein(), cyclic(2)),
            (cyclic(4), cyclic(3)),
            (cyclic(5), cyclic(2)),
            (cyclic(2), klein()),
            (cyclic(3), cyclic(4)),
            (cyclic(2), cyclic(5)),
        ],
        ids=lambda g: g.name,
    )
    def test_abelian_by_abelian(self, base, top):
        w = omega_wreath(base, top)
        assert w.flat.order <= 2000
        assert check_wreath_membership(w, metabelian())

    def test_nonabelian_wreath_leaves_abelian(self):
        w = omega_wreath(cyclic(2), cyclic(2))
        assert not is_member(w.flat, abelian())

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            check_wreath_membership(omega_wreath(cyclic(2), cyclic(2)), abelian())
        with pytest.raises(PreconditionError):
            check_wreath_membership(omega_wreath(cyclic(2), symmetric(3)), metabelian())
