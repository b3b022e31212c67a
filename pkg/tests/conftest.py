"""Shared fixtures: small groups, varieties and catalogs."""
import pytest

from src.config import settings
from src.models.catalog import Catalog
from src.models.group import FiniteGroup
from src.services.groups import closure
from src.services.standard_groups import alternating, cyclic, dihedral, klein, quaternion, symmetric
from src.services.varieties import abelian, abelian_of_exponent, metabelian, product


@pytest.fixture(autouse=True)
def _restore_settings():
    saved = settings.model_dump()
    yield
    for key, value in saved.items():
        setattr(settings, key, value)


@pytest.fixture
def s3() -> FiniteGroup:
    return symmetric(3)


@pytest.fixture
def s4() -> FiniteGroup:
    return symmetric(4)


@pytest.fixture
def a4() -> FiniteGroup:
    return alternating(4)


@pytest.fixture
def c4() -> FiniteGroup:
    return cyclic(4)


@pytest.fixture
def d4() -> FiniteGroup:
    return dihedral(4)


@pytest.fixture
def q8() -> FiniteGroup:
    return quaternion()


@pytest.fixture
def v4() -> FiniteGroup:
    return klein()


@pytest.fixture
def transposition(s3):
    """The subgroup generated by (12) in S3."""
    return closure(s3, [s3.index_of("(12)")])


@pytest.fixture
def abelian_variety():
    return abelian()


@pytest.fixture
def metabelian_variety():
    return metabelian()


@pytest.fixture
def exp3_by_exp2():
    """Abelian exponent 3 by abelian exponent 2: factors of coprime exponent."""
    return product(abelian_of_exponent(3), abelian_of_exponent(2), name="A3-by-A2")


@pytest.fixture
def small_abelian_catalog() -> Catalog:
    return Catalog.from_groups([cyclic(2), cyclic(3), cyclic(4), klein()], variety="abelian")
