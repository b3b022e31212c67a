"""Tests for catalog building and the file repositories."""
import json

import pytest

from src.models.catalog import Catalog, CatalogEntry
from src.repositories.catalog_repo import MANIFEST, catalog_repo
from src.repositories.group_repo import group_repo
from src.repositories.variety_repo import variety_repo
from src.services.catalog_builder import catalog_builder
from src.services.isomorphism import isomorphic
from src.services.standard_groups import cyclic, klein, symmetric
from src.services.varieties import abelian, is_member, metabelian
from src.utils.errors import (
    CatalogError,
    GroupAxiomError,
    NotASubgroupError,
    NotFoundError,
    NotNormalError,
    ParseError,
    ValidationError,
)


class TestCatalogBuilder:
    def test_abelian_groups_up_to_eight(self):
        catalog = catalog_builder.build_catalog(abelian(), 8)
        assert len(catalog) == 11
        assert catalog.variety == "abelian"
        keys = [(entry.order, entry.provenance) for entry in catalog]
        assert keys == sorted(keys)
        groups = catalog.groups
        for i, a in enumerate(groups):
            for b in groups[i + 1:]:
                assert a.order != b.order or isomorphic(a, b) is None
        assert all(entry.memberships == {"abelian": True} for entry in catalog)

    def test_constructor_subset(self):
        assert len(catalog_builder.build_catalog(abelian(), 8, ["cyclic"])) == 8
        assert len(catalog_builder.build_catalog(abelian(), 8, ["cyclic", "direct"])) == 11

    def test_metabelian_catalog_contains_s3(self):
        catalog = catalog_builder.build_catalog(metabelian(), 6)
        assert any(isomorphic(entry.group, symmetric(3)) is not None for entry in catalog)

    def test_unknown_constructor(self):
        with pytest.raises(ValidationError):
            catalog_builder.build_catalog(abelian(), 8, ["cyclic", "free"])

    def test_max_order_must_be_positive(self):
        with pytest.raises(ValidationError):
            catalog_builder.build_catalog(abelian(), 0)

    def test_grow_catalog(self):
        catalog = catalog_builder.build_catalog(abelian(), 4, ["cyclic"])
        grown = catalog_builder.grow_catalog(catalog, abelian())
        assert grown.entries[: len(catalog)] == catalog.entries
        assert sorted(entry.order for entry in grown.entries[len(catalog):]) == [4, 6, 8]

    def test_recheck_memberships(self):
        catalog = Catalog.from_groups([cyclic(2), symmetric(3)])
        assert list(catalog_builder.recheck_memberships(catalog, abelian()).values()) == [True, False]


class TestCatalogModel:
    def test_fingerprint_ignores_order(self):
        c2, c3 = cyclic(2), cyclic(3)
        assert Catalog.from_groups([c2, c3]).fingerprint == Catalog.from_groups([c3, c2]).fingerprint
        assert Catalog.from_groups([c2]).fingerprint != Catalog.from_groups([c2, c3]).fingerprint

    def test_get(self, small_abelian_catalog):
        first = small_abelian_catalog.entries[0]
        assert small_abelian_catalog.get(first.id) is first
        with pytest.raises(NotFoundError):
            small_abelian_catalog.get("missing")

    def test_extended_skips_known_tables(self, small_abelian_catalog):
        extra = Catalog.from_groups([cyclic(2), cyclic(5)]).entries
        assert len(small_abelian_catalog.extended(extra)) == len(small_abelian_catalog) + 1


class TestCatalogRepository:
    def test_save_and_load(self, tmp_path, small_abelian_catalog):
        path = catalog_repo.save(small_abelian_catalog, tmp_path / "abelian")
        assert path.name == MANIFEST
        loaded = catalog_repo.load(tmp_path / "abelian", abelian())
        assert [entry.id for entry in loaded] == [entry.id for entry in small_abelian_catalog]
        assert loaded.fingerprint == small_abelian_catalog.fingerprint
        assert loaded.variety == "abelian"
        assert all(entry.memberships["abelian"] for entry in loaded)

    def test_missing_manifest(self, tmp_path):
        with pytest.raises(NotFoundError):
            catalog_repo.load(tmp_path)

    def test_tampered_fingerprint(self, tmp_path, small_abelian_catalog):
        catalog_repo.save(small_abelian_catalog, tmp_path)
        manifest = json.loads((tmp_path / MANIFEST).read_text())
        manifest["entries"][0]["fingerprint"] = "0" * 64
        (tmp_path / MANIFEST).write_text(json.dumps(manifest))
        with pytest.raises(CatalogError):
            catalog_repo.load(tmp_path)

    def test_malformed_manifest(self, tmp_path):
        (tmp_path / MANIFEST).write_text(json.dumps({"entries": "none"}))
        with pytest.raises(CatalogError):
            catalog_repo.load(tmp_path)

    def test_stale_membership(self, tmp_path):
        entry = CatalogEntry("g00006_0", symmetric(3), "given(S3)", {"abelian": True})
        catalog_repo.save(Catalog((entry,)), tmp_path)
        with pytest.raises(CatalogError):
            catalog_repo.load(tmp_path, abelian())

    def test_corrupted_table_names_the_axiom(self, tmp_path, small_abelian_catalog):
        catalog_repo.save(small_abelian_catalog, tmp_path)
        path = tmp_path / f"{small_abelian_catalog.entries[0].id}.json"
        data = json.loads(path.read_text())
        data["table"] = [[0, 1], [1, 1]]
        path.write_text(json.dumps(data))
        with pytest.raises(GroupAxiomError):
            catalog_repo.load(tmp_path)

    def test_missing_group_file(self, tmp_path, small_abelian_catalog):
        catalog_repo.save(small_abelian_catalog, tmp_path)
        (tmp_path / f"{small_abelian_catalog.entries[0].id}.json").unlink()
        with pytest.raises(NotFoundError):
            catalog_repo.load(tmp_path)


class TestGroupRepository:
    def test_round_trip_keeps_labels(self, tmp_path, s3):
        group_repo.save(s3, tmp_path / "s3.json", provenance="symmetric(3)")
        loaded = group_repo.load(tmp_path / "s3.json")
        assert loaded.fingerprint == s3.fingerprint
        assert loaded.labels == s3.labels

    def test_identity_moved_to_front(self, tmp_path):
        path = tmp_path / "c2.json"
        path.write_text(json.dumps({"table": [[1, 0], [0, 1]], "labels": ["a", "e"]}))
        group = group_repo.load(path)
        assert group.labels[0] == "e"
        assert group.name == "c2"
        assert group.mul(1, 1) == 0

    def test_named_group(self):
        assert group_repo.load("S3").order == 6

    def test_missing_file(self, tmp_path):
        with pytest.raises(NotFoundError):
            group_repo.load(tmp_path / "absent.json")

    def test_bad_table(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"table": [[0, 1], [1, 2]]}))
        with pytest.raises(GroupAxiomError) as excinfo:
            group_repo.load(path)
        assert excinfo.value.axiom == "closure"

    def test_declared_order_mismatch(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"order": 3, "table": [[0, 1], [1, 0]]}))
        with pytest.raises(ValidationError):
            group_repo.load(path)

    def test_extension_resolves_group_file_next_to_it(self, tmp_path, s3):
        group_repo.save(s3, tmp_path / "s3.json")
        path = tmp_path / "s3_over_a3.json"
        path.write_text(json.dumps({"group": "s3.json", "normal": "(123)"}))
        group, normal = group_repo.load_extension(path)
        assert group.fingerprint == s3.fingerprint
        assert normal.order == 3

    def test_extension_needs_a_normal_subgroup(self, tmp_path):
        path = tmp_path / "ext.json"
        path.write_text(json.dumps({"group": "S3", "normal": "(12)"}))
        with pytest.raises(NotNormalError):
            group_repo.load_extension(path)
        path.write_text(json.dumps({"group": "S3"}))
        with pytest.raises(ValidationError):
            group_repo.load_extension(path)


class TestParseSubgroup:
    def test_label(self, c4):
        assert group_repo.parse_subgroup(c4, "c^2").order == 2

    def test_trivial(self, c4):
        assert group_repo.parse_subgroup(c4, "e").is_trivial
        assert group_repo.parse_subgroup(c4, "").is_trivial

    def test_index_list(self, c4):
        square = c4.index_of("c^2")
        assert group_repo.parse_subgroup(c4, f"[0, {square}]").order == 2
        with pytest.raises(NotASubgroupError):
            group_repo.parse_subgroup(c4, f"0,{c4.index_of('c')}")

    def test_generator_list(self, s3):
        assert group_repo.parse_subgroup(s3, "(12) (123)").is_whole

    def test_unknown_label(self, s3):
        with pytest.raises(NotFoundError):
            group_repo.parse_subgroup(s3, "(14)")


class TestVarietyRepository:
    def test_builtin_name(self):
        assert variety_repo.load("metabelian").is_product
        assert variety_repo.load("abelian-exp-3").exponent == 3

    def test_product_file(self, tmp_path):
        path = tmp_path / "a3a2.json"
        path.write_text(json.dumps({"factors": ["abelian-exp-3", "abelian-exp-2"]}))
        variety = variety_repo.load(path)
        assert variety.name == "a3a2"
        assert variety.exponent == 6
        assert variety_repo.load(path).split()[0].name == "abelian-exp-3"

    def test_laws_file(self, tmp_path):
        path = tmp_path / "exp4.json"
        path.write_text(json.dumps({"laws": ["x1^4"]}))
        assert variety_repo.load(path).exponent == 4

    def test_builtin_file_rename(self, tmp_path):
        path = tmp_path / "mb.json"
        path.write_text(json.dumps({"name": "AA", "builtin": "metabelian"}))
        assert variety_repo.load(path).name == "AA"

    def test_missing_file(self, tmp_path):
        with pytest.raises(NotFoundError):
            variety_repo.load(tmp_path / "absent.json")

    def test_ambiguous_file(self, tmp_path):
        path = tmp_path / "both.json"
        path.write_text(json.dumps({"builtin": "abelian", "laws": ["x1^2"]}))
        with pytest.raises(ValidationError):
            variety_repo.load(path)

    def test_bad_law(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"laws": ["x0"]}))
        with pytest.raises(ParseError):
            variety_repo.load(path)

    def test_unknown_builtin(self):
        with pytest.raises(ValidationError):
            variety_repo.load("nilpotent7")

    def test_klein_in_abelian_exp_two(self):
        assert is_member(klein(), variety_repo.load("abelian-exp-2"))
