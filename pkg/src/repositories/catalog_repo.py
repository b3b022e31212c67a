"""Repository for catalog directories (group files plus ``manifest.json``)."""
import json
from pathlib import Path
from typing import Optional, Union

from loguru import logger
from pydantic import ValidationError as SchemaError

from src import __version__
from src.models.catalog import Catalog, CatalogEntry
from src.models.files import CatalogManifest, ManifestEntry
from src.models.variety import VarietyPresentation
from src.repositories.group_repo import group_repo
from src.services.varieties import is_member
from src.utils.errors import CatalogError, NotFoundError, ValidationError

MANIFEST = "manifest.json"


class CatalogRepository:
    """Repository for saving and loading catalogs."""

    def save(self, catalog: Catalog, directory: Union[str, Path]) -> Path:
        """
        Write one group file per entry and the manifest.

        Args:
            catalog: Catalog to write
            directory: Target directory (created if missing)

        Returns:
            Path of the manifest

        Raises:
            CatalogError: If writing fails
        """
        directory = Path(directory)
        try:
            directory.mkdir(parents=True, exist_ok=True)
            entries = []
            for entry in catalog:
                filename = f"{entry.id}.json"
                group_repo.save(entry.group, directory / filename, provenance=entry.provenance)
                entries.append(
                    ManifestEntry(
                        id=entry.id,
                        file=filename,
                        provenance=entry.provenance,
                        memberships=dict(sorted(entry.memberships.items())),
                        fingerprint=entry.group.fingerprint,
                    )
                )
            manifest = CatalogManifest(version=__version__, variety=catalog.variety, entries=entries)
            path = directory / MANIFEST
            path.write_text(json.dumps(manifest.to_dict(), indent=2) + "\n", encoding="utf-8")
            logger.info(f"Saved catalog with {len(entries)} entries to {directory}")
            return path
        except Exception as e:
            logger.error(f"Failed to save catalog to {directory}: {e}")
            raise CatalogError(f"failed to save catalog to {directory}: {e}")

    def load(
        self,
        directory: Union[str, Path],
        variety: Optional[VarietyPresentation] = None,
    ) -> Catalog:
        """
        Load a catalog and re-validate it.

        Every group file is checked against the group axioms and against the
        fingerprint recorded at save time; with ``variety`` given, cached
        memberships are recomputed.

        Raises:
            NotFoundError: If the manifest or a referenced group file is missing
            GroupAxiomError: If a group file violates an axiom
            CatalogError: If the manifest is malformed or disagrees with the files
        """
        directory = Path(directory)
        path = directory / MANIFEST
        try:
            if not path.exists():
                raise NotFoundError(f"catalog manifest not found: {path}")
            manifest = CatalogManifest.model_validate(json.loads(path.read_text(encoding="utf-8")))
            entries = []
            for item in manifest.entries:
                file_path = directory / item.file
                if not file_path.exists():
                    raise NotFoundError(f"catalog entry {item.id} references missing file {file_path}")
                group = group_repo.load(file_path)
                if item.fingerprint is not None and item.fingerprint != group.fingerprint:
                    raise CatalogError(f"catalog entry {item.id}: table differs from the one saved")
                memberships = dict(item.memberships)
                if variety is not None:
                    member = is_member(group, variety)
                    if variety.name in memberships and memberships[variety.name] != member:
                        raise CatalogError(
                            f"catalog entry {item.id}: cached membership in {variety.name} is "
                            f"{memberships[variety.name]}, recomputed {member}"
                        )
                    memberships[variety.name] = member
                entries.append(CatalogEntry(item.id, group, item.provenance, memberships))
            catalog = Catalog(tuple(entries), manifest.variety)
            logger.info(f"Loaded catalog with {len(catalog)} entries from {directory}")
            return catalog
        except (NotFoundError, ValidationError, CatalogError):
            raise
        except SchemaError as e:
            logger.error(f"Invalid catalog manifest {path}: {e}")
            raise CatalogError(f"invalid catalog manifest {path}: {e.errors()[0]['msg']}")
        except Exception as e:
            logger.error(f"Failed to load catalog from {directory}: {e}")
            raise CatalogError(f"failed to load catalog from {directory}: {e}")


# Create a singleton instance
catalog_repo = CatalogRepository()
