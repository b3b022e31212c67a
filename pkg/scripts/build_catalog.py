#!/usr/bin/env python
"""
Catalog initialization script for the dominion toolkit.

This script builds the standard target catalogs (abelian, metabelian and
abelian-by-exponent-2) up to a fixed order and writes them under a data
directory, one subdirectory per variety.
"""
import sys
from pathlib import Path

# Add parent directory to path for imports
parent_dir = Path(__file__).resolve().parent.parent
sys.path.append(str(parent_dir))

from loguru import logger

from src.repositories.catalog_repo import catalog_repo
from src.services.catalog_builder import catalog_builder
from src.services.varieties import builtin_variety
from src.utils.errors import ToolkitError
from src.utils.logging import configure_logging

CATALOGS = (("abelian", 24), ("metabelian", 24), ("abelian-exp-2", 16))


def init_catalogs(root: Path) -> bool:
    """Build and save every standard catalog below ``root``."""
    try:
        for name, max_order in CATALOGS:
            logger.info(f"Building {name} catalog up to order {max_order}...")
            variety = builtin_variety(name)
            catalog = catalog_builder.build_catalog(variety, max_order)
            catalog_repo.save(catalog, root / name)
            logger.info(f"Wrote {len(catalog)} entries to {root / name}")

        logger.success("Catalog initialization completed successfully")
        return True
    except ToolkitError as e:
        logger.error(f"Catalog initialization failed: {e.message}")
        return False
    except Exception as e:
        logger.error(f"Unexpected error during catalog initialization: {e}")
        return False


if __name__ == "__main__":
    configure_logging()
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else parent_dir / "data" / "catalogs"
    logger.info("Starting catalog initialization...")
    success = init_catalogs(target)
    sys.exit(0 if success else 1)
