"""Repository for variety files and builtin variety names."""
import json
from pathlib import Path
from typing import Union

from loguru import logger
from pydantic import ValidationError as SchemaError

from src.models.files import VarietyFile
from src.models.variety import VarietyPresentation
from src.services.varieties import basis, builtin_variety, product
from src.utils.errors import NotFoundError, ParseError, ValidationError


def to_presentation(data: Union[str, VarietyFile]) -> VarietyPresentation:
    """
    Convert a variety file (or a builtin name) into a presentation.

    Raises:
        ParseError: If a law does not parse
        ValidationError: If a builtin name is unknown or the presentation is malformed
    """
    if isinstance(data, str):
        return builtin_variety(data)
    if data.builtin:
        variety = builtin_variety(data.builtin)
        if data.name and data.name != variety.name:
            variety = variety.model_copy(update={"name": data.name})
        return variety
    if data.laws:
        return basis(
            data.name or "custom",
            data.laws,
            exponent=data.exponent,
            abelian=data.abelian,
            contained_in=data.contained_in,
        )
    factors = [to_presentation(factor) for factor in data.factors]
    variety = product(*factors, name=data.name)
    updates = {}
    if data.exponent is not None:
        updates["declared_exponent"] = data.exponent
    if data.contained_in:
        updates["contained_in"] = tuple(data.contained_in)
    return variety.model_copy(update=updates) if updates else variety


class VarietyRepository:
    """Repository for loading variety presentations."""

    def load(self, ref: Union[str, Path]) -> VarietyPresentation:
        """
        Load a variety from a JSON file, or resolve a builtin name.

        Args:
            ref: Path to a variety file, or a builtin name such as ``metabelian``

        Raises:
            NotFoundError: If a path-like reference does not exist
            ParseError: If a law does not parse
            ValidationError: If the file is malformed or the name unknown
        """
        path = Path(ref)
        if not path.exists():
            if path.suffix:
                raise NotFoundError(f"variety file not found: {path}")
            return builtin_variety(str(ref))
        try:
            data = VarietyFile.model_validate(json.loads(path.read_text(encoding="utf-8")))
            if data.name is None:
                data = data.model_copy(update={"name": path.stem})
            variety = to_presentation(data)
            logger.debug(f"Loaded variety {variety.name}: {variety.describe()}")
            return variety
        except (ParseError, ValidationError):
            raise
        except SchemaError as e:
            logger.error(f"Invalid variety file {path}: {e}")
            raise ValidationError(f"invalid variety file {path}: {e.errors()[0]['msg']}")
        except Exception as e:
            logger.error(f"Failed to load variety file {path}: {e}")
            raise ValidationError(f"failed to load variety file {path}: {e}")


# Create a singleton instance
variety_repo = VarietyRepository()
