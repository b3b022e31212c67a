"""Base model class for file formats and reports."""
from typing import Any, Dict

from pydantic import BaseModel, ConfigDict


class ToolkitModel(BaseModel):
    """Base class for everything the toolkit reads from or writes to disk."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    def to_dict(self) -> Dict[str, Any]:
        """Convert model to a JSON-ready dictionary."""
        return self.model_dump(mode="json", exclude_none=True)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ToolkitModel":
        """Create model instance from dictionary."""
        return cls.model_validate(data)
