"""Per-invocation command configuration."""
from typing import Any, Dict, Literal, Optional

from pydantic import Field, PositiveInt

from src.config import settings
from src.models.base import ToolkitModel


class CommandConfig(ToolkitModel):
    """Global flags of one invocation; they override ``settings`` while it runs."""

    output_format: Literal["text", "json"] = Field(settings.OUTPUT_FORMAT, description="Report format")
    order_cap: Optional[PositiveInt] = Field(None, description="Order cap override")
    node_budget: Optional[PositiveInt] = Field(None, description="Node budget override")
    jobs: Optional[PositiveInt] = Field(None, description="Worker processes")
    log_level: Optional[str] = Field(None, description="Log level override")

    def apply(self) -> Dict[str, Any]:
        """
        Push the overrides into the global settings.

        Returns:
            The replaced values, for ``restore``
        """
        overrides = {"ORDER_CAP": self.order_cap, "NODE_BUDGET": self.node_budget, "JOBS": self.jobs}
        previous = {}
        for key, value in overrides.items():
            if value is not None:
                previous[key] = getattr(settings, key)
                setattr(settings, key, value)
        return previous

    @staticmethod
    def restore(previous: Dict[str, Any]) -> None:
        for key, value in previous.items():
            setattr(settings, key, value)

    @property
    def wants_json(self) -> bool:
        return self.output_format == "json"
