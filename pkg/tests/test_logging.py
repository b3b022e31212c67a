"""Tests for the loguru configuration."""
import json
import sys

from loguru import logger

from src.config import settings
from src.utils.logging import configure_logging


def test_file_sink_writes_json_records(tmp_path, capsys):
    path = tmp_path / "toolkit.log"
    try:
        configure_logging(log_file=path, level="error")
        logger.debug("search finished")
        logger.complete()
    finally:
        logger.remove()
        logger.add(sys.__stderr__, level=settings.LOG_LEVEL)
    records = [json.loads(line) for line in path.read_text().splitlines()]
    assert any(record["record"]["message"] == "search finished" for record in records)
    assert "search finished" not in capsys.readouterr().err
