"""
Entry point for the dominion toolkit.

This script builds the Typer application and runs it with exit codes
taken from the toolkit error hierarchy.
"""
import sys
from typing import List, Optional

import click
import typer
from loguru import logger

from src.cli.app import create_app
from src.utils.errors import ToolkitError


def run(argv: Optional[List[str]] = None) -> int:
    """
    Run one command line and return its exit code.

    Reports go to stdout; errors go to stderr as ``error: <message>``.

    Args:
        argv: Arguments without the program name; ``sys.argv[1:]`` if omitted

    Returns:
        0 on success, 1 on validation or precondition errors, 2 when an order
        cap or node budget is exhausted
    """
    command = typer.main.get_command(create_app())
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        result = command.main(args=args, prog_name="dominion", standalone_mode=False)
    except ToolkitError as e:
        logger.debug(f"{type(e).__name__}: {e.message}")
        typer.echo(f"error: {e.message}", err=True)
        return e.exit_code
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return 1
    except click.Abort:
        typer.echo("aborted", err=True)
        return 1
    return result if isinstance(result, int) else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
