"""Typer application for the dominion toolkit."""
from typing import Optional

import pydantic
import typer

from src import __version__
from src.cli.commands import catalog, constructions, dominion, groups, witness
from src.cli.config import CommandConfig
from src.config import settings
from src.utils.errors import ValidationError
from src.utils.logging import configure_logging


def create_app() -> typer.Typer:
    """
    Create and configure the command-line application.

    Returns:
        Configured Typer application
    """
    app = typer.Typer(
        name="dominion",
        help="Dominions, wreath products and verbal subgroups of small finite groups.",
        no_args_is_help=True,
        add_completion=False,
        pretty_exceptions_enable=False,
    )

    @app.callback()
    def configure(
        ctx: typer.Context,
        output_format: Optional[str] = typer.Option(None, "--format", help="Report format: text or json"),
        order_cap: Optional[int] = typer.Option(None, "--order-cap", help="Largest group order materialised"),
        node_budget: Optional[int] = typer.Option(None, "--node-budget", help="Backtracking node budget"),
        jobs: Optional[int] = typer.Option(None, "--jobs", help="Worker processes"),
        log_level: Optional[str] = typer.Option(None, "--log-level", help="Log level on stderr"),
    ) -> None:
        """Global flags; they override the DOMINION_* settings for this invocation."""
        try:
            config = CommandConfig(
                output_format=output_format or settings.OUTPUT_FORMAT,
                order_cap=order_cap,
                node_budget=node_budget,
                jobs=jobs,
                log_level=log_level,
            )
        except pydantic.ValidationError as e:
            error = e.errors()[0]
            field = ".".join(str(part) for part in error["loc"])
            raise ValidationError(f"invalid value for {field}: {error['msg']}")
        previous = config.apply()
        ctx.call_on_close(lambda: CommandConfig.restore(previous))
        configure_logging(level=config.log_level)
        ctx.obj = config

    # Include sub-applications
    app.add_typer(groups.app, name="group")
    app.add_typer(witness.app, name="witness")
    app.add_typer(dominion.app, name="dominion")
    app.add_typer(catalog.app, name="catalog")

    app.command("verbal")(constructions.verbal)
    app.command("member")(constructions.member)
    app.command("wreath")(constructions.wreath)
    app.command("embed")(constructions.embed)

    @app.command("version")
    def version() -> None:
        """Print the toolkit version."""
        typer.echo(__version__)

    return app
