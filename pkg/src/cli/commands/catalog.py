"""Commands for building and listing catalogs."""
from typing import List, Optional

import typer

from src.cli.render import emit
from src.models.reports import Report, variety_fingerprint
from src.repositories.catalog_repo import catalog_repo
from src.repositories.variety_repo import variety_repo
from src.services.catalog_builder import CONSTRUCTORS, catalog_builder

app = typer.Typer(help="Build and list group catalogs.", no_args_is_help=True)


@app.command("build")
def build(
    ctx: typer.Context,
    variety: str = typer.Option(..., "--variety", help="Variety file or builtin name"),
    max_order: int = typer.Option(..., "--max-order", min=1, help="Largest group order"),
    output: str = typer.Option(..., "--output", help="Catalog directory to write"),
    constructor: Optional[List[str]] = typer.Option(
        None, "--constructor", help=f"Restrict constructions (repeatable): {', '.join(CONSTRUCTORS)}"
    ),
) -> None:
    """Build a deduplicated catalog of variety members and save it."""
    v = variety_repo.load(variety)
    catalog = catalog_builder.build_catalog(v, max_order, constructor or None)
    catalog_repo.save(catalog, output)
    result = {
        "entries": [{"id": e.id, "order": e.order, "provenance": e.provenance} for e in catalog],
        "fingerprint": catalog.fingerprint,
    }
    lines = [f"{len(catalog)} entries for {v.name} up to order {max_order} written to {output}"]
    emit(ctx.obj, Report.build("catalog build", result, variety=variety_fingerprint(v)), lines)


@app.command("list")
def list_entries(
    ctx: typer.Context,
    catalog: str = typer.Option(..., "--catalog", help="Catalog directory"),
    variety: Optional[str] = typer.Option(None, "--variety", help="Recheck memberships in this variety"),
) -> None:
    """List catalog entries."""
    v = variety_repo.load(variety) if variety else None
    loaded = catalog_repo.load(catalog, v)
    result = {
        "variety": loaded.variety,
        "entries": [
            {"id": e.id, "name": e.group.name, "order": e.order, "provenance": e.provenance,
             "memberships": dict(sorted(e.memberships.items()))}
            for e in loaded
        ],
    }
    lines = [f"{e.id}  {e.group.name:<16} order {e.order:<6} {e.provenance}" for e in loaded]
    emit(ctx.obj, Report.build("catalog list", result, catalog=loaded.fingerprint), lines)
