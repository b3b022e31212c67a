"""Commands for dominion approximations, certification and candidate hunting."""
from typing import Optional

import typer

from src.cli.render import approx_lines, approx_summary, emit, sandwich_lines, sandwich_summary
from src.models.catalog import Catalog
from src.models.reports import Report, variety_fingerprint
from src.repositories.catalog_repo import catalog_repo
from src.repositories.group_repo import group_repo
from src.repositories.variety_repo import variety_repo
from src.services.catalog_builder import catalog_builder
from src.services.dominion_bounds import as_product, certify, hunt_candidates
from src.services.homsearch import dominion_upper_approx

app = typer.Typer(help="Approximate, certify and hunt dominions.", no_args_is_help=True)


@app.command("approx")
def approx(
    ctx: typer.Context,
    group: str = typer.Option(..., "--group", help="Group G"),
    subgroup: str = typer.Option(..., "--subgroup", help="Subgroup H: labels or element indices"),
    variety: str = typer.Option(..., "--variety", help="Variety file or builtin name"),
    catalog: str = typer.Option(..., "--catalog", help="Catalog directory of targets"),
) -> None:
    """Intersect equalizers of all pairs agreeing on H over the catalog."""
    g = group_repo.load(group)
    h = group_repo.parse_subgroup(g, subgroup)
    v = variety_repo.load(variety)
    targets = catalog_repo.load(catalog)
    result = dominion_upper_approx(g, h, v, targets)
    report = Report.build(
        "dominion approx",
        approx_summary(result),
        catalog=targets.fingerprint,
        group=g.fingerprint,
        variety=variety_fingerprint(v),
    )
    emit(ctx.obj, report, approx_lines(result))


@app.command("certify")
def certify_command(
    ctx: typer.Context,
    group: str = typer.Option(..., "--group", help="Group G"),
    subgroup: str = typer.Option(..., "--subgroup", help="Subgroup H: labels or element indices"),
    variety: str = typer.Option(..., "--variety", help="Variety file or builtin name"),
    catalog: Optional[str] = typer.Option(None, "--catalog", help="Catalog directory of targets"),
    no_witnesses: bool = typer.Option(False, "--no-witnesses", help="Do not build witness groups"),
) -> None:
    """Sandwich bounds and certification status for dom(H)."""
    g = group_repo.load(group)
    h = group_repo.parse_subgroup(g, subgroup)
    v = variety_repo.load(variety)
    targets = catalog_repo.load(catalog) if catalog else Catalog.empty(v.name)
    report = certify(g, h, v, targets, witnesses=not no_witnesses)
    emit(
        ctx.obj,
        Report.build(
            "dominion certify",
            sandwich_summary(report),
            catalog=targets.fingerprint,
            group=g.fingerprint,
            variety=variety_fingerprint(v),
        ),
        sandwich_lines(report),
    )


@app.command("hunt")
def hunt(
    ctx: typer.Context,
    variety: str = typer.Option(..., "--variety", help="Variety file or builtin name"),
    max_order: int = typer.Option(..., "--max-order", min=1, help="Largest group order scanned"),
    catalog: Optional[str] = typer.Option(
        None, "--catalog", help="Catalog directory (built up to --max-order when omitted)"
    ),
) -> None:
    """Scan small groups of a variety for candidate nontrivial dominions."""
    v = variety_repo.load(variety)
    targets = catalog_repo.load(catalog) if catalog else catalog_builder.build_catalog(as_product(v), max_order)
    reports = hunt_candidates(v, max_order, targets)
    result = {
        "candidates": [
            {"group": r.group.name, "subgroup": [int(x) for x in r.subgroup.elements], **sandwich_summary(r).to_dict()}
            for r in reports
        ]
    }
    lines = [f"{len(reports)} candidate(s) in {v.name} up to order {max_order}"]
    for r in reports:
        lines.append(f"- {r.group.name}, H of order {r.subgroup.order}: approx of order {r.approx.subgroup.order}")
    emit(
        ctx.obj,
        Report.build("dominion hunt", result, catalog=targets.fingerprint, variety=variety_fingerprint(v)),
        lines,
    )
