"""Commands for inspecting and combining groups."""
from typing import Optional

import typer

from src.cli.render import emit, subgroup_text
from src.models.reports import GroupSummary, Report, SubgroupSummary
from src.repositories.group_repo import group_repo
from src.services.groups import conjugacy_classes, direct_product, normal_subgroups, quotient
from src.services.varieties import verbal_series
from src.services.varieties import abelian as abelian_variety

app = typer.Typer(help="Inspect, quotient and multiply groups.", no_args_is_help=True)


@app.command("inspect")
def inspect(
    ctx: typer.Context,
    group: str = typer.Option(..., "--group", help="Group file or standard name"),
) -> None:
    """Order, exponent, element-order profile and normal structure of a group."""
    g = group_repo.load(group)
    summary = GroupSummary.of(g)
    normals = normal_subgroups(g)
    derived = verbal_series(g, abelian_variety())
    result = {
        **summary.to_dict(),
        "conjugacy_classes": len(conjugacy_classes(g)),
        "normal_subgroup_orders": [sub.order for sub in normals],
        "derived_series_orders": [sub.order for sub in derived],
    }
    lines = [
        f"{g.name}: order {g.order}, exponent {g.exponent}, {'abelian' if g.is_abelian else 'nonabelian'}",
        f"element orders: {', '.join(f'{o}×{c}' for o, c in g.order_profile)}",
        f"conjugacy classes: {result['conjugacy_classes']}",
        f"normal subgroup orders: {result['normal_subgroup_orders']}",
        f"derived series orders: {result['derived_series_orders']}",
    ]
    emit(ctx.obj, Report.build("group inspect", result, group=g.fingerprint), lines)


@app.command("quotient")
def quotient_command(
    ctx: typer.Context,
    group: str = typer.Option(..., "--group", help="Group file or standard name"),
    normal: str = typer.Option(..., "--normal", help="Normal subgroup: labels or element indices"),
    output: Optional[str] = typer.Option(None, "--output", help="Write the quotient to this group file"),
) -> None:
    """Quotient of a group by a normal subgroup."""
    g = group_repo.load(group)
    n = group_repo.parse_subgroup(g, normal)
    q = quotient(g, n)
    if output:
        group_repo.save(q.group, output, provenance=f"quotient({g.name})")
    result = {
        "quotient": GroupSummary.of(q.group).to_dict(),
        "kernel": SubgroupSummary.of(n).to_dict(),
        "projection": [int(v) for v in q.projection.image],
    }
    lines = [f"{g.name}/N with N = {subgroup_text(n)}: order {q.group.order}"]
    emit(ctx.obj, Report.build("group quotient", result, group=g.fingerprint), lines)


@app.command("product")
def product_command(
    ctx: typer.Context,
    left: str = typer.Option(..., "--left", help="First factor"),
    right: str = typer.Option(..., "--right", help="Second factor"),
    output: Optional[str] = typer.Option(None, "--output", help="Write the product to this group file"),
) -> None:
    """Direct product of two groups."""
    a = group_repo.load(left)
    b = group_repo.load(right)
    prod = direct_product(a, b)
    if output:
        group_repo.save(prod.group, output, provenance=f"direct({a.name},{b.name})")
    summary = GroupSummary.of(prod.group)
    lines = [f"{prod.group.name}: order {prod.group.order}, {'abelian' if prod.group.is_abelian else 'nonabelian'}"]
    emit(ctx.obj, Report.build("group product", summary, left=a.fingerprint, right=b.fingerprint), lines)
