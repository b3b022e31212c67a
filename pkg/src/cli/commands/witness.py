"""Commands that build witness homomorphism pairs."""
from typing import Optional

import typer

from src.cli.render import embedding_lines, embedding_summary, emit, mckay_summary, subgroup_text
from src.models.catalog import Catalog
from src.models.reports import Report, variety_fingerprint
from src.repositories.catalog_repo import catalog_repo
from src.repositories.group_repo import group_repo
from src.repositories.variety_repo import variety_repo
from src.services.dominion_bounds import as_product, inner_dominion
from src.services.groups import intersection
from src.services.varieties import verbal_subgroup
from src.services.witnesses import bigone_witness, mckay_witness

app = typer.Typer(help="Construct witness pairs of homomorphisms.", no_args_is_help=True)


@app.command("mckay")
def mckay(
    ctx: typer.Context,
    group: str = typer.Option(..., "--group", help="Group G"),
    subgroup: str = typer.Option(..., "--subgroup", help="Subgroup H: labels or element indices"),
    member: str = typer.Option(..., "--member", help="Nontrivial group M for the wreath coefficients"),
    variety: Optional[str] = typer.Option(None, "--variety", help="Product variety to check G and M against"),
) -> None:
    """Two maps G → M ≀ G agreeing exactly on H."""
    g = group_repo.load(group)
    h = group_repo.parse_subgroup(g, subgroup)
    m = group_repo.load(member)
    v = variety_repo.load(variety) if variety else None
    witness = mckay_witness(g, h, m, v)
    lines = [
        f"target: {witness.wreath.flat.name} (order {witness.wreath.flat.order})",
        f"equalizer: {subgroup_text(witness.equalizer)}",
    ]
    fingerprints = {"group": g.fingerprint, "member": m.fingerprint}
    if v is not None:
        fingerprints["variety"] = variety_fingerprint(v)
    emit(ctx.obj, Report.build("witness mckay", mckay_summary(witness), **fingerprints), lines)


@app.command("bigone")
def bigone(
    ctx: typer.Context,
    group: str = typer.Option(..., "--group", help="Group G"),
    subgroup: str = typer.Option(..., "--subgroup", help="Subgroup H: labels or element indices"),
    variety: str = typer.Option(..., "--variety", help="Product variety"),
    catalog: Optional[str] = typer.Option(None, "--catalog", help="Catalog directory for separating pairs"),
) -> None:
    """Certify dom(H) = HD through the wreath-product embedding, or report why not."""
    g = group_repo.load(group)
    h = group_repo.parse_subgroup(g, subgroup)
    v = as_product(variety_repo.load(variety))
    targets = catalog_repo.load(catalog) if catalog else Catalog.empty(v.name)
    inner_v, outer_v = v.split()
    kernel = verbal_subgroup(g, outer_v)
    inner = inner_dominion(g, kernel, intersection(g, h, kernel), inner_v, targets)
    report = bigone_witness(g, h, v, inner, targets, kernel=kernel)
    emit(
        ctx.obj,
        Report.build(
            "witness bigone",
            embedding_summary(report),
            catalog=targets.fingerprint,
            group=g.fingerprint,
            variety=variety_fingerprint(v),
        ),
        embedding_lines(report),
    )
