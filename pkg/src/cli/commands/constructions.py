"""Top-level commands: verbal subgroups, membership, wreath products and embeddings."""
from pathlib import Path
from typing import Optional

import numpy as np
import typer

from src.cli.render import emit, subgroup_text
from src.models.reports import GroupSummary, HomSummary, Report, SubgroupSummary, variety_fingerprint
from src.repositories.group_repo import group_repo
from src.repositories.variety_repo import variety_repo
from src.services.extensions import (
    ExtensionPresentation,
    default_transversal,
    kk_embedding,
    orbit_transversal,
)
from src.services.varieties import is_member, verbal_subgroup
from src.services.wreath import check_wreath_membership, coset_action, omega_wreath
from src.utils.errors import ValidationError


def verbal(
    ctx: typer.Context,
    group: str = typer.Option(..., "--group", help="Group file or standard name"),
    variety: str = typer.Option(..., "--variety", help="Variety file or builtin name"),
) -> None:
    """Verbal subgroup of a group for a variety."""
    g = group_repo.load(group)
    v = variety_repo.load(variety)
    sub = verbal_subgroup(g, v)
    lines = [f"{v.name}({g.name}) = {subgroup_text(sub)}"]
    report = Report.build(
        "verbal", SubgroupSummary.of(sub), group=g.fingerprint, variety=variety_fingerprint(v)
    )
    emit(ctx.obj, report, lines)


def member(
    ctx: typer.Context,
    group: str = typer.Option(..., "--group", help="Group file or standard name"),
    variety: str = typer.Option(..., "--variety", help="Variety file or builtin name"),
) -> None:
    """Whether a group lies in a variety; prints true or false."""
    g = group_repo.load(group)
    v = variety_repo.load(variety)
    result = is_member(g, v)
    report = Report.build(
        "member", {"member": result}, group=g.fingerprint, variety=variety_fingerprint(v)
    )
    emit(ctx.obj, report, [str(result).lower()])


def wreath(
    ctx: typer.Context,
    base: str = typer.Option(..., "--base", help="Base group N"),
    top: str = typer.Option(..., "--top", help="Top group K"),
    omega: str = typer.Option(
        "regular", "--omega", help="'regular', or 'cosets:<subgroup>' to act on the cosets of a subgroup of K"
    ),
    variety: Optional[str] = typer.Option(
        None, "--variety", help="Product variety to check the wreath product against"
    ),
    output: Optional[str] = typer.Option(None, "--output", help="Write the wreath product to this group file"),
) -> None:
    """Wreath product of a base group by a top group."""
    n = group_repo.load(base)
    k = group_repo.load(top)
    if omega == "regular":
        action = None
    elif omega.startswith("cosets:"):
        action = coset_action(k, group_repo.parse_subgroup(k, omega[len("cosets:"):]))
    else:
        raise ValidationError(f"unknown --omega value {omega!r}; expected 'regular' or 'cosets:<subgroup>'")
    w = omega_wreath(n, k, action)
    result = {"group": GroupSummary.of(w.flat).to_dict(), "degree": w.degree}
    lines = [f"{w.flat.name}: order {w.flat.order} (degree {w.degree})"]
    if variety:
        v = variety_repo.load(variety)
        result["member"] = check_wreath_membership(w, v)
        lines.append(f"member of {v.name}: {str(result['member']).lower()}")
    if output:
        group_repo.save(w.flat, output, provenance=f"wreath({n.name},{k.name})")
    emit(ctx.obj, Report.build("wreath", result, base=n.fingerprint, top=k.fingerprint), lines)


def embed(
    ctx: typer.Context,
    extension_file: Optional[Path] = typer.Option(None, "--extension", help="Extension file naming G and A"),
    group: Optional[str] = typer.Option(None, "--group", help="Group file or standard name, instead of --extension"),
    normal: Optional[str] = typer.Option(None, "--normal", help="Normal subgroup A, instead of --extension"),
    transversal_kind: str = typer.Option(
        "default", "--transversal", help="default (lowest index per coset), complement or orbit"
    ),
    complement: Optional[str] = typer.Option(None, "--complement", help="Complement used by --transversal complement"),
    subgroup: Optional[str] = typer.Option(None, "--subgroup", help="Subgroup H used by --transversal orbit"),
    inner: str = typer.Option("e", "--inner", help="Subgroup D of A used by --transversal orbit"),
) -> None:
    """Embed an extension of A by G/A into the wreath product A ≀ G/A."""
    if extension_file is not None:
        if group is not None or normal is not None:
            raise ValidationError("--extension cannot be combined with --group or --normal")
        g, a = group_repo.load_extension(extension_file)
    elif group is not None and normal is not None:
        g = group_repo.load(group)
        a = group_repo.parse_subgroup(g, normal)
    else:
        raise ValidationError("embed needs --extension, or both --group and --normal")
    extension = ExtensionPresentation.from_normal_subgroup(g, a)
    extension.check()
    if transversal_kind == "default":
        transversal = default_transversal(extension)
    elif transversal_kind == "complement":
        if complement is None:
            raise ValidationError("--transversal complement needs --complement")
        transversal = default_transversal(extension, group_repo.parse_subgroup(g, complement))
    elif transversal_kind == "orbit":
        if subgroup is None:
            raise ValidationError("--transversal orbit needs --subgroup")
        transversal = orbit_transversal(
            g, a, group_repo.parse_subgroup(g, subgroup), group_repo.parse_subgroup(g, inner), extension
        )
    else:
        raise ValidationError(f"unknown --transversal value {transversal_kind!r}")
    embedding = kk_embedding(extension, transversal)
    projected = embedding.wreath.projection.compose(embedding.gamma)
    commutes = bool(np.array_equal(projected.image, extension.projection.image))
    result = {
        "wreath": GroupSummary.of(embedding.wreath.flat).to_dict(),
        "gamma": HomSummary.of(embedding.gamma).to_dict(),
        "transversal": [int(t) for t in transversal.lift],
        "projection_commutes": commutes,
    }
    lines = [
        f"{g.name} → {embedding.wreath.flat.name} (order {embedding.wreath.flat.order})",
        f"injective: {str(embedding.gamma.is_injective).lower()}",
        f"projection commutes: {str(commutes).lower()}",
    ]
    emit(ctx.obj, Report.build("embed", result, group=g.fingerprint), lines)
