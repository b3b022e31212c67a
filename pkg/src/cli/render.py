"""Rendering of reports as text or JSON on standard output."""
import json
from typing import List, Sequence

import typer

from src.cli.config import CommandConfig
from src.models.group import SubgroupRef
from src.models.reports import (
    ApproxSummary,
    PairSummary,
    Report,
    SandwichSummary,
    SubgroupSummary,
    WitnessSummary,
)
from src.services.dominion_bounds import SandwichReport
from src.services.homsearch import ApproxResult, equalizer
from src.services.witnesses import McKayWitness, WitnessReport

# Elements shown before a subgroup listing is abbreviated in text output.
_SHOWN = 16


def emit(config: CommandConfig, report: Report, lines: Sequence[str]) -> None:
    """Print the report: JSON envelope or the given text lines."""
    if config.wants_json:
        typer.echo(json.dumps(report.to_dict(), indent=2, ensure_ascii=False))
    else:
        for line in lines:
            typer.echo(line)


def subgroup_text(subgroup: SubgroupRef) -> str:
    labels = subgroup.element_labels()
    shown = ", ".join(labels[:_SHOWN]) + (", …" if len(labels) > _SHOWN else "")
    return f"{{{shown}}} (order {subgroup.order})"


def approx_summary(result: ApproxResult) -> ApproxSummary:
    pairs = [
        PairSummary(
            target=target,
            f=[int(v) for v in pair.f.image],
            g=[int(v) for v in pair.g.image],
            equalizer_order=equalizer(pair).order,
        )
        for target, pair in result.contributing_pairs
    ]
    return ApproxSummary(
        subgroup=SubgroupSummary.of(result.subgroup),
        query=SubgroupSummary.of(result.query),
        vacuous=result.vacuous,
        trivial=result.is_trivial,
        catalog_fingerprint=result.catalog_fingerprint,
        targets=list(result.targets),
        contributing_pairs=pairs,
    )


def approx_lines(result: ApproxResult) -> List[str]:
    lines = [f"approximation: {subgroup_text(result.subgroup)}"]
    if result.vacuous:
        lines.append("vacuous: the catalog is empty")
    lines.append(f"trivial: {str(result.is_trivial).lower()}")
    for target, pair in result.contributing_pairs:
        lines.append(f"  pair into {target}: equalizer of order {equalizer(pair).order}")
    return lines


def mckay_summary(witness: McKayWitness) -> WitnessSummary:
    return WitnessSummary(
        kind="mckay",
        status="certified",
        target_order=witness.wreath.flat.order,
        equalizer=SubgroupSummary.of(witness.equalizer),
        checks={"equalizer_is_H": True},
        maps={"f": [int(v) for v in witness.f.image], "g": [int(v) for v in witness.g.image]},
    )


def embedding_summary(report: WitnessReport) -> WitnessSummary:
    maps = {}
    if report.left is not None:
        maps = {"left": [int(v) for v in report.left.image], "right": [int(v) for v in report.right.image]}
    return WitnessSummary(
        kind="embedding",
        status=report.status,
        target_order=report.target.flat.order if report.target is not None else None,
        equalizer=SubgroupSummary.of(report.equalizer) if report.equalizer is not None else None,
        checks=dict(sorted(report.checks.items())),
        reason=report.reason or None,
        maps=maps,
    )


def embedding_lines(report: WitnessReport) -> List[str]:
    lines = [f"status: {report.status}", f"reason: {report.reason}"]
    if report.transversal is not None:
        lifts = ", ".join(report.group.label(t) for t in report.transversal.lift)
        lines.append(f"transversal: [{lifts}]")
    if report.embedding is not None:
        lines.append(f"embedding into {report.embedding.wreath.flat.name} (order {report.embedding.wreath.flat.order})")
    if report.separating is not None:
        lines.append(f"separating pair: {report.separating.method} into {report.separating.target.name}")
    if report.target is not None:
        lines.append(f"target wreath product: order {report.target.flat.order}")
    for name, ok in sorted(report.checks.items()):
        lines.append(f"  check {name}: {'pass' if ok else 'fail'}")
    if report.dominion is not None:
        lines.append(f"dominion: {subgroup_text(report.dominion)}")
    return lines


def sandwich_summary(report: SandwichReport) -> SandwichSummary:
    witnesses = []
    if report.mckay is not None:
        witnesses.append(mckay_summary(report.mckay))
    if report.embedding is not None:
        witnesses.append(embedding_summary(report.embedding))
    return SandwichSummary(
        status=report.status.value,
        variety=report.variety.name,
        kernel=SubgroupSummary.of(report.kernel),
        inner=SubgroupSummary.of(report.inner.subgroup),
        inner_provenance=report.inner.provenance,
        lower=SubgroupSummary.of(report.lower),
        upper=SubgroupSummary.of(report.upper),
        dominion=SubgroupSummary.of(report.dominion) if report.dominion is not None else None,
        approx=approx_summary(report.approx) if report.approx is not None else None,
        rules_fired=report.rules_fired,
        witnesses=witnesses,
        stable=report.stable,
        targets_complete=report.targets_complete,
        notes=list(report.notes),
    )


def sandwich_lines(report: SandwichReport) -> List[str]:
    lines = [
        f"status: {report.status.value}",
        f"H: {subgroup_text(report.subgroup)}",
        f"N: {subgroup_text(report.kernel)}",
        f"D: {subgroup_text(report.inner.subgroup)} [{report.inner.provenance}]",
        f"lower: {subgroup_text(report.lower)}",
        f"upper: {subgroup_text(report.upper)}",
    ]
    if report.approx is not None:
        lines.append(f"approx: {subgroup_text(report.approx.subgroup)}")
    if report.dominion is not None:
        verdict = "dom = H" if report.dominion == report.subgroup else "dom ⊋ H"
        lines.append(f"dominion: {subgroup_text(report.dominion)} ({verdict})")
    lines.append(f"rules fired: {', '.join(report.rules_fired) or 'none'}")
    for note in report.notes:
        lines.append(f"note: {note}")
    return lines
