"""Command line front end: analyze subgroups of F and export their graphs.

Input files list one generator per line (group words like ``x0 x1^-2`` or
branch tables like ``00->0, 01->10, 1->11``); ``#`` starts a comment.
Exit codes: 0 success, 2 parse error, 3 completion budget exceeded while
closure generators were requested.
"""
from __future__ import annotations

import importlib.resources
import json
import sys
from dataclasses import dataclass

import click

from .elements import Element, ParseError, parse_element
from .core import (build_core, gamma_graph, gamma_s_graph, dyadic_orbit_count,
                   contains_derived_in_closure, transitive_on_period_orbit,
                   minimal_tree, tree_to_dot, tree_to_json)
from .decision import generates_F
from .solvability import p_graph, solvability, solvability_json
from .closure import presentation, complete, closure_generators


@dataclass
class SubgroupSpec:
    name: str
    generators: list[Element]


def load_spec(path: str) -> SubgroupSpec:
    gens = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                gens.append(parse_element(line))
    name = path.rsplit("/", 1)[-1].removesuffix(".txt")
    return SubgroupSpec(name, gens)


def fixture_paths() -> list:
    root = importlib.resources.files("thompsonf") / "fixtures"
    return sorted(root.iterdir(), key=lambda p: p.name)


def analyze_spec(spec: SubgroupSpec, closure_gens: bool, budget: int,
                 period: str | None, seed: int | None) -> tuple[dict, int]:
    core = build_core(spec.generators, seed=seed)
    orbits = dyadic_orbit_count(core)
    verdict = generates_F(spec.generators)
    sol = solvability(core)
    report = {
        "schema": 1,
        "name": spec.name,
        "generators": [g.text() for g in spec.generators],
        "core": {
            "edges": len(core.edges),
            "cells": len(core.cells),
            "inner_edges": list(core.inner_edges),
            "inner_vertices": len(core.inner_vertices),
        },
        "orbits": "infinite" if orbits.infinite else orbits.count,
        "closure_contains_derived": contains_derived_in_closure(core),
        "verdict": verdict.to_json_dict(),
        "solvability": {
            "solvable": sol.solvable,
            "derived_length": sol.derived_length,
        },
    }
    if period is not None:
        report["period_transitive"] = transitive_on_period_orbit(core, period)
    code = 0
    if closure_gens:
        rs = complete(presentation(core), core.edges, max_rules=budget)
        if rs.is_complete:
            report["closure_generators"] = [
                g.text() for g in closure_generators(core, rs)]
        else:
            report["closure_generators"] = None
            report["completion_status"] = rs.status
            code = 3
    return report, code


def render_text(report: dict) -> str:
    lines = [f"subgroup {report['name']}"]
    core = report["core"]
    lines.append(f"  core: {core['edges']} edges, {core['cells']} cells, "
                 f"{len(core['inner_edges'])} inner edges")
    lines.append(f"  dyadic orbits: {report['orbits']}")
    v = report["verdict"]
    lines.append(f"  contains [F,F]: {v['contains_derived']}")
    lines.append(f"  equals F: {v['equals_F']}")
    sol = report["solvability"]
    if sol["solvable"]:
        lines.append(f"  solvable: yes, derived length {sol['derived_length']}")
    else:
        lines.append("  solvable: no")
    if "period_transitive" in report:
        lines.append(f"  transitive on period orbit: "
                     f"{report['period_transitive']}")
    if report.get("closure_generators") is not None:
        lines.append("  closure generators:")
        lines += [f"    {g}" for g in report["closure_generators"]]
    elif "completion_status" in report:
        lines.append(f"  closure generators: unavailable "
                     f"({report['completion_status']})")
    return "\n".join(lines)


@click.group()
def main():
    """Decision procedures for finitely generated subgroups of F."""


@main.command()
@click.argument("file", required=False, type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["json", "text"]),
              default="text")
@click.option("--closure-gens", is_flag=True,
              help="Extract generators of the closure (needs completion).")
@click.option("--budget", default=500, show_default=True,
              help="Maximum number of rules during completion.")
@click.option("--period", default=None,
              help="Test transitivity on the orbit of the rational .s^inf.")
@click.option("--seed", default=None, type=int,
              help="Shuffle the folding order (result is invariant).")
@click.option("--all-fixtures", is_flag=True,
              help="Analyze every bundled fixture subgroup.")
def analyze(file, fmt, closure_gens, budget, period, seed, all_fixtures):
    """Report core, orbit, generation and solvability verdicts."""
    if not all_fixtures and file is None:
        raise click.UsageError("give a subgroup file or --all-fixtures")
    specs = []
    try:
        if all_fixtures:
            specs = [load_spec(str(p)) for p in fixture_paths()]
        else:
            specs = [load_spec(file)]
    except ParseError as exc:
        click.echo(f"parse error: {exc}", err=True)
        sys.exit(2)
    code = 0
    reports = []
    for spec in specs:
        report, rc = analyze_spec(spec, closure_gens, budget, period, seed)
        reports.append(report)
        code = max(code, rc)
    if fmt == "json":
        out = reports if all_fixtures else reports[0]
        click.echo(json.dumps(out, indent=2, sort_keys=True))
    elif all_fixtures:
        header = f"{'name':<12}{'edges':>6}{'cells':>6}{'orbits':>9}" \
                 f"{'=F':>6}{'>[F,F]':>8}  solvability"
        click.echo(header)
        for r in reports:
            sol = r["solvability"]
            soltxt = (f"Solvable({sol['derived_length']})" if sol["solvable"]
                      else "NotSolvable")
            click.echo(f"{r['name']:<12}{r['core']['edges']:>6}"
                       f"{r['core']['cells']:>6}{str(r['orbits']):>9}"
                       f"{str(r['verdict']['equals_F']):>6}"
                       f"{str(r['verdict']['contains_derived']):>8}  {soltxt}")
    else:
        click.echo(render_text(reports[0]))
    sys.exit(code)


@main.command()
@click.argument("file", type=click.Path(exists=True))
@click.option("--what", type=click.Choice(["core", "gamma", "pgraph",
                                           "mintree"]), default="core")
@click.option("--format", "fmt", type=click.Choice(["dot", "json"]),
              default="dot")
@click.option("--period", default=None,
              help="Export the gamma graph of this period instead.")
@click.option("--output", type=click.Path(), default=None)
def export(file, what, fmt, period, output):
    """Write a graph of the subgroup's core in DOT or JSON."""
    try:
        spec = load_spec(file)
    except ParseError as exc:
        click.echo(f"parse error: {exc}", err=True)
        sys.exit(2)
    core = build_core(spec.generators)
    if what == "core":
        text = core.to_dot() if fmt == "dot" else \
            json.dumps(core.to_json_dict(), indent=2, sort_keys=True)
    elif what == "gamma":
        g = gamma_s_graph(core, period) if period else gamma_graph(core)
        text = g.to_dot() if fmt == "dot" else json.dumps(
            {"vertices": list(g.vertices), "arcs": [list(a) for a in g.arcs]},
            indent=2, sort_keys=True)
    elif what == "pgraph":
        text = p_graph(core).to_dot() if fmt == "dot" else \
            solvability_json(core)
    else:
        tree = minimal_tree(core)
        text = tree_to_dot(tree) if fmt == "dot" else tree_to_json(tree)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


if __name__ == "__main__":
    main()
