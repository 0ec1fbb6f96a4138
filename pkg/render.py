"""
render.py
--------------------------------
Output formats for a built diagram:
- text: canonical input followed by the report as '#' comments, so the whole
  output parses back to the same input
- json: machine-readable payload
- dot:  Graphviz source; negative multiplicities dashed and labelled -m
"""

from __future__ import annotations

import json

import pandas as pd

from diagram_builder import BuildResult
from dsl import format_input


# ============================================================
# 1️⃣ JSON
# ============================================================
def to_payload(result: BuildResult) -> dict:
    diagram = result.diagram
    ids = [node.id for node in diagram.nodes]
    edges = [
        {"a": ids[i], "b": ids[j], "mult": diagram.edges[i][j]}
        for i in range(diagram.size)
        for j in range(i + 1, diagram.size)
        if diagram.edges[i][j]
    ]
    loops = [{"node": ids[i], "mult": m} for i, m in enumerate(diagram.loops) if m]
    return {
        "nodes": [
            {"id": n.id, "label": n.label, "kind": n.kind.value, "dim": n.dim} for n in diagram.nodes
        ],
        "edges": edges,
        "loops": loops,
        "cartan": [list(row) for row in result.cartan.C],
        "pairing": result.cartan.pairing,
        "dim_B": result.cartan.dim_B,
        "nonempty_assumed": result.cartan.nonempty_assumed,
        "irr_end": result.irr_end,
        "rank": result.rank,
        "hom_irr": [list(row) for row in result.hom_irr],
        "warnings": list(result.warnings),
    }


def render_json(result: BuildResult) -> str:
    return json.dumps(to_payload(result), indent=2, ensure_ascii=False) + "\n"


# ============================================================
# 2️⃣ Text
# ============================================================
def render_text(result: BuildResult, title: str | None = None) -> str:
    diagram = result.diagram
    ids = [node.id for node in diagram.nodes]

    nodes = pd.DataFrame(
        {
            "label": [n.label for n in diagram.nodes],
            "kind": [n.kind.value for n in diagram.nodes],
            "dim": list(diagram.dims),
            "loops": list(diagram.loops),
        },
        index=ids,
    )
    cartan = pd.DataFrame([list(row) for row in result.cartan.C], index=ids, columns=ids)

    report = []
    if title:
        report.append(title)
        report.append("-" * len(title))
    report += [
        f"irregular class: {result.problem.theta}",
        f"rank n = {result.rank}, Irr End = {result.irr_end}",
        "",
        "nodes:",
        *nodes.to_string().splitlines(),
        "",
        "Cartan matrix C = 2 Id - B:",
        *cartan.to_string().splitlines(),
        "",
        f"(d,d) = {result.cartan.pairing}",
        f"dim M_B = 2 - (d,d) = {result.cartan.dim_B}  (if nonempty)",
    ]
    for warning in result.warnings:
        report.append(f"warning: {warning}")
    commented = "\n".join(f"# {line}".rstrip() for line in report)
    return format_input(result.problem) + "\n" + commented + "\n"


# ============================================================
# 3️⃣ DOT
# ============================================================
def _edge_attrs(mult: int) -> str:
    if mult < 0:
        return f' [style=dashed, label="-{-mult}"]'
    if mult > 1:
        return f' [label="{mult}"]'
    return ""


def render_dot(result: BuildResult) -> str:
    diagram = result.diagram
    lines = ["graph diagram {", "  node [shape=circle];"]
    for node in diagram.nodes:
        label = f"{node.dim}\\n{node.label}".replace('"', '\\"')
        lines.append(f'  "{node.id}" [label="{label}"];')
    for i in range(diagram.size):
        for j in range(i, diagram.size):
            mult = diagram.edges[i][j]
            if mult:
                a, b = diagram.nodes[i].id, diagram.nodes[j].id
                lines.append(f'  "{a}" -- "{b}"{_edge_attrs(mult)};')
    lines.append("}")
    return "\n".join(lines) + "\n"


RENDERERS = {"text": render_text, "json": render_json, "dot": render_dot}
