"""JSON and DOT formats for finite trees, trees with holes and cyclic proofs.

A file is ``{"system", "kind", "nodes": [...], "root"}``. Every node carries
its sequent in the concrete syntax, a rule ``{"tag", "principal", "boxpi"}``
and a child list of ``{"node": j}`` or ``{"backedge": j}`` entries. Holes
are nodes with ``"hole": true`` and ``"rule": null``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .formula import Multiset, parse_formula, parse_sequent
from .proofs import (GRZ_INF, CyclicNode, CyclicProof, Edge, FiniteProof, Hole, InfProof, RuleInstance,
                     expand, normalize_system)

AnyProof = Union[FiniteProof, CyclicProof, Hole]


def _rule_json(rule: RuleInstance) -> dict:
    return {"tag": rule.tag,
            "principal": None if rule.principal is None else str(rule.principal),
            "boxpi": None if rule.boxpi is None else [str(f) for f in rule.boxpi]}


def _rule_from(d: dict) -> RuleInstance:
    principal = d.get("principal")
    boxpi = d.get("boxpi")
    return RuleInstance(d["tag"], None if principal is None else parse_formula(principal),
                        None if boxpi is None else Multiset(parse_formula(f) for f in boxpi))


def to_json(proof: AnyProof | InfProof, system: str = GRZ_INF, depth: int | None = None) -> dict:
    """JSON object for a proof; lazy proofs are expanded to ``depth`` first."""
    system = normalize_system(system)
    if isinstance(proof, InfProof):
        if depth is None:
            raise ValueError("a depth is needed to serialize a lazy proof")
        proof = expand(proof, depth)
    if isinstance(proof, CyclicProof):
        nodes = []
        for n in proof.nodes:
            nodes.append({"sequent": str(n.sequent), "rule": _rule_json(n.rule),
                          "children": [{"backedge" if e.back else "node": e.target} for e in n.children]})
        for i, n in enumerate(nodes):
            n["id"] = i
        return {"system": system, "kind": "cyclic", "nodes": nodes, "root": proof.root}
    nodes: list[dict] = []

    def add(node) -> int:
        i = len(nodes)
        if isinstance(node, Hole):
            nodes.append({"id": i, "sequent": str(node.sequent), "rule": None, "hole": True, "children": []})
            return i
        entry = {"id": i, "sequent": str(node.sequent), "rule": _rule_json(node.rule), "children": []}
        nodes.append(entry)
        entry["children"] = [{"node": add(c)} for c in node.children]
        return i

    add(proof)
    return {"system": system, "kind": "tree", "nodes": nodes, "root": 0}


def from_json(data: dict) -> AnyProof:
    nodes = data["nodes"]
    by_id = {n.get("id", i): n for i, n in enumerate(nodes)}
    has_back = any("backedge" in c for n in nodes for c in n.get("children", []))
    if data.get("kind") == "cyclic" or has_back:
        order = sorted(by_id)
        pos = {k: i for i, k in enumerate(order)}
        out = []
        for k in order:
            n = by_id[k]
            if n.get("hole"):
                raise ValueError("cyclic proofs cannot contain holes")
            kids = tuple(Edge(pos[c["backedge"]], True) if "backedge" in c else Edge(pos[c["node"]])
                         for c in n.get("children", []))
            out.append(CyclicNode(parse_sequent(n["sequent"]), _rule_from(n["rule"]), kids))
        return CyclicProof(tuple(out), pos[data.get("root", order[0])])

    def build(k) -> FiniteProof | Hole:
        n = by_id[k]
        if n.get("hole"):
            return Hole(parse_sequent(n["sequent"]))
        kids = tuple(build(c["node"]) for c in n.get("children", []))
        return FiniteProof(parse_sequent(n["sequent"]), _rule_from(n["rule"]), kids)

    return build(data.get("root", 0))


def dumps(proof: AnyProof | InfProof, system: str = GRZ_INF, depth: int | None = None) -> str:
    return json.dumps(to_json(proof, system, depth), indent=1, ensure_ascii=False)


def loads(text: str) -> AnyProof:
    return from_json(json.loads(text))


def read_proof(path: str | Path) -> tuple[AnyProof, str]:
    """The proof in a file and the system it declares."""
    data = json.loads(Path(path).read_text())
    return from_json(data), normalize_system(data.get("system", GRZ_INF))


def write_proof(path: str | Path, proof: AnyProof | InfProof, system: str = GRZ_INF,
                depth: int | None = None) -> None:
    Path(path).write_text(dumps(proof, system, depth) + "\n")


def _dot_label(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(proof: AnyProof | InfProof, depth: int | None = None) -> str:
    """Graphviz source; back-edges are dashed and holes dotted."""
    data = to_json(proof, GRZ_INF, depth)
    lines = ["digraph proof {", "  rankdir=BT;", "  node [shape=box, fontname=monospace];"]
    for n in data["nodes"]:
        if n.get("hole"):
            lines.append(f'  n{n["id"]} [label="{_dot_label(n["sequent"])}", style=dotted];')
            continue
        rule = n["rule"]["tag"]
        if n["rule"]["principal"]:
            rule += " " + n["rule"]["principal"]
        lines.append(f'  n{n["id"]} [label="{_dot_label(n["sequent"])}\\n{_dot_label(rule)}"];')
    for n in data["nodes"]:
        for c in n["children"]:
            if "backedge" in c:
                lines.append(f'  n{c["backedge"]} -> n{n["id"]} [style=dashed, constraint=false];')
            else:
                lines.append(f'  n{c["node"]} -> n{n["id"]};')
    lines.append("}")
    return "\n".join(lines) + "\n"
