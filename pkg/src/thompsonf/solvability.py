"""Solvability of a subgroup of F from its core.

An edge e of the core is periodic if some trail from e back to e has a
label containing 0.  Each periodic edge carries an optimal trail s_e: the
lexicographically least nontrivial self-trail visiting no edge more than
twice.  The directed graph P(H) on periodic edges has an arc e1 -> e2
whenever some trail q = u1w from e1 ends at e2 where u0 is a prefix of
s_{e1} and the sub-trail labeled w is simple.  H is solvable iff P(H) is
acyclic, and then its derived length is the maximal number of vertices on
a directed path.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .core import CoreAutomaton, trace


def _self_trails(core: CoreAutomaton, e: str):
    # nontrivial self-trails from e visiting no edge more than twice,
    # counted over the full edge sequence (so e itself at most once more)
    counts = {e: 1}

    def walk(cur: str, label: str):
        cell = core.cell_map.get(cur)
        if cell is None:
            return
        for digit, nxt in zip("01", cell):
            if counts.get(nxt, 0) >= 2:
                continue
            if nxt == e:
                yield label + digit
            counts[nxt] = counts.get(nxt, 0) + 1
            yield from walk(nxt, label + digit)
            counts[nxt] -= 1
    yield from walk(e, "")


def periodic_edges(core: CoreAutomaton) -> set[str]:
    """Edges admitting a self-trail whose label contains the digit 0."""
    return {e for e in core.edges
            if any("0" in s for s in _self_trails(core, e))}


def optimal_trail(core: CoreAutomaton, e: str) -> str:
    """The lexicographically least nontrivial bounded self-trail from e."""
    s = min(_self_trails(core, e), default=None)
    if s is None or "0" not in s:
        raise ValueError(f"edge {e!r} is not periodic")
    return s


def _simple_trail_ends(core: CoreAutomaton, start: str) -> set[str]:
    # terminal edges of all simple trails (all edges distinct) from start
    ends = set()

    def walk(cur: str, seen: frozenset):
        ends.add(cur)
        cell = core.cell_map.get(cur)
        if cell is None:
            return
        for nxt in cell:
            if nxt not in seen:
                walk(nxt, seen | {nxt})
    walk(start, frozenset([start]))
    return ends


@dataclass(frozen=True)
class PGraph:
    vertices: tuple[str, ...]
    arcs: tuple[tuple[str, str], ...]
    trails: dict[str, str]  # optimal trail per vertex

    def has_cycle(self) -> bool:
        return self._longest() is None

    def _longest(self) -> int | None:
        # max vertices on a directed path, or None if there is a cycle
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for a, b in self.arcs:
            out[a].append(b)
        depth: dict[str, int | None] = {}

        def dfs(v: str) -> int | None:
            if v in depth:
                return depth[v]
            depth[v] = None  # on stack: revisiting means a cycle
            best = 0
            for w in out[v]:
                d = dfs(w)
                if d is None:
                    return None
                best = max(best, d)
            depth[v] = 1 + best
            return depth[v]
        total = 0
        for v in self.vertices:
            d = dfs(v)
            if d is None:
                return None
            total = max(total, d)
        return total

    def to_dot(self) -> str:
        lines = ["digraph pgraph {"]
        for v in self.vertices:
            lines.append(f'  "{v}" [label="{v}\\ns={self.trails[v]}"];')
        lines += [f'  "{a}" -> "{b}";' for a, b in self.arcs]
        lines.append("}")
        return "\n".join(lines)


def p_graph(core: CoreAutomaton) -> PGraph:
    periodic = sorted(periodic_edges(core))
    trails = {e: optimal_trail(core, e) for e in periodic}
    arcs = []
    for e in periodic:
        s = trails[e]
        targets: set[str] = set()
        for i, digit in enumerate(s):
            if digit != "0":
                continue
            x = trace(core, s[:i], e)
            y = core.cell_map[x][1]  # the 1-branch below the split point
            targets |= _simple_trail_ends(core, y)
        arcs += [(e, t) for t in sorted(targets) if t in set(periodic)]
    return PGraph(tuple(periodic), tuple(arcs), trails)


@dataclass(frozen=True)
class Solvability:
    solvable: bool
    derived_length: int | None

    def __repr__(self):
        return (f"Solvable({self.derived_length})" if self.solvable
                else "NotSolvable")


def solvability(core: CoreAutomaton) -> Solvability:
    longest = p_graph(core)._longest()
    if longest is None:
        return Solvability(False, None)
    return Solvability(True, longest)


def solvability_json(core: CoreAutomaton) -> str:
    g = p_graph(core)
    verdict = solvability(core)
    return json.dumps({
        "vertices": list(g.vertices),
        "arcs": [list(a) for a in g.arcs],
        "trails": g.trails,
        "verdict": "Solvable" if verdict.solvable else "NotSolvable",
        "derived_length": verdict.derived_length,
    }, indent=2)
