"""Stallings 2-core of a finitely generated subgroup of F.

The core is a folded 2-automaton over the one-relation complex x -> x^2:
directed edges, positive cells (top; botL, botR) and a distinguished edge.
It is built by gluing the generators' branch-pair diagrams onto a single
distinguished edge and folding (type 1: two cells share their top; type 2:
two cells share their ordered bottom pair) until stable.  The semi-core
applies type-1 foldings only.

Edge names in the canonical form are e1, e2, ... in BFS order from the
distinguished edge, descending bottom-left before bottom-right.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property

from .elements import Element


# a labeled binary tree: (label,) for a leaf, (label, left, right) otherwise
Tree = tuple


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx
        return rx


@dataclass(frozen=True)
class CoreAutomaton:
    """Folded 2-automaton in canonical (BFS-named) form.

    ``endpoints[i]`` holds (iota, tau) vertex classes of ``edges[i]``; the
    initial vertex is iota of the distinguished edge, the terminal vertex
    its tau.  Equality of two canonical automata is isomorphism.
    """

    edges: tuple[str, ...]
    cells: tuple[tuple[str, str, str], ...]  # (top, botL, botR)
    distinguished: str
    endpoints: tuple[tuple[int, int], ...]

    @cached_property
    def cell_map(self) -> dict[str, tuple[str, str]]:
        m = {}
        for top, l, r in self.cells:
            assert top not in m, "automaton is not type-1 folded"
            m[top] = (l, r)
        return m

    @cached_property
    def _ep(self) -> dict[str, tuple[int, int]]:
        return dict(zip(self.edges, self.endpoints))

    def iota(self, e: str) -> int:
        return self._ep[e][0]

    def tau(self, e: str) -> int:
        return self._ep[e][1]

    @property
    def initial(self) -> int:
        return self.iota(self.distinguished)

    @property
    def terminal(self) -> int:
        return self.tau(self.distinguished)

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for ep in self.endpoints for v in ep}))

    @cached_property
    def inner_vertices(self) -> tuple[int, ...]:
        skip = {self.initial, self.terminal}
        return tuple(v for v in self.vertices if v not in skip)

    @cached_property
    def inner_edges(self) -> tuple[str, ...]:
        inner = set(self.inner_vertices)
        return tuple(e for e in self.edges
                     if self.iota(e) in inner and self.tau(e) in inner)

    def to_json_dict(self) -> dict:
        classes: dict[int, list] = {}
        for e, (i, t) in zip(self.edges, self.endpoints):
            classes.setdefault(i, []).append([e, "iota"])
            classes.setdefault(t, []).append([e, "tau"])
        return {
            "edges": list(self.edges),
            "cells": [list(c) for c in self.cells],
            "distinguished": self.distinguished,
            "vertex_classes": {str(v): sorted(map(tuple, classes[v]))
                               for v in self.vertices},
        }

    def to_dot(self) -> str:
        lines = ["digraph core {", '  rankdir=TB;']
        for e in self.edges:
            shape = "doublecircle" if e == self.distinguished else "circle"
            lines.append(f'  "{e}" [shape={shape}];')
        for top, l, r in self.cells:
            lines.append(f'  "{top}" -> "{l}" [label="0"];')
            lines.append(f'  "{top}" -> "{r}" [label="1"];')
        lines.append("}")
        return "\n".join(lines)


class _Machine:
    """Mutable folding workspace: union-find over edges and vertices."""

    def __init__(self):
        self.edges = _UnionFind()
        self.verts = _UnionFind()
        self.ends: dict[int, tuple] = {}   # edge -> (iota vid, tau vid)
        self.cells: list[tuple[int, int, int]] = []
        self.n = 0

    def new_edge(self) -> int:
        e = self.n
        self.n += 1
        self.edges.add(e)
        vi, vt = ("i", e), ("t", e)
        self.verts.add(vi)
        self.verts.add(vt)
        self.ends[e] = (vi, vt)
        return e

    def merge_edges(self, a: int, b: int):
        a, b = self.edges.find(a), self.edges.find(b)
        if a == b:
            return
        self.edges.union(a, b)
        self.verts.union(self.ends[a][0], self.ends[b][0])
        self.verts.union(self.ends[a][1], self.ends[b][1])

    def add_cell(self, top: int, l: int, r: int):
        self.cells.append((top, l, r))
        self.verts.union(self.ends[top][0], self.ends[l][0])
        self.verts.union(self.ends[l][1], self.ends[r][0])
        self.verts.union(self.ends[r][1], self.ends[top][1])

    def glue_diagram(self, g: Element, p: int):
        # the generator's spherical diagram: domain tree over inverted range
        # tree, roots glued to the distinguished edge, leaves glued pairwise
        sides = []
        for words in ([u for u, _ in g.pairs], [v for _, v in g.pairs]):
            nodes = {""}
            for w in words:
                nodes.update(w[:i] for i in range(len(w) + 1))
            edge = {w: (p if w == "" else self.new_edge()) for w in nodes}
            for w in nodes:
                if w + "0" in nodes:
                    self.add_cell(edge[w], edge[w + "0"], edge[w + "1"])
            sides.append([edge[w] for w in words])
        for a, b in zip(*sides):
            self.merge_edges(a, b)

    def fold(self, type2: bool, rng: random.Random | None):
        while True:
            find = self.edges.find
            canon = []
            seen = set()
            for t, l, r in self.cells:
                c = (find(t), find(l), find(r))
                if c not in seen:
                    seen.add(c)
                    canon.append(c)
            if rng is not None:
                rng.shuffle(canon)
            self.cells = canon
            by_top: dict[int, tuple] = {}
            by_bot: dict[tuple, tuple] = {}
            merged = False
            for t, l, r in canon:
                if t in by_top:
                    _, l2, r2 = by_top[t]
                    self.merge_edges(l, l2)
                    self.merge_edges(r, r2)
                    merged = True
                    break
                by_top[t] = (t, l, r)
                if type2:
                    if (l, r) in by_bot:
                        self.merge_edges(t, by_bot[(l, r)][0])
                        merged = True
                        break
                    by_bot[(l, r)] = (t, l, r)
            if not merged:
                return

    def finalize(self, p: int) -> CoreAutomaton:
        find = self.edges.find
        cell_map: dict[int, tuple[int, int]] = {}
        for t, l, r in self.cells:
            cell_map[find(t)] = (find(l), find(r))
        order = [find(p)]
        seen = {find(p)}
        i = 0
        while i < len(order):
            e = order[i]
            i += 1
            for b in cell_map.get(e, ()):
                if b not in seen:
                    seen.add(b)
                    order.append(b)
        name = {e: f"e{k + 1}" for k, e in enumerate(order)}
        assert len(seen) == len({find(e) for e in self.ends}), \
            "unreachable edge after folding"
        vid: dict = {}
        endpoints = []
        for e in order:
            vi, vt = (self.verts.find(v) for v in self.ends[e])
            endpoints.append((vid.setdefault(vi, len(vid)),
                              vid.setdefault(vt, len(vid))))
        cells = tuple(sorted((name[t], name[l], name[r])
                             for t, (l, r) in cell_map.items()))
        return CoreAutomaton(tuple(name[e] for e in order), cells,
                             name[find(p)], tuple(endpoints))


def _build(generators: list[Element], type2: bool, seed) -> CoreAutomaton:
    m = _Machine()
    p = m.new_edge()
    rng = random.Random(seed) if seed is not None else None
    gens = [g for g in generators if not g.is_identity()]
    if rng is not None:
        rng.shuffle(gens)
    for g in gens:
        m.glue_diagram(g, p)
    m.fold(type2, rng)
    return m.finalize(p)


def build_core(generators: list[Element], seed=None) -> CoreAutomaton:
    """The Stallings 2-core L(H) for H generated by the given elements."""
    return _build(generators, True, seed)


def build_semicore(generators: list[Element], seed=None) -> CoreAutomaton:
    """The semi-core: same construction with type-1 foldings only."""
    return _build(generators, False, seed)


def core_from_semicore(semi: CoreAutomaton) -> CoreAutomaton:
    """Finish the remaining type-2 foldings of a semi-core."""
    m = _Machine()
    ids = {}
    for e in semi.edges:
        ids[e] = m.new_edge()
    for t, l, r in semi.cells:
        m.add_cell(ids[t], ids[l], ids[r])
    m.fold(True, None)
    return m.finalize(ids[semi.distinguished])


# ---------------------------------------------------------------------------
# paths, acceptance, orbits
# ---------------------------------------------------------------------------

def trace(core: CoreAutomaton, word: str, start: str | None = None) -> str | None:
    """Follow the trail labeled by a binary word; None if it leaves the core."""
    e = core.distinguished if start is None else start
    for c in word:
        nxt = core.cell_map.get(e)
        if nxt is None:
            return None
        e = nxt[0] if c == "0" else nxt[1]
    return e


def accepts(core: CoreAutomaton, a: Element) -> bool:
    """True iff every branch pair u -> v traces to one and the same edge."""
    for u, v in a.pairs:
        eu = trace(core, u)
        if eu is None or eu != trace(core, v):
            return False
    return True


@dataclass(frozen=True)
class GammaGraph:
    """Digraph on core edges not incident to the initial vertex; arcs go
    top -> botL.  Out-degree is at most 1."""

    vertices: tuple[str, ...]
    arcs: tuple[tuple[str, str], ...]

    def weak_components(self) -> list[set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for a, b in self.arcs:
            adj[a].add(b)
            adj[b].add(a)
        comps, seen = [], set()
        for v in self.vertices:
            if v in seen:
                continue
            comp, stack = set(), [v]
            while stack:
                x = stack.pop()
                if x in comp:
                    continue
                comp.add(x)
                stack.extend(adj[x] - comp)
            seen |= comp
            comps.append(comp)
        return comps

    def to_dot(self) -> str:
        lines = ["digraph gamma {"]
        lines += [f'  "{v}";' for v in self.vertices]
        lines += [f'  "{a}" -> "{b}";' for a, b in self.arcs]
        lines.append("}")
        return "\n".join(lines)


def gamma_graph(core: CoreAutomaton) -> GammaGraph:
    init = core.initial
    verts = tuple(e for e in core.edges
                  if core.iota(e) != init and core.tau(e) != init)
    vs = set(verts)
    arcs = tuple((t, l) for t, l, _ in core.cells if t in vs and l in vs)
    return GammaGraph(verts, arcs)


@dataclass(frozen=True)
class OrbitCount:
    infinite: bool
    count: int | None

    def __repr__(self):
        return "Infinite" if self.infinite else f"Finite({self.count})"


def dyadic_orbit_count(core: CoreAutomaton) -> OrbitCount:
    """Orbits of the subgroup acting on the dyadic fractions in (0,1)."""
    if any(e not in core.cell_map for e in core.edges):
        return OrbitCount(True, None)
    comps = gamma_graph(core).weak_components()
    # independent computation: components correspond to inner vertices
    assert len(comps) == len(core.inner_vertices)
    return OrbitCount(False, len(comps))


def _zero_walk(core: CoreAutomaton, e: str) -> list[str]:
    # edges reachable by repeatedly descending botL; stops on repeat/dead end
    out, seen = [], set()
    while e is not None and e not in seen:
        out.append(e)
        seen.add(e)
        cell = core.cell_map.get(e)
        e = cell[0] if cell else None
    return out


def same_dyadic_orbit(core: CoreAutomaton, w1: str, w2: str) -> bool:
    """Whether .w1 and .w2 lie in one orbit of the subgroup on the dyadics."""
    for w in (w1, w2):
        if not w or not w.endswith("1") or any(c not in "01" for c in w):
            raise ValueError(f"need a canonical dyadic name ending in 1: {w!r}")
    t1, t2 = trace(core, w1), trace(core, w2)
    if t1 is not None and t2 is not None:
        return bool(set(_zero_walk(core, t1)) & set(_zero_walk(core, t2)))
    if t1 is not None or t2 is not None:
        return False

    def split(w):
        e = core.distinguished
        for i, c in enumerate(w):
            cell = core.cell_map.get(e)
            if cell is None:
                return e, w[i:]
            e = cell[0] if c == "0" else cell[1]
        raise AssertionError
    e1, s1 = split(w1)
    e2, s2 = split(w2)
    return e1 == e2 and s1 == s2


def contains_derived_in_closure(core: CoreAutomaton) -> bool:
    """Whether Cl(H) contains the derived subgroup [F,F]: every edge tops a
    cell and there is exactly one inner edge."""
    if any(e not in core.cell_map for e in core.edges):
        return False
    return len(core.inner_edges) == 1


def transitive_on_period_orbit(core: CoreAutomaton, s: str) -> bool:
    """Transitivity on the orbit of the rational .s^infinity (s a minimal
    period containing both digits)."""
    if "0" not in s or "1" not in s:
        raise ValueError("period must contain both digits")
    if any(e not in core.cell_map for e in core.edges):
        return False
    gamma = gamma_graph(core)
    arcs = []
    for e in gamma.vertices:
        f = trace(core, s, e)
        if f is not None and f in set(gamma.vertices):
            arcs.append((e, f))
    gs = GammaGraph(gamma.vertices, tuple(arcs))
    return len(gs.weak_components()) == 1


def gamma_s_graph(core: CoreAutomaton, s: str) -> GammaGraph:
    gamma = gamma_graph(core)
    vs = set(gamma.vertices)
    arcs = tuple((e, f) for e in gamma.vertices
                 for f in [trace(core, s, e)] if f in vs)
    return GammaGraph(gamma.vertices, arcs)


# ---------------------------------------------------------------------------
# minimal labeled trees
# ---------------------------------------------------------------------------

def minimal_tree(core: CoreAutomaton) -> Tree:
    """A BFS-canonical minimal tree describing the core: every cell appears
    as exactly one caret and no two inner vertices share a label."""
    expanded: set[str] = set()

    entries: list = []          # mutable [label, lchild, rchild] nodes
    root = [core.distinguished, None, None]
    queue = [root]
    while queue:
        node = queue.pop(0)
        lab = node[0]
        cell = core.cell_map.get(lab)
        if cell is None or lab in expanded:
            continue
        expanded.add(lab)
        node[1] = [cell[0], None, None]
        node[2] = [cell[1], None, None]
        queue += [node[1], node[2]]

    def freeze(node) -> Tree:
        if node[1] is None:
            return (node[0],)
        return (node[0], freeze(node[1]), freeze(node[2]))

    tree = freeze(root)
    assert len(expanded) == len(core.cells)
    return tree


def tree_carets(tree: Tree) -> list[tuple[str, str, str]]:
    out = []

    def walk(node):
        if len(node) == 3:
            out.append((node[0], node[1][0], node[2][0]))
            walk(node[1])
            walk(node[2])
    walk(tree)
    return out


def tree_labels(tree: Tree) -> set[str]:
    if len(tree) == 1:
        return {tree[0]}
    return {tree[0]} | tree_labels(tree[1]) | tree_labels(tree[2])


def core_from_tree(tree: Tree) -> CoreAutomaton:
    return core_from_tree_with_map(tree)[0]


def core_from_tree_with_map(tree: Tree) -> tuple[CoreAutomaton, dict[str, str]]:
    """Rebuild the folded automaton described by a labeled tree; returns the
    canonical core and the map original label -> canonical edge name."""
    carets = tree_carets(tree)
    cell_of: dict[str, tuple[str, str]] = {}
    for t, l, r in carets:
        if cell_of.get(t, (l, r)) != (l, r):
            raise ValueError(f"inconsistent carets for label {t!r}")
        cell_of[t] = (l, r)
    m = _Machine()
    ids = {lab: m.new_edge() for lab in sorted(tree_labels(tree))}
    for t, (l, r) in cell_of.items():
        m.add_cell(ids[t], ids[l], ids[r])
    core = m.finalize(ids[tree[0]])
    # recover the renaming by replaying the BFS used in finalize
    find = m.edges.find
    back = {find(i): lab for lab, i in ids.items()}
    order = [find(ids[tree[0]])]
    seen = set(order)
    i = 0
    while i < len(order):
        cell = cell_of.get(back[order[i]])
        i += 1
        if cell:
            for lab in cell:
                e = find(ids[lab])
                if e not in seen:
                    seen.add(e)
                    order.append(e)
    mapping = {}
    for k, e in enumerate(order):
        for lab, i0 in ids.items():
            if find(i0) == e:
                mapping[lab] = f"e{k + 1}"
    return core, mapping


def tree_to_dot(tree: Tree) -> str:
    lines = ["digraph mintree {"]
    counter = [0]

    def walk(node) -> str:
        nid = f"n{counter[0]}"
        counter[0] += 1
        lines.append(f'  {nid} [label="{node[0]}"];')
        if len(node) == 3:
            for child in node[1:]:
                cid = walk(child)
                lines.append(f"  {nid} -> {cid};")
        return nid
    walk(tree)
    lines.append("}")
    return "\n".join(lines)


def tree_to_json(tree: Tree) -> str:
    def conv(node):
        if len(node) == 1:
            return {"label": node[0]}
        return {"label": node[0], "left": conv(node[1]), "right": conv(node[2])}
    return json.dumps(conv(tree), indent=2)
