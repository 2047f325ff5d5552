"""Finite generating sets for the closure of a subgroup of F.

The core induces a semigroup presentation with one rule botL.botR -> top
per cell.  A Knuth-Bendix completion of it (under ShortLex for the BFS
edge order) makes equality of 1-paths decidable, and every rewrite carries
a ForestDiagram witness: a forest-pair diagram proving the equality over
the original cells.  Generators of the closure are assembled from the
completed rules following the Guba-Sapir tuple construction, and the same
machinery tests whether a labeled tree describes the core of any subgroup.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .elements import Element
from .core import (CoreAutomaton, Tree, build_core, trace,
                   tree_carets, tree_labels)

Entry = tuple[int, str]  # (root index, binary word)


def _check_forest(entries: list[Entry], arity: int):
    by_root: dict[int, list[str]] = {i: [] for i in range(arity)}
    for r, w in entries:
        if r not in by_root:
            raise ValueError(f"root {r} out of range")
        by_root[r].append(w)
    for r, words in by_root.items():
        if not words:
            raise ValueError(f"root {r} has no leaves")
        words.sort()
        total = 0
        for i, w in enumerate(words):
            if i + 1 < len(words) and words[i + 1].startswith(w):
                raise ValueError("forest words are not prefix-free")
            total += 2 ** (len(max(words, key=len)) - len(w))
        if total != 2 ** len(max(words, key=len)):
            raise ValueError("forest of a root is not complete")


def _reduce_pairs(pairs: list) -> tuple:
    out = list(pairs)
    i = 0
    while i + 1 < len(out):
        (r1, u1), (s1, v1) = out[i]
        (r2, u2), (s2, v2) = out[i + 1]
        if (r1 == r2 and s1 == s2 and u1[:-1] == u2[:-1] and v1[:-1] == v2[:-1]
                and u1.endswith("0") and u2.endswith("1")
                and v1.endswith("0") and v2.endswith("1")):
            out[i:i + 2] = [((r1, u1[:-1]), (s1, v1[:-1]))]
            i = max(i - 1, 0)
        else:
            i += 1
    return tuple(out)


@dataclass(frozen=True)
class ForestDiagram:
    """An order-preserving matching between the leaves of a complete forest
    over ``domain_arity`` roots and one over ``range_arity`` roots.  This is
    Element's branch-pair format with numbered roots; mirrored sibling pairs
    are cancelled on construction."""

    domain_arity: int
    range_arity: int
    pairs: tuple[tuple[Entry, Entry], ...]

    def __post_init__(self):
        pairs = _reduce_pairs(sorted(self.pairs))
        object.__setattr__(self, "pairs", pairs)
        dom = [d for d, _ in pairs]
        rng = [r for _, r in pairs]
        if sorted(rng) != rng or len(set(rng)) != len(rng):
            raise ValueError("matching is not order preserving")
        _check_forest(dom, self.domain_arity)
        _check_forest(rng, self.range_arity)

    @staticmethod
    def identity(n: int) -> "ForestDiagram":
        return ForestDiagram(n, n, tuple(((i, ""), (i, "")) for i in range(n)))

    def invert(self) -> "ForestDiagram":
        return ForestDiagram(self.range_arity, self.domain_arity,
                             tuple((r, d) for d, r in self.pairs))

    def __add__(self, other: "ForestDiagram") -> "ForestDiagram":
        shift_d, shift_r = self.domain_arity, self.range_arity
        pairs = self.pairs + tuple(
            (((d + shift_d, u), (r + shift_r, v)))
            for (d, u), (r, v) in other.pairs)
        return ForestDiagram(shift_d + other.domain_arity,
                             shift_r + other.range_arity, pairs)

    def compose(self, other: "ForestDiagram") -> "ForestDiagram":
        """First self, then other (self's range arity = other's domain)."""
        if self.range_arity != other.domain_arity:
            raise ValueError("arities do not chain")
        mids = sorted({r for _, r in self.pairs}
                      | {d for d, _ in other.pairs})
        pairs = []
        for i, mid in enumerate(mids):
            nxt = mids[i + 1] if i + 1 < len(mids) else None
            if (nxt is not None and nxt[0] == mid[0]
                    and nxt[1].startswith(mid[1])):
                continue  # mid has extensions; not a refinement leaf
            root, w = mid
            for (d, u), (r, v) in self.pairs:
                if r == root and w.startswith(v):
                    left = (d, u + w[len(v):])
                    break
            for (d, u), (r, v) in other.pairs:
                if d == root and w.startswith(u):
                    right = (r, v + w[len(u):])
                    break
            pairs.append((left, right))
        return ForestDiagram(self.domain_arity, other.range_arity,
                             tuple(pairs))

    def to_element(self) -> Element:
        if self.domain_arity != 1 or self.range_arity != 1:
            raise ValueError("not a spherical (1,1)-diagram")
        return Element(tuple((u, v) for (_, u), (_, v) in self.pairs))


def replay(core: CoreAutomaton, fd: ForestDiagram,
           domain: tuple[str, ...], range_: tuple[str, ...]) -> bool:
    """Check that fd is a diagram over the core from the 1-path ``domain``
    to the 1-path ``range_``: matched leaves carry the same edge."""
    if (len(domain) != fd.domain_arity or len(range_) != fd.range_arity):
        return False
    for (d, u), (r, v) in fd.pairs:
        a = trace(core, u, domain[d])
        b = trace(core, v, range_[r])
        if a is None or a != b:
            return False
    return True


# ---------------------------------------------------------------------------
# rewriting
# ---------------------------------------------------------------------------

Word = tuple[str, ...]


@dataclass(frozen=True)
class Rule:
    lhs: Word
    rhs: Word
    witness: ForestDiagram | None = field(compare=False, default=None)


def presentation(core: CoreAutomaton) -> list[Rule]:
    """One rule botL.botR -> top per cell, witnessed by the cell itself."""
    cell = ForestDiagram(2, 1, (((0, ""), (0, "0")), ((1, ""), (0, "1"))))
    return [Rule((l, r), (top,), cell) for top, l, r in core.cells]


@dataclass(frozen=True)
class RewriteSystem:
    rules: tuple[Rule, ...]
    status: str  # 'complete' | 'budget_exceeded'
    alphabet: tuple[str, ...]

    def key(self, w: Word):
        idx = {e: i for i, e in enumerate(self.alphabet)}
        return (len(w), tuple(idx[x] for x in w))

    @property
    def is_complete(self) -> bool:
        return self.status == "complete"

    def to_text(self) -> str:
        return "\n".join(f"{' '.join(r.lhs)} -> {' '.join(r.rhs)}"
                         for r in self.rules)

    @staticmethod
    def from_text(text: str, alphabet, status: str = "complete"):
        rules = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            lhs, rhs = line.split("->")
            rules.append(Rule(tuple(lhs.split()), tuple(rhs.split()), None))
        return RewriteSystem(tuple(rules), status, tuple(alphabet))


def normalize(rs: RewriteSystem, word) -> tuple[Word, ForestDiagram | None]:
    """Rewrite to the irreducible form, leftmost position first and the
    ShortLex-least applicable lhs at that position; returns the witness
    diagram word -> normal form when all rules carry witnesses."""
    w = tuple(word)
    wit: ForestDiagram | None = ForestDiagram.identity(len(w))
    by_key = sorted(rs.rules, key=lambda r: rs.key(r.lhs))
    while True:
        hit = None
        for i in range(len(w)):
            for r in by_key:
                if w[i:i + len(r.lhs)] == r.lhs:
                    hit = (i, r)
                    break
            if hit:
                break
        if hit is None:
            return w, wit
        i, r = hit
        w = w[:i] + r.rhs + w[i + len(r.lhs):]
        if wit is not None and r.witness is not None:
            step = (ForestDiagram.identity(i) + r.witness
                    + ForestDiagram.identity(len(w) - i - len(r.rhs)))
            wit = wit.compose(step)
        else:
            wit = None


def _orient(rs_key, w1, wit1, w2, wit2) -> Rule | None:
    # wit_i: superposition -> w_i; rule witness must run lhs -> rhs
    if w1 == w2:
        return None
    if rs_key(w1) < rs_key(w2):
        w1, wit1, w2, wit2 = w2, wit2, w1, wit1
    witness = None
    if wit1 is not None and wit2 is not None:
        witness = wit1.invert().compose(wit2)
    return Rule(w1, w2, witness)


def complete(rules: list[Rule], alphabet,
             max_rules: int = 500, max_word_len: int = 16) -> RewriteSystem:
    """Knuth-Bendix completion under ShortLex; witnesses of new rules are
    composed from the witnesses of the rules forming each critical pair."""
    rs = RewriteSystem(tuple(rules), "budget_exceeded", tuple(alphabet))
    work: list[Rule] = list(rules)
    known = {(r.lhs, r.rhs) for r in work}
    queue = deque((i, j) for i in range(len(work)) for j in range(len(work)))

    def one_step(word, i, rule):
        w = word[:i] + rule.rhs + word[i + len(rule.lhs):]
        wit = None
        if rule.witness is not None:
            wit = (ForestDiagram.identity(i) + rule.witness
                   + ForestDiagram.identity(len(word) - i - len(rule.lhs)))
        return w, wit

    while queue:
        i, j = queue.popleft()
        r1, r2 = work[i], work[j]
        sups = []
        # proper overlap: a suffix of r1.lhs is a prefix of r2.lhs
        for k in range(1, len(r1.lhs)):
            if r1.lhs[k:] == r2.lhs[:len(r1.lhs) - k]:
                sups.append((r1.lhs + r2.lhs[len(r1.lhs) - k:], 0, k))
        # containment: r2.lhs inside r1.lhs
        if len(r2.lhs) < len(r1.lhs) or (len(r2.lhs) == len(r1.lhs) and i != j):
            for k in range(len(r1.lhs) - len(r2.lhs) + 1):
                if r1.lhs[k:k + len(r2.lhs)] == r2.lhs:
                    sups.append((r1.lhs, 0, k))
        for word, p1, p2 in sups:
            if len(word) > max_word_len:
                return rs
            a, wa = one_step(word, p1, r1)
            b, wb = one_step(word, p2, r2)
            cur = RewriteSystem(tuple(work), "budget_exceeded", rs.alphabet)
            na, da = normalize(cur, a)
            nb, db = normalize(cur, b)
            if wa is not None and da is not None:
                da = wa.compose(da)
            else:
                da = None
            if wb is not None and db is not None:
                db = wb.compose(db)
            else:
                db = None
            new = _orient(cur.key, na, da, nb, db)
            if new is None or (new.lhs, new.rhs) in known:
                continue
            if len(work) >= max_rules or len(new.lhs) > max_word_len:
                return rs
            known.add((new.lhs, new.rhs))
            work.append(new)
            n = len(work) - 1
            queue.extend((n, t) for t in range(len(work)))
            queue.extend((t, n) for t in range(len(work) - 1))
    return RewriteSystem(tuple(work), "complete", rs.alphabet)


def equal_in_semigroup(rs: RewriteSystem, w1, w2,
                       max_states: int = 20000,
                       max_len: int = 16) -> bool | None:
    """Word equality in the presented semigroup.  Decisive under a complete
    system; otherwise a bounded bidirectional derivation search that can
    prove equality (True) or give up (None)."""
    w1, w2 = tuple(w1), tuple(w2)
    n1, _ = normalize(rs, w1)
    n2, _ = normalize(rs, w2)
    if n1 == n2:
        return True
    if rs.is_complete:
        return False
    sides = [{n1}, {n2}]
    frontiers = [{n1}, {n2}]
    while (frontiers[0] or frontiers[1]) and sum(map(len, sides)) < max_states:
        for s in range(2):
            nxt = set()
            for w in frontiers[s]:
                for r in rs.rules:
                    for lhs, rhs in ((r.lhs, r.rhs), (r.rhs, r.lhs)):
                        for i in range(len(w) - len(lhs) + 1):
                            if w[i:i + len(lhs)] != lhs:
                                continue
                            v = w[:i] + rhs + w[i + len(lhs):]
                            if len(v) <= max_len and v not in sides[s]:
                                nxt.add(v)
            sides[s] |= nxt
            frontiers[s] = nxt
            if sides[0] & sides[1]:
                return True
    return None


# ---------------------------------------------------------------------------
# generating set of the closure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GenTuple:
    u: Word
    rule: Rule
    v: Word


def _left_paths(core: CoreAutomaton) -> dict[int, Word]:
    # one 1-path from the initial vertex to every reachable vertex
    paths = {core.initial: ()}
    frontier = [core.initial]
    while frontier:
        nxt = []
        for x in frontier:
            for e in core.edges:
                if core.iota(e) == x and core.tau(e) not in paths:
                    paths[core.tau(e)] = paths[x] + (e,)
                    nxt.append(core.tau(e))
        frontier = nxt
    return paths


def _right_paths(core: CoreAutomaton) -> dict[int, Word]:
    paths = {core.terminal: ()}
    frontier = [core.terminal]
    while frontier:
        nxt = []
        for x in frontier:
            for e in core.edges:
                if core.tau(e) == x and core.iota(e) not in paths:
                    paths[core.iota(e)] = (e,) + paths[x]
                    nxt.append(core.iota(e))
        frontier = nxt
    return paths


def reduced_boundary_paths(core: CoreAutomaton,
                           rs: RewriteSystem) -> dict[int, tuple[Word, Word]]:
    """For each inner vertex: the unique reduced 1-path from the initial
    vertex to it and from it to the terminal vertex."""
    if not rs.is_complete:
        raise ValueError("rewriting system is not complete")
    left, right = _left_paths(core), _right_paths(core)
    return {x: (normalize(rs, left[x])[0], normalize(rs, right[x])[0])
            for x in core.inner_vertices}


def _is_one_path(core: CoreAutomaton, w: Word) -> bool:
    return all(core.tau(a) == core.iota(b) for a, b in zip(w, w[1:]))


def gen_tuples(core: CoreAutomaton, rs: RewriteSystem) -> list[GenTuple]:
    """At most one tuple [u, lhs -> rhs, v] per rule whose lhs is a 1-path:
    u, v are the reduced boundary words making u.lhs.v equal to p."""
    if not rs.is_complete:
        raise ValueError("rewriting system is not complete")
    left, right = _left_paths(core), _right_paths(core)
    base, _ = normalize(rs, (core.distinguished,))
    out = []
    for rule in rs.rules:
        if not _is_one_path(core, rule.lhs):
            continue
        iv, tv = core.iota(rule.lhs[0]), core.tau(rule.lhs[-1])
        if iv not in left or tv not in right:
            continue
        u, _ = normalize(rs, left[iv])
        v, _ = normalize(rs, right[tv])
        nf, _ = normalize(rs, u + rule.lhs + v)
        if nf != base:
            raise RuntimeError("boundary words do not close up to p")
        out.append(GenTuple(u, rule, v))
    return out


def closure_generators(core: CoreAutomaton, rs: RewriteSystem) -> list[Element]:
    """Elements generating Cl(H), one per gen tuple (possibly redundant)."""
    base, _ = normalize(rs, (core.distinguished,))
    if len(base) != 1:
        raise RuntimeError("distinguished edge is reducible; unsupported core")
    out: list[Element] = []
    for gt in gen_tuples(core, rs):
        w1 = gt.u + gt.rule.lhs + gt.v
        w2 = gt.u + gt.rule.rhs + gt.v
        _, d1 = normalize(rs, w1)
        _, d2 = normalize(rs, w2)
        mid = (ForestDiagram.identity(len(gt.u)) + gt.rule.witness
               + ForestDiagram.identity(len(gt.v)))
        sphere = d1.invert().compose(mid).compose(d2)
        elt = sphere.to_element()
        if not elt.is_identity() and elt not in out:
            out.append(elt)
    return out


def prune_generators(gens: list[Element],
                     core: CoreAutomaton) -> list[Element]:
    """A subset generating a subgroup with the same core.  Exact minimum by
    exhaustive search for small lists, greedy otherwise; the result is not
    guaranteed minimal in the greedy case."""
    uniq: list[Element] = []
    for g in gens:
        if g not in uniq:
            uniq.append(g)
    if len(uniq) <= 12:
        for k in range(len(uniq) + 1):
            for sub in itertools.combinations(uniq, k):
                if build_core(list(sub)) == core:
                    return list(sub)
    kept = list(uniq)
    for g in list(kept):
        trial = [h for h in kept if h != g]
        if build_core(trial) == core:
            kept = trial
    return kept


# ---------------------------------------------------------------------------
# witness elements and the core-automaton test
# ---------------------------------------------------------------------------

def _spine_diagram(core: CoreAutomaton, u: str):
    # minimal tree-diagram with branch u, as a 1 -> k ForestDiagram, with
    # the leaf labels and the position of u among the leaves
    leaves = sorted({u} | {u[:i] + ("1" if c == "0" else "0")
                           for i, c in enumerate(u)})
    fd = ForestDiagram(1, len(leaves),
                       tuple(((0, w), (j, "")) for j, w in enumerate(leaves)))
    labels = tuple(trace(core, w) for w in leaves)
    return fd, labels, leaves.index(u)


def witness_pair(core: CoreAutomaton, rs: RewriteSystem,
                 u: str, v: str) -> Element:
    """An element of Cl(H) accepted by the core mapping [u] linearly onto
    [v]; requires that u and v trace to the same edge."""
    eu, ev = trace(core, u), trace(core, v)
    if eu is None or ev is None or eu != ev:
        raise ValueError("words do not trace to a common edge")
    fdu, labu, ku = _spine_diagram(core, u)
    fdv, labv, kv = _spine_diagram(core, v)
    deltas = []
    for wu, wv in ((labu[:ku], labv[:kv]), (labu[ku + 1:], labv[kv + 1:])):
        nu, du = normalize(rs, wu)
        nv, dv = normalize(rs, wv)
        if nu != nv:
            raise RuntimeError("flanking words disagree in the semigroup")
        deltas.append(du.compose(dv.invert()))
    mid = deltas[0] + ForestDiagram.identity(1) + deltas[1]
    return fdu.compose(mid).compose(fdv.invert()).to_element()


def _tree_vertices(tree: Tree) -> list[tuple[str, str]]:
    # (path, label) for every vertex, BFS order
    out, queue = [], deque([("", tree)])
    while queue:
        path, node = queue.popleft()
        out.append((path, node[0]))
        if len(node) == 3:
            queue.append((path + "0", node[1]))
            queue.append((path + "1", node[2]))
    return out


def _tree_flanks(tree: Tree, u: str) -> tuple[Word, Word]:
    # leaf labels of the spine subtree with branch u, split around u
    labels = {}
    node = tree
    for i, c in enumerate(u):
        labels[u[:i] + ("1" if c == "0" else "0")] = node[2 if c == "0" else 1][0]
        node = node[1 if c == "0" else 2]
    labels[u] = node[0]
    ordered = sorted(labels)
    k = ordered.index(u)
    return (tuple(labels[w] for w in ordered[:k]),
            tuple(labels[w] for w in ordered[k + 1:]))


def is_core_automaton(tree: Tree, max_rules: int = 500,
                      max_word_len: int = 16) -> str:
    """Whether the folded automaton given by a labeled tree is the core of
    some subgroup: 'yes', 'no', or 'unknown' when the word-equality checks
    stay undecided within the budget."""
    verts = _tree_vertices(tree)
    carets = tree_carets(tree)
    cell_of: dict[str, tuple[str, str]] = {}
    for t, l, r in carets:
        if cell_of.get(t, (l, r)) != (l, r):
            raise ValueError("a label tops two different carets")
        cell_of[t] = (l, r)
    if len(set(cell_of.values())) != len(cell_of):
        raise ValueError("two carets share a bottom pair (automaton unfolded)")
    inner = [lab for (t, l, r) in carets for lab in [t]]
    if len(set(inner)) != len(inner):
        raise ValueError("two inner vertices share a label")

    counts: dict[str, int] = {}
    for _, lab in verts:
        counts[lab] = counts.get(lab, 0) + 1

    def walk(node):
        # brother leaves: at least one must share its label elsewhere
        if len(node) == 1:
            return True
        l, r = node[1], node[2]
        if len(l) == 1 and len(r) == 1:
            if counts[l[0]] < 2 and counts[r[0]] < 2:
                return False
        return walk(l) and walk(r)
    if not walk(tree):
        return "no"

    alphabet = []
    for _, lab in verts:
        if lab not in alphabet:
            alphabet.append(lab)
    cell = ForestDiagram(2, 1, (((0, ""), (0, "0")), ((1, ""), (0, "1"))))
    rules = [Rule((l, r), (t,), cell) for t, (l, r) in cell_of.items()]
    rs = complete(rules, alphabet, max_rules, max_word_len)

    groups: dict[str, list[str]] = {}
    for path, lab in verts:
        groups.setdefault(lab, []).append(path)
    unknown = False
    for paths in groups.values():
        first = _tree_flanks(tree, paths[0])
        for other in paths[1:]:
            flanks = _tree_flanks(tree, other)
            for a, b in zip(first, flanks):
                res = equal_in_semigroup(rs, a, b)
                if res is False:
                    return "no"
                if res is None:
                    unknown = True
    return "unknown" if unknown else "yes"
