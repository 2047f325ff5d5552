"""Independent brute-force oracles, built only on element arithmetic and
plain graph search.  They intentionally avoid the production algorithms
they are meant to check."""
from thompsonf import invert, multiply
from thompsonf.elements import _fixed_set, is_dyadic, slope_at
from thompsonf.decision import Lattice2
from thompsonf.solvability import optimal_trail, periodic_edges


def slope_vectors(a):
    """All (log2 left slope, log2 right slope) pairs of a at its fixed
    dyadic points in (0,1)."""
    out = set()
    for lo, hi in _fixed_set(a):
        for x in (lo, hi):
            if 0 < x < 1 and is_dyadic(x):
                out.add((slope_at(a, x, "left"), slope_at(a, x, "right")))
    return out


def brute_force_slope_lattice(generators, max_len: int = 6) -> Lattice2:
    """The lattice spanned by the slope pairs of every element given by a
    word of length at most max_len in the generators and their inverses."""
    letters = list(generators) + [invert(g) for g in generators]
    seen = {None}
    frontier = [None]  # None stands for the identity without building it
    vectors = set()
    for _ in range(max_len):
        nxt = []
        for a in frontier:
            for g in letters:
                b = g if a is None else multiply(a, g)
                if b in seen:
                    continue
                seen.add(b)
                nxt.append(b)
                vectors |= slope_vectors(b)
        frontier = nxt
    return Lattice2.span(sorted(vectors))


def _descent_reachable(core):
    # reach[e] = edges reachable from e by descending through cells
    reach = {e: {e} for e in core.edges}
    changed = True
    while changed:
        changed = False
        for e, cell in core.cell_map.items():
            for b in cell:
                if not reach[b] <= reach[e]:
                    reach[e] |= reach[b]
                    changed = True
    return reach


def pgraph_arcs_by_value(core):
    """Arcs (e1, e2) such that some trail q from e1 ends at e2 with
    .q > .s^inf for s the optimal trail of e1 (exact comparison).

    A trail beats .s^inf iff it follows the digits of s^inf exactly up to
    some position where s^inf has a 0 and the trail takes the 1-branch;
    after that any continuation keeps the strict inequality (s contains a
    0, so the tail of .s^inf cannot be all 1s).  Walking the digits of
    s^inf is deterministic, so it either dies or cycles within
    |edges| * |s| steps; every divergence point is found on that walk and
    any endpoint descent-reachable from the 1-branch completes a trail.
    """
    periodic = sorted(periodic_edges(core))
    reach = _descent_reachable(core)
    arcs = set()
    for e in periodic:
        s = optimal_trail(core, e)
        cur, i = e, 0
        seen = set()
        while cur is not None and (cur, i % len(s)) not in seen:
            seen.add((cur, i % len(s)))
            cell = core.cell_map.get(cur)
            if cell is None:
                break
            digit = s[i % len(s)]
            if digit == "0":
                arcs |= {(e, t) for t in periodic if t in reach[cell[1]]}
            cur = cell[0] if digit == "0" else cell[1]
            i += 1
    return arcs
