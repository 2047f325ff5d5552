"""Periodic edges, optimal trails, the P graph and derived length."""
import json
import random

import pytest

from thompsonf import (build_core, generator, invert, multiply, optimal_trail,
                       p_graph, periodic_edges, solvability)
from thompsonf.solvability import solvability_json

from helpers import FIXTURES, product, random_word_element

X0, X1 = generator(0), generator(1)


def test_core_of_f_periodic_edges_and_trails():
    core = build_core([X0, X1])
    # canonical names: e2, e4 play f and h of the three-cell core of F
    assert periodic_edges(core) == {"e2", "e4"}
    assert optimal_trail(core, "e2") == "0"
    assert optimal_trail(core, "e4") == "0"
    with pytest.raises(ValueError):
        optimal_trail(core, "e3")  # self-trails of e3 are all labeled 1..1


def test_trivial_core_has_no_periodic_edges():
    core = build_core([])
    assert periodic_edges(core) == set()
    with pytest.raises(ValueError):
        optimal_trail(core, "e1")


def test_p_graph_of_f_has_a_loop():
    g = p_graph(build_core([X0, X1]))
    assert g.vertices == ("e2", "e4")
    assert ("e4", "e4") in g.arcs
    assert g.has_cycle()


def test_p_graph_of_wreath_fixture():
    core = build_core(FIXTURES["wreath"])
    g = p_graph(core)
    assert len(g.vertices) == 2
    assert len(g.arcs) == 1
    (a, b), = g.arcs
    assert (a, b) == (g.vertices[0], g.vertices[1])
    assert g.trails[a] == "0"


SOLVABILITY = {"b1": None, "ex1": None, "f": None, "identity": 0,
               "jones3": None, "lem_max": None, "rem_k": None,
               "section3": None, "theorem_b": None, "wreath": 2, "x0": 1}


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_solvability_verdicts(name):
    s = solvability(build_core(FIXTURES[name]))
    if SOLVABILITY[name] is None:
        assert not s.solvable and s.derived_length is None
        assert repr(s) == "NotSolvable"
    else:
        assert s.solvable and s.derived_length == SOLVABILITY[name]
        assert repr(s) == f"Solvable({SOLVABILITY[name]})"


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_arc_set_matches_value_comparison_oracle(name):
    from oracles import pgraph_arcs_by_value
    core = build_core(FIXTURES[name])
    assert set(p_graph(core).arcs) == pgraph_arcs_by_value(core), name


def test_derived_length_monotone_under_adding_generators():
    def length(gens):
        s = solvability(build_core(gens))
        return s.derived_length if s.solvable else float("inf")

    for name, gens in sorted(FIXTURES.items()):
        base = length(gens)
        for extra in (X0, X1, multiply(X0, X1)):
            assert length(gens + [extra]) >= base, name


def test_solvability_is_conjugation_invariant():
    rng = random.Random(31)
    for name in ("wreath", "x0", "f", "identity", "ex1"):
        gens = FIXTURES[name]
        base = solvability(build_core(gens))
        for _ in range(5):
            g = random_word_element(rng, 4)
            conj = [product([invert(g), h, g]) for h in gens]
            assert solvability(build_core(conj)) == base, name


def test_solvability_json():
    data = json.loads(solvability_json(build_core(FIXTURES["wreath"])))
    assert data["verdict"] == "Solvable" and data["derived_length"] == 2
    assert len(data["vertices"]) == 2 and len(data["arcs"]) == 1
    assert set(data["trails"]) == set(data["vertices"])


def test_p_graph_dot_mentions_trails():
    dot = p_graph(build_core(FIXTURES["wreath"])).to_dot()
    assert "s=0" in dot and "->" in dot
