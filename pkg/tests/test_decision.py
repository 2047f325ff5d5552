"""Abelianization, slope lattices and the generation verdicts."""
import pytest

from thompsonf import (Lattice2, abelianization_full, build_core,
                       build_semicore, contains_derived, generates_F,
                       generator, invert, multiply, parse_element,
                       slope_lattice, accepts)
from thompsonf.decision import Tuple, tuples_from_element

from helpers import FIXTURES, product
from oracles import brute_force_slope_lattice

X0, X1 = generator(0), generator(1)


def test_lattice_span_and_membership():
    assert Lattice2.span([]).basis == ()
    assert Lattice2.span([(0, 0)]).rank == 0
    assert Lattice2.span([(2, 0), (0, 2), (1, 1)]).basis == ((1, 1), (0, 2))
    assert Lattice2.span([(1, -1), (0, -1)]).full
    assert not Lattice2.span([(1, 1), (2, 2)]).full
    lat = Lattice2.span([(2, 0), (0, 3)])
    assert lat.basis == ((2, 0), (0, 3)) and lat.rank == 2 and not lat.full
    assert lat.contains((4, -3)) and not lat.contains((1, 0))
    assert lat.contains((0, 0))


def test_lattice_span_is_order_independent():
    import itertools
    vs = [(4, 2), (6, 0), (0, 10), (2, -4)]
    bases = {Lattice2.span(p).basis for p in itertools.permutations(vs)}
    assert len(bases) == 1


def test_abelianization_full():
    assert abelianization_full([X0, X1])
    assert not abelianization_full(FIXTURES["rem_k"])
    assert not abelianization_full([])


def test_tuples_of_x0():
    semi = build_semicore([X0, X1])
    ts = tuples_from_element(semi, X0)
    assert [(t.a, t.b) for t in ts] == [(0, -1), (1, 0)]
    # the first consecutive pair (00->0, 01->10) has u=0, v=empty
    assert ts[0].src == semi.distinguished or ts[0].src in semi.edges


def test_tuple_inverse_law_same_order():
    semi = build_semicore([X0, X1])
    for name in ("f", "rem_k"):
        for g in FIXTURES[name]:
            fwd = tuples_from_element(semi, g)
            bwd = tuples_from_element(semi, invert(g))
            assert bwd == [t.inverse() for t in fwd]


def test_tuple_addition_chains():
    t1 = Tuple(1, 0, "e1", "e2")
    t2 = Tuple(0, -1, "e2", "e1")
    assert t1 + t2 == Tuple(1, -1, "e1", "e1")
    with pytest.raises(ValueError):
        t1 + t1


def test_spherical_tuple_sums_stay_in_lattice():
    # sums of composable generator tuples that return to the base class
    # must land inside the computed lattice
    for name in ("f", "rem_k"):
        gens = FIXTURES[name]
        semi = build_semicore(gens)
        lat = slope_lattice(gens, semi)
        y = []
        for g in gens:
            y += tuples_from_element(semi, g)
            y += tuples_from_element(semi, invert(g))
        base = semi.distinguished
        for t1 in y:
            if t1.src == base == t1.dst:
                assert lat.contains((t1.a, t1.b))
            for t2 in y:
                if t1.dst == t2.src and t1.src == base and t2.dst == base:
                    s = t1 + t2
                    assert lat.contains((s.a, s.b))


def test_slope_lattice_values():
    assert slope_lattice([X0, X1]).full
    assert slope_lattice(FIXTURES["rem_k"]).full


@pytest.mark.parametrize("name", ["theorem_b", "ex1", "jones3", "x0",
                                  "identity"])
def test_slope_lattice_precondition(name):
    with pytest.raises(ValueError):
        slope_lattice(FIXTURES[name])


def test_slope_lattice_matches_brute_force_oracle():
    for name, gens in sorted(FIXTURES.items()):
        core = build_core(gens)
        from thompsonf import contains_derived_in_closure
        if not contains_derived_in_closure(core):
            continue
        assert slope_lattice(gens).basis == \
            brute_force_slope_lattice(gens).basis, name


def test_slope_lattice_monotone_under_adding_generators():
    for name in ("f", "rem_k"):
        gens = FIXTURES[name]
        small = slope_lattice(gens)
        for extra in (X0, multiply(X0, X1)):
            big = slope_lattice(gens + [extra])
            assert all(big.contains(v) for v in small.basis)


def test_verdicts():
    vf = generates_F([X0, X1])
    assert vf.equals_F and vf.contains_derived
    assert vf.closure_contains_derived and vf.abelianization_full
    assert vf.slope_lattice is not None and vf.slope_lattice.full

    v1 = generates_F(FIXTURES["ex1"])
    assert not v1.equals_F and not v1.contains_derived
    assert not v1.closure_contains_derived and v1.slope_lattice is None

    vk = generates_F(FIXTURES["rem_k"])
    assert vk.contains_derived and not vk.equals_F
    assert not vk.abelianization_full

    vb = generates_F(FIXTURES["theorem_b"])
    assert not vb.contains_derived and not vb.equals_F
    assert vb.slope_lattice is None

    assert contains_derived(FIXTURES["rem_k"])
    assert not contains_derived(FIXTURES["jones3"])


def test_verdict_consistency_with_acceptance():
    for name, gens in sorted(FIXTURES.items()):
        if generates_F(gens).equals_F:
            core = build_core(gens)
            assert accepts(core, X0) and accepts(core, X1)


def test_verdict_json_shape():
    d = generates_F([X0, X1]).to_json_dict()
    assert set(d) == {"closure_contains_derived", "abelianization_full",
                      "slope_lattice", "contains_derived", "equals_F"}
    assert d["slope_lattice"] == {"basis": [[1, 0], [0, 1]], "full": True}
    d2 = generates_F(FIXTURES["jones3"]).to_json_dict()
    assert d2["slope_lattice"] is None
