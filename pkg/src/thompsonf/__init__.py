"""Exact computations with finitely generated subgroups of Thompson's
group F: branch-pair element arithmetic, the Stallings 2-core, orbit and
generation verdicts, solvability, and generating sets of closures."""

from .elements import (Element, ParseError, parse_element, generator,
                       multiply, invert, power, normal_form, evaluate,
                       slope_at, abelianization, orbitals, components_at)
from .core import (CoreAutomaton, build_core, build_semicore, trace, accepts,
                   dyadic_orbit_count, same_dyadic_orbit, gamma_graph,
                   contains_derived_in_closure, transitive_on_period_orbit,
                   minimal_tree, core_from_tree)
from .decision import (Lattice2, abelianization_full, slope_lattice,
                       contains_derived, generates_F, Verdict)
from .solvability import periodic_edges, optimal_trail, p_graph, solvability
from .closure import (ForestDiagram, Rule, RewriteSystem, presentation,
                      complete, normalize, closure_generators,
                      prune_generators, witness_pair, is_core_automaton)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
