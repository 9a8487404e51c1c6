"""Directed mixed graphs under mu-separation: weak equivalence, greatest
elements, latent projection and related tooling."""
from .graph import (
    BIDIRECTED, DIRECTED, Dmg, Edge, GuardError, InputError, Step, Walk,
    ancestors, induced_subgraph, is_mu_connecting, is_subgraph, validate_walk,
)
from .separation import (
    bounded_collider_connected, connection_rows, mu_connected, mu_separated,
    mu_separated_sets, route_oracle_connected, separation_rows, witness_walk,
)
from .independence import (
    ConditioningFamily, Signature, dtr, first_difference, general_weak_equivalent,
    markov_equivalent, signature, trek_equivalent, weak_equivalent,
)
from .potential import SeparationMatrix, c_potential_parent, c_potential_sibling
from .eqclass import (
    Dmeg, class_members, dmeg, greatest_element, greatest_of_set, hierarchy,
    is_maximal, is_minimal, least_element, maximal_elements,
)
from .projection import connectivity, inseparable, is_m_sparse, latent_project, max_connectivity
from .learning import CachingOracle, IndependenceOracle, graph_oracle, learn_maximal
from .reduction import (
    Formula3DNF, ReductionInstance, build_dense, build_sparse, is_tautology_bruteforce,
    parse_3dnf, witness_conditioning_set,
)

__version__ = "0.1.0"
