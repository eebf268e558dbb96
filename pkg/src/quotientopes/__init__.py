"""Exact polytopal realizations of lattice quotients of the weak order on permutations."""
from .braid import chamber_rays, check_linear_dependence, ray_in_shard, ray_vector, separating_wall
from .congruence import (
    ClassPartition,
    Congruence,
    QuotientPoset,
    anti_sylvester_ideal,
    arc_diagram_of_class,
    classes_from_ideal,
    cube_ideal,
    full_ideal,
    is_lattice_congruence_oracle,
    preset,
    quotient_covers,
    sylvester_classes_rewriting,
    sylvester_ideal,
)
from .permutations import Permutation, covers, inversion_set, lattice_meet_join_oracle, weak_leq
from .quotientope import (
    HeightFunction,
    Quotientope,
    WeightFunction,
    build_quotientope,
    check_wall_inequality,
    class_vertex,
    contribution,
    default_weights,
    heights,
    oriented_graph,
    verify_normal_fan,
)
from .shards import (
    Shard,
    ShardIdeal,
    all_shards,
    check_forcing_dominant,
    enumerate_upper_ideals,
    forces,
    format_shard,
    is_upper_ideal,
    parse_shard,
    upward_closure,
)

__version__ = "0.1.0"
