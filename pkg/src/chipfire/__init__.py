"""Exact reachability, counting and quasipolynomial laws for chip-firing games."""

from .chip import (IllegalMoveError, apply_firing_vector, can_fire, fire, parse_configuration,
                   point_configuration, reduce_firing_vector)
from .enumeration import (SweepRecord, all_configurations, count_debt_reachable,
                          count_reachable, debt_reachable_configurations,
                          simplex_lattice_count, sweep)
from .graph import (Graph, GraphError, graph_from_spec, laplacian, make_complete, make_cycle,
                    make_path, parse_graph, reduced_laplacian, spanning_tree_count)
from .linalg import (SingularMatrixError, SmithDecomposition, adjugate, exact_determinant,
                     smith_normal_form, solve_integer)
from .quasipoly import (InsufficientSamplesError, Quasipolynomial, detect_quasipolynomial,
                        evaluate, fit_graded, fit_quasipolynomial, leading_coefficient_check)
from .reach import (BlockPartition, MostFiredResult, ResourceLimitError, block_partition,
                    debt_reachability_vector, is_reachable, is_reachable_bfs, most_fired,
                    residue_label)

__version__ = "0.1.0"
