"""Exact counts of long-cycle factorizations and the cactus-tree bijection."""

from .bijection import CactusTree, MalformedTree, avector_of, enumerate_cactus_trees, forward, inverse, validate_tree
from .budget import BudgetExceeded
from .cactus import Cactus, PartitionedCactus, edge_labels
from .formula import (AVector, cyclic_gap, delta, delta_matrix, determinant, enumerate_avectors, k_from_formula,
                      multinomial, partitioned_count_formula, series_coefficient, stirling1_signed, stirling2,
                      tree_count)
from .jackson import check_equivalence, jackson_coefficient, jackson_coefficient_multinomial, jackson_polynomial
from .oracle import (count_by_p, count_by_type, enumerate_factorizations, enumerate_partitioned_cacti,
                     partitioned_count_oracle)
from .perm import (Permutation, SetPartition, compose, cycle_type, cycles, is_stable, long_cycle, num_cycles)
from .polynomial import SparsePolynomial
from .symfunc import monomial_sym, powersum_sym, theorem2_check
from .tables import CountTable

__version__ = "0.1.0"
