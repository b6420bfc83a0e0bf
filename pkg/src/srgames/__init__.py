"""Simple recursive games and widest-path interdiction with few comparisons."""
from .core import Owner, Sign, Solution, Srg, coarsen, merge_into_terminal, merge_terminals, normalize, split_by_value, validate
from .errors import SrgError
from .interdiction import (
    MonotoneBucketQueue,
    reduce_srg_to_interdiction,
    solve_strong_capacities,
    solve_strong_sorted_capacities,
    solve_weak_logstar_capacities,
    solve_weak_loglog_capacities,
)
from .ledger import ComparisonLedger
from .network import Network, WidthSolution, validate_network
from .orderkit import partial_perfect_quicksort, select_median
from .recovery import recover_strong, recover_weak
from .retrograde import solve_signs, solve_strong_sorted, sorting_method
from .weak import solve_weak, solve_weak_logstar, solve_weak_loglog, solve_weak_paterson

__version__ = "0.1.0"
