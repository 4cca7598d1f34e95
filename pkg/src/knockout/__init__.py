"""Seeding single-elimination brackets on tournament graphs.

Build a :class:`Tournament`, ask who can win (:func:`se_winners`), get a
winning seeding from a structural certificate (:func:`certify`) or the exact
subset DP (:func:`fix_for`), compare against classical tournament solutions,
and sample random tournaments from seeded models.
"""

from .constructors import (
    InvariantError,
    KingPartition,
    PreconditionError,
    ThreeKingDecomposition,
    certify,
    cr_two_half_search,
    cr_two_half_seeding,
    find_king_partition,
    find_threeking_decomposition,
    king_seeding,
    threeking_seeding,
)
from .core import (
    MatchLog,
    Seeding,
    Tournament,
    TournamentError,
    all_tournaments,
    champion,
    covers,
    dominates,
    is_3king,
    is_king,
    is_superking,
    make_tournament,
    play_bracket,
    random_tournament,
    restrict,
    superkings,
    transitive,
)
from .exact import SizeCapError, WinnerTable, brute_force_winners, fix_for, se_winners, winner_table
from .experiments import ExperimentReport, run_experiment
from .io import ParseError, format_tournament, parse_tournament, read_tournament, write_tournament
from .models import (
    ModelSpec,
    build_bipartisan_example,
    build_itmatrix_example,
    build_uncovered_ratio_example,
    gen_cr,
    gen_flexible,
    generate,
)
from .solutions import (
    bipartisan_set,
    copeland_set,
    iterated_matrix_set,
    kpath_scores,
    markov_set,
    maximal_lottery,
    slater_set,
    uncovered_set,
)

__version__ = "0.1.0"
