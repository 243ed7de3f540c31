"""Counting order-k windows of circular binary sequences, and the linear
relations those counts always satisfy."""

from .bitseq import (
    CircularBitSeq,
    complement,
    parse_sequence,
    random_sequence,
    reverse,
    rotate,
    window_at,
)
from .counting import (
    BoundaryContext,
    CountVector,
    WindowDelta,
    append_bit,
    context_of,
    count_windows,
    count_windows_rolling,
    delta_from_context,
    incremental_recount,
)
from .discovery import (
    InvariantBasis,
    LinearFunctional,
    ReversalReport,
    constructive_basis,
    empirical_basis,
    is_vanishing,
    reversal_pair_report,
)
from .errors import BudgetExceeded, InvariantViolation, SequenceError
from .tablegen import (
    gen_adjoined_table,
    gen_basis_table,
    gen_delta_table,
    gen_lost_table,
    validate_tables,
)
from .theorem import (
    PairDifferences,
    SweepReport,
    TheoremReport,
    exhaustive_verify,
    pair_differences,
    verify_delta,
    verify_theorem1,
)

__version__ = "0.1.0"
