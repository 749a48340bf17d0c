"""Principal Möbius function on the permutation pattern poset, 2413-balloons,
and machinery to check results about them."""

from .balloon import (
    GeneralBalloonSpec,
    ReductionRecord,
    balloon_2413,
    balloon_general,
    core,
    is_2413_balloon,
    pi_sequence,
    predicted_mu_balloon,
    proper_reductions,
    reduction_mu_table,
    reductions,
    unballoon_2413,
)
from .chains import Chain, enumerate_chains, hall_sum, mu_via_chains, sample_chains
from .mobius import Downset, MuResult, downset, mu, mu_max_sweep, mu_principal
from .perm import Permutation, contains, format_perm, parse
from .store import MuCache

__all__ = [
    "Chain", "Downset", "GeneralBalloonSpec", "MuCache", "MuResult", "Permutation",
    "ReductionRecord", "balloon_2413", "balloon_general", "contains", "core", "downset",
    "enumerate_chains", "format_perm", "hall_sum", "is_2413_balloon", "mu", "mu_max_sweep",
    "mu_principal", "mu_via_chains", "parse", "pi_sequence", "predicted_mu_balloon",
    "proper_reductions", "reduction_mu_table", "reductions", "sample_chains", "unballoon_2413",
]

__version__ = "0.1.0"
