"""Two-term exponential sums, Dedekind sums and their hybrid power means over primes."""

from .characters import (
    DirichletCharacter,
    LambdaValue,
    NoSuchCharacter,
    character_value,
    gauss_sum,
    l_fourth_moment,
    l_one_sq_pi_normalized,
    select_characters,
)
from .core_arith import (
    ExactRational,
    PrimeModulus,
    is_prime,
    legendre_symbol,
    mod_inverse,
    prime_modulus,
    primes_in_range,
    primitive_root,
    sawtooth,
)
from .hybrid_means import (
    HybridParams,
    ResidualRecord,
    hybrid_power_mean,
    prime_scan,
    squared_mean_wangpan,
    theorem_residual_report,
)
from .moment_engine import (
    MomentReport,
    PairCountGrid,
    Verdict,
    character_quadruple_sum,
    closed_form_42,
    exact_fourth_moment,
    fourth_moment_51_report,
    legendre_quadruple_sum,
    wnstm_counts,
)
from .special_sums import (
    ExpSumParams,
    alpha_constant,
    dedekind_from_l_functions,
    dedekind_sum,
    two_term_exponential_sum,
)

__version__ = "0.1.0"
