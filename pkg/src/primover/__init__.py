"""Primover arithmetic: overpseudoprimes, cyclotomic cosets, and primover
divisors of a^n - 1."""

from primover.arith import (
    DETERMINISTIC_PRIMALITY_BOUND,
    Factorization,
    FactorizationCache,
    OrderResult,
    PrimalityResult,
    carmichael,
    check_prime,
    euler_phi,
    factorize,
    is_prime,
    mod_pow,
    moebius,
    mult_order,
    order_tower,
    prime_power_orders,
    primes_upto,
    set_cache,
)
from primover.classification import (
    Classification,
    Evidence,
    ScanReport,
    Status,
    classify,
    is_strong_pseudoprime,
    is_superpseudoprime,
    overpseudoprime_by_coset_count,
    overpseudoprime_by_order_criterion,
    overpseudoprimes_upto,
    scan,
    strong_pseudoprime_ordinal,
)
from primover.config import Config, load_config
from primover.construct import (
    CofactorBoundReport,
    CofactorProduct,
    ConstructionVerdict,
    ExponentIdentity,
    cofactor_bound_report,
    cofactor_terms,
    evil_odious_vectors,
    exponent_identity,
    generalized_fermat,
    primitive_cofactor,
    primitive_cofactor_value,
    prime_power_cofactor,
    two_prime_cofactor,
    two_prime_power_cofactor,
    verify_generalized_fermat,
)
from primover.cosets import CosetDecomposition, coset_count, decompose
from primover.errors import (
    DomainError,
    EnumerationCeilingError,
    IncompleteFactorizationError,
    ResourceError,
    TooManyDivisorsError,
)

__version__ = "0.1.0"
