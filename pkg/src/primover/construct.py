"""Constructing primover divisors of a^n - 1.

Each construction is an inclusion-exclusion quotient of numbers a^d - 1
over divisors d of n. The exponent pattern comes from binary vectors split
by popcount parity: even-parity (evil) vectors index numerator terms,
odd-parity (odious) vectors denominator terms. The resulting value divides
a^n - 1, and it is primover exactly when it is coprime to the complementary
cofactor (a^n - 1) / value, except at the lone degenerate point where the
value collapses to a bare intrinsic prime (base 2, exponent 6, value 3).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, log
from typing import NamedTuple

from primover.arith import Factorization, euler_phi, factorize, is_prime, mult_order
from primover.classification import Classification, Status, classify
from primover.errors import DomainError, ResourceError

MAX_DISTINCT_PRIMES = 16


@dataclass(frozen=True)
class CofactorProduct:
    """A signed product prod (base^e - 1)^sign with its evaluated value.

    terms holds (exponent, sign) pairs, sign +1 for numerator and -1 for
    denominator, numerator first. Invariants checked at construction time:
    every exponent divides modulus_exponent, the signed exponent sum equals
    phi(modulus_exponent), and value divides base^modulus_exponent - 1.
    """

    base: int
    modulus_exponent: int
    terms: tuple[tuple[int, int], ...]
    value: int

    def __post_init__(self) -> None:
        n = self.modulus_exponent
        signed = 0
        for e, sign in self.terms:
            if sign not in (1, -1) or e < 1 or n % e:
                raise DomainError(f"bad term ({e}, {sign}) for exponent {n}")
            signed += sign * e
        if signed != euler_phi(factorize(n)):
            raise ArithmeticError(
                f"signed exponent sum {signed} misses phi({n})"
            )
        if (self.base**n - 1) % self.value:
            raise ArithmeticError(f"value does not divide base^{n} - 1")

    def complement(self) -> int:
        """(base^modulus_exponent - 1) // value."""
        return (self.base**self.modulus_exponent - 1) // self.value


@dataclass(frozen=True)
class ConstructionVerdict:
    product: CofactorProduct
    coprimality_holds: bool
    classification: Classification

    @property
    def primover(self) -> bool:
        return self.classification.primover


def evil_odious_vectors(k: int) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """All length-k binary vectors, split by parity of their digit sum.

    Returns (even_parity, odd_parity); each half has 2^(k-1) vectors and the
    all-zeros vector sits in the even half.
    """
    if k < 1:
        raise DomainError("vector length must be positive")
    evil, odious = [], []
    for m in range(1 << k):
        vec = tuple((m >> (k - 1 - j)) & 1 for j in range(k))
        if bin(m).count("1") % 2 == 0:
            evil.append(vec)
        else:
            odious.append(vec)
    return tuple(evil), tuple(odious)


def cofactor_terms(f: Factorization) -> tuple[tuple[int, int], ...]:
    """Exponent/sign pairs for the primitive cofactor of base^f.subject - 1.

    For n = p1^l1 ... pk^lk each vector (i1, ..., ik) contributes the
    exponent p1^(l1-i1) ... pk^(lk-ik); even-parity vectors go upstairs,
    odd-parity ones downstairs.
    """
    primes = f.primes
    exps = [e for _, e in f.factors]
    evil, odious = evil_odious_vectors(len(primes))
    terms = []
    for vectors, sign in ((evil, 1), (odious, -1)):
        for vec in vectors:
            e = 1
            for p, l, i in zip(primes, exps, vec):
                e *= p ** (l - i)
            terms.append((e, sign))
    terms.sort(key=lambda t: (-t[1], t[0]))
    return tuple(terms)


def _evaluate(base: int, n: int, terms: tuple[tuple[int, int], ...]) -> CofactorProduct:
    num = den = 1
    for e, sign in terms:
        t = base**e - 1
        if sign == 1:
            num *= t
        else:
            den *= t
    value, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(f"denominator does not divide numerator at exponent {n}")
    return CofactorProduct(base, n, terms, value)


def _require_base(a: int) -> None:
    if a < 2:
        raise DomainError("base must be at least 2")


def _verdict(product: CofactorProduct, coprime_to: int) -> ConstructionVerdict:
    """Attach the coprimality flag and a full classification, cross-checked.

    Coprime values must classify as primover, and non-coprime composites must
    not; any other combination is a contradiction and raises.  One shape is
    genuinely possible and allowed through: a non-coprime *prime* value.  That
    happens when the cofactor degenerates to the bare intrinsic prime with no
    primitive part, e.g. the value 3 built from 2^6 - 1 (by Bang's theorem,
    the only such point for base 2).  The prime is primover on its own merits
    while still sharing a factor with the complement.
    """
    holds = gcd(product.value, coprime_to) == 1
    cls = classify(product.base, product.value)
    if holds != cls.primover:
        if not holds and cls.status is Status.PRIME:
            return ConstructionVerdict(product, holds, cls)
        raise ArithmeticError(
            f"coprimality and classification disagree for {product.value} "
            f"to base {product.base}"
        )
    return ConstructionVerdict(product, holds, cls)


def two_prime_cofactor(a: int, p: int, q: int) -> ConstructionVerdict:
    """(a - 1)(a^pq - 1) / ((a^p - 1)(a^q - 1)) for primes p < q.

    Primover exactly when coprime to (a^p - 1)(a^q - 1).
    """
    _require_base(a)
    if not (is_prime(p) and is_prime(q)):
        raise DomainError("p and q must be prime")
    if p >= q:
        raise DomainError("need p < q")
    product = _evaluate(a, p * q, ((1, 1), (p * q, 1), (p, -1), (q, -1)))
    return _verdict(product, (a**p - 1) * (a**q - 1))


def prime_power_cofactor(a: int, p: int, m: int) -> ConstructionVerdict:
    """(a^(p^m) - 1) / (a^(p^(m-1)) - 1) for prime p, m >= 2.

    Primover exactly when coprime to a^(p^(m-1)) - 1.
    """
    _require_base(a)
    if not is_prime(p):
        raise DomainError("p must be prime")
    if m < 2:
        raise DomainError("need m >= 2")
    product = _evaluate(a, p**m, ((p**m, 1), (p ** (m - 1), -1)))
    return _verdict(product, a ** (p ** (m - 1)) - 1)


def two_prime_power_cofactor(
    a: int, p: int, alpha: int, q: int, beta: int
) -> ConstructionVerdict:
    """Cofactor at exponent p^alpha * q^beta for primes p < q.

    The four evil/odious terms of the exponent pair; primover exactly when
    coprime to the complementary cofactor
    (a^(p^(alpha-1) q^beta) - 1)(a^(p^alpha q^(beta-1)) - 1) / (a^(p^(alpha-1) q^(beta-1)) - 1).
    """
    _require_base(a)
    if not (is_prime(p) and is_prime(q)):
        raise DomainError("p and q must be prime")
    if p >= q:
        raise DomainError("need p < q")
    if alpha < 1 or beta < 1:
        raise DomainError("need alpha, beta >= 1")
    low = p ** (alpha - 1) * q ** (beta - 1)
    product = _evaluate(
        a,
        p**alpha * q**beta,
        ((low, 1), (p**alpha * q**beta, 1), (low * p, -1), (low * q, -1)),
    )
    complement, rem = divmod(
        (a ** (low * q) - 1) * (a ** (low * p) - 1), a**low - 1
    )
    if rem:
        raise ArithmeticError("complement quotient is not exact")
    return _verdict(product, complement)


def primitive_cofactor_value(a: int, n: int) -> CofactorProduct:
    """The full evil/odious cofactor of a^n - 1 for composite n >= 4."""
    _require_base(a)
    if n < 4 or is_prime(n):
        raise DomainError("n must be composite (so n >= 4)")
    f = factorize(n)
    if len(f.factors) > MAX_DISTINCT_PRIMES:
        raise ResourceError(
            f"{n} has {len(f.factors)} distinct primes; "
            f"the term count 2^k is capped at k = {MAX_DISTINCT_PRIMES}"
        )
    return _evaluate(a, n, cofactor_terms(f))


def primitive_cofactor(a: int, n: int) -> ConstructionVerdict:
    """Evil/odious cofactor of a^n - 1 with its primover verdict."""
    product = primitive_cofactor_value(a, n)
    return _verdict(product, product.complement())


def generalized_fermat(a: int, n: int) -> int:
    """a^(2^(n-1)) + 1 for even a, n >= 1."""
    if a < 2 or a % 2:
        raise DomainError("base must be even and at least 2")
    if n < 1:
        raise DomainError("need n >= 1")
    return a ** (2 ** (n - 1)) + 1


def verify_generalized_fermat(a: int, n: int) -> ConstructionVerdict:
    """a^(2^(n-1)) + 1 as the cofactor (a^(2^n) - 1)/(a^(2^(n-1)) - 1).

    For even a this is always primover, and the base has order exactly 2^n
    modulo every prime power divisor; both facts are checked, and a failure
    raises rather than returning a verdict.
    """
    value = generalized_fermat(a, n)
    hi, lo = 2**n, 2 ** (n - 1)
    product = _evaluate(a, hi, ((hi, 1), (lo, -1)))
    if product.value != value:
        raise ArithmeticError("cofactor form disagrees with a^(2^(n-1)) + 1")
    verdict = _verdict(product, a**lo - 1)
    cls = verdict.classification
    if not cls.primover:
        raise ArithmeticError(f"{value} failed the primover guarantee")
    if cls.status == Status.PRIME:
        if mult_order(a, value).order != hi:
            raise ArithmeticError(f"prime {value} gives the base order != 2^{n}")
    elif any(h != hi for _, _, h in cls.evidence.orders or ()):
        raise ArithmeticError(f"a prime power divisor of {value} has order != 2^{n}")
    return verdict


class ExponentIdentity(NamedTuple):
    n: int
    signed_sum: int
    phi: int
    holds: bool


def exponent_identity(n: int) -> ExponentIdentity:
    """Signed exponent sum of the cofactor terms against phi(n).

    Defined for any n >= 2; for primes the single evil/odious pair gives
    n - 1 on the nose.
    """
    if n < 2:
        raise DomainError("need n >= 2")
    f = factorize(n)
    terms = cofactor_terms(f)
    signed = sum(sign * e for e, sign in terms)
    phi = euler_phi(f)
    return ExponentIdentity(n, signed, phi, signed == phi)


class CofactorBoundReport(NamedTuple):
    base: int
    n: int
    value: int
    implied_constant: float
    asymptotic_regime: bool


def cofactor_bound_report(a: int, n: int) -> CofactorBoundReport:
    """Size of the primitive cofactor against (a^n - 1)^(1 / ln ln n).

    implied_constant is ln(value) * ln(ln n) / ln(a^n - 1); the lower-bound
    reading only makes sense once ln ln n >= 1, flagged by
    asymptotic_regime (n >= 16).
    """
    product = primitive_cofactor_value(a, n)
    constant = log(product.value) * log(log(n)) / log(a**n - 1)
    return CofactorBoundReport(a, n, product.value, constant, n >= 16)
