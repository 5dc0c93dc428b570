"""Integer arithmetic kernel: primality, factorization, totients, orders.

Everything operates on Python's arbitrary-precision ints and is a pure
function of its inputs. The one piece of shared state is the optional
factorization cache, which serializes its writes behind a lock.
"""
from __future__ import annotations

import random
import threading
import warnings
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, lcm, prod

from primover.errors import (
    DomainError,
    IncompleteFactorizationError,
    TooManyDivisorsError,
)

# The first twelve prime bases are a proven-deterministic witness set below
# this bound (Sorenson & Webster, https://arxiv.org/abs/1509.00864).
DETERMINISTIC_PRIMALITY_BOUND = 3_317_044_064_679_887_385_961_981
_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_EXTRA_ROUNDS = 48

DEFAULT_TRIAL_BOUND = 10_000
DEFAULT_RHO_BUDGET = 5_000_000


def primes_upto(limit: int) -> list[int]:
    """Primes <= limit by a byte sieve."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i, b in enumerate(sieve) if b]


def smallest_factor_table(limit: int) -> list[int]:
    """table[n] = smallest prime factor of n, for 2 <= n <= limit."""
    table = list(range(limit + 1))
    for p in range(2, isqrt(limit) + 1):
        if table[p] == p:
            for m in range(p * p, limit + 1, p):
                if table[m] == m:
                    table[m] = p
    return table


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """base**exponent mod modulus for exponent >= 0, modulus >= 2."""
    if modulus < 2:
        raise DomainError("modulus must be at least 2")
    if exponent < 0:
        raise DomainError("exponent must be nonnegative")
    return pow(base, exponent, modulus)


@dataclass(frozen=True)
class PrimalityResult:
    value: bool
    probabilistic: bool


_SMALL_PRIMES = tuple(primes_upto(1000))


def _strong_probable(n: int, a: int) -> bool:
    # n odd, n > 2; True means n passes the strong test to base a
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def check_prime(n: int) -> PrimalityResult:
    """Primality verdict plus a flag for whether it relied on unproven witnesses.

    Deterministic (flag False) for every n below DETERMINISTIC_PRIMALITY_BOUND.
    Above it, a "prime" answer comes from fixed witnesses plus extra rounds
    drawn from a per-n seeded generator, so repeated calls agree; composite
    answers are always exact.
    """
    if n < 2:
        return PrimalityResult(False, False)
    for p in _SMALL_PRIMES:
        if p * p > n:
            return PrimalityResult(True, False)
        if n % p == 0:
            return PrimalityResult(n == p, False)
    if not all(_strong_probable(n, a) for a in _WITNESSES):
        return PrimalityResult(False, False)
    if n < DETERMINISTIC_PRIMALITY_BOUND:
        return PrimalityResult(True, False)
    rng = random.Random(n)
    for _ in range(_EXTRA_ROUNDS):
        if not _strong_probable(n, rng.randrange(2, n - 1)):
            return PrimalityResult(False, False)
    return PrimalityResult(True, True)


def is_prime(n: int) -> bool:
    return check_prime(n).value


@dataclass(frozen=True)
class Factorization:
    """A complete factorization: (prime, exponent) pairs in increasing order.

    Construction checks shape and recomposition, not primality of the parts;
    factorize() only ever builds these from proven-or-tested primes, and the
    cache re-tests entries read from disk.
    """

    subject: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        value = 1
        prev = 1
        for p, e in self.factors:
            if e < 1:
                raise DomainError("exponents must be positive")
            if p <= prev:
                raise DomainError("primes must be distinct and increasing")
            prev = p
            value *= p**e
        if value != self.subject:
            raise DomainError(f"factors do not recompose to {self.subject}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def divisor_count(self) -> int:
        return prod(e + 1 for _, e in self.factors)

    def divisors(self, cap: int | None = None) -> list[int]:
        """All positive divisors, ascending. Raises if more than cap."""
        count = self.divisor_count()
        if cap is not None and count > cap:
            raise TooManyDivisorsError(
                f"{self.subject} has {count} divisors, above the cap {cap}"
            )
        divs = [1]
        for p, e in self.factors:
            powers = [p**k for k in range(1, e + 1)]
            divs += [d * pk for d in divs for pk in powers]
        return sorted(divs)

    def __str__(self) -> str:
        if not self.factors:
            return str(self.subject)
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


@lru_cache(maxsize=8)
def _trial_primes(bound: int) -> tuple[int, ...]:
    return tuple(primes_upto(bound))


class _BudgetExhausted(Exception):
    pass


def _brent_rho(n: int, budget: list[int]) -> int:
    """A nontrivial factor of odd composite n, Brent's cycle variant.

    The polynomial shift walks a fixed schedule so results are reproducible.
    budget is a single-element mutable cell counting iterations across the
    whole factorization.
    """
    c = 1
    while True:
        y, r, q = 2, 1, 1
        g = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                step = min(128, r - k)
                for _ in range(step):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                budget[0] -= step
                if budget[0] <= 0:
                    raise _BudgetExhausted
                g = gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
        c += 1  # degenerate cycle, retry with the next shift


def _split(m: int, counts: dict[int, int], budget: list[int]) -> None:
    if m == 1:
        return
    if check_prime(m).value:
        counts[m] = counts.get(m, 0) + 1
        return
    root = isqrt(m)
    if root * root == m:  # rho converges slowly on squares, peel them directly
        _split(root, counts, budget)
        _split(root, counts, budget)
        return
    d = _brent_rho(m, budget)
    _split(d, counts, budget)
    _split(m // d, counts, budget)


def factorize(
    n: int,
    *,
    trial_bound: int | None = None,
    rho_budget: int | None = None,
    cache: "FactorizationCache | None" = None,
) -> Factorization:
    """Fully factor n >= 2: trial division, then Brent rho on what remains.

    Raises IncompleteFactorizationError when the rho iteration budget runs
    out, carrying the partial result.
    """
    if n < 2:
        raise DomainError("factorization needs n >= 2")
    if cache is None:
        cache = _active_cache
    if cache is not None:
        hit = cache.get(n)
        if hit is not None:
            return hit
    trial_bound = DEFAULT_TRIAL_BOUND if trial_bound is None else trial_bound
    rho_budget = DEFAULT_RHO_BUDGET if rho_budget is None else rho_budget

    counts: dict[int, int] = {}
    m = n
    while m % 2 == 0:
        counts[2] = counts.get(2, 0) + 1
        m //= 2
    for p in _trial_primes(max(trial_bound, 3)):
        if p == 2:
            continue
        if p * p > m:
            break
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    if m > 1:
        try:
            _split(m, counts, [rho_budget])
        except _BudgetExhausted:
            done = prod(p**e for p, e in counts.items())
            raise IncompleteFactorizationError(n, counts, n // done) from None
    result = Factorization(n, tuple(sorted(counts.items())))
    if cache is not None:
        cache.put(result)
    return result


def factor_with_table(n: int, table: list[int]) -> Factorization:
    """Factor n using a precomputed smallest-factor table (n <= len(table)-1)."""
    counts: dict[int, int] = {}
    m = n
    while m > 1:
        p = table[m]
        counts[p] = counts.get(p, 0) + 1
        m //= p
    return Factorization(n, tuple(sorted(counts.items())))


def euler_phi(f: Factorization) -> int:
    return prod(p ** (e - 1) * (p - 1) for p, e in f.factors)


def moebius(f: Factorization) -> int:
    if any(e > 1 for _, e in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def carmichael(f: Factorization) -> int:
    """Exponent of the multiplicative group mod f.subject."""
    out = 1
    for p, e in f.factors:
        if p == 2:
            block = 1 if e == 1 else 2 if e == 2 else 2 ** (e - 2)
        else:
            block = p ** (e - 1) * (p - 1)
        out = lcm(out, block)
    return out


@lru_cache(maxsize=None)
def _order_mod_prime(a: int, p: int) -> int:
    if p == 2:
        return 1
    h = p - 1
    for q in factorize(p - 1).primes:
        while h % q == 0 and pow(a, h // q, p) == 1:
            h //= q
    return h


@lru_cache(maxsize=None)
def order_tower(a: int, p: int, l: int) -> tuple[int, ...]:
    """Orders of a modulo p, p^2, ..., p^l.

    Each lift either keeps the order or multiplies it by p, decided by one
    modular power. Requires p prime, p not dividing a.
    """
    orders = [_order_mod_prime(a, p)]
    pk = p
    for _ in range(l - 1):
        pk *= p
        h = orders[-1]
        if pow(a, h, pk) != 1:
            h *= p
        orders.append(h)
    return tuple(orders)


@dataclass(frozen=True)
class OrderResult:
    base: int
    modulus: int
    order: int


def mult_order(
    a: int, n: int, *, factorization: Factorization | None = None
) -> OrderResult:
    """Multiplicative order of a modulo n (least h > 0 with a^h = 1 mod n)."""
    if a < 2:
        raise DomainError("base must be at least 2")
    if n < 2:
        raise DomainError("modulus must be at least 2")
    if gcd(a, n) != 1:
        raise DomainError(f"order undefined: gcd({a}, modulus) > 1")
    f = factorization if factorization is not None else factorize(n)
    order = 1
    for p, e in f.factors:
        order = lcm(order, order_tower(a, p, e)[-1])
    return OrderResult(a, n, order)


def prime_power_orders(
    a: int, f: Factorization
) -> tuple[tuple[int, int, int], ...]:
    """(p, j, order of a mod p^j) for every prime power p^j dividing f.subject."""
    out = []
    for p, e in f.factors:
        tower = order_tower(a, p, e)
        out.extend((p, j, tower[j - 1]) for j in range(1, e + 1))
    return tuple(out)


class FactorizationCache:
    """Line-oriented factor table: each record is "n p1^e1 p2^e2 ...".

    Records loaded from disk are re-validated (recomposition and primality);
    malformed or wrong lines are skipped with a warning. put() appends under
    a lock so concurrent writers interleave whole lines.
    """

    def __init__(self, path: str | None = None):
        self._table: dict[int, tuple[tuple[int, int], ...]] = {}
        self._lock = threading.Lock()
        self._path = path
        if path is not None:
            self._load(path)

    def _load(self, path: str) -> None:
        try:
            with open(path, encoding="ascii") as fh:
                lines = fh.readlines()
        except FileNotFoundError:
            return
        for lineno, line in enumerate(lines, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parsed = self._parse(line)
            if parsed is None:
                warnings.warn(f"{path}:{lineno}: skipping bad cache record")
                continue
            n, factors = parsed
            self._table[n] = factors

    @staticmethod
    def _parse(line: str) -> tuple[int, tuple[tuple[int, int], ...]] | None:
        fields = line.split()
        if len(fields) < 2:
            return None
        try:
            n = int(fields[0])
            pairs = []
            for field in fields[1:]:
                p, _, e = field.partition("^")
                pairs.append((int(p), int(e) if e else 1))
            f = Factorization(n, tuple(sorted(pairs)))
        except (ValueError, DomainError):
            return None
        if not all(check_prime(p).value for p in f.primes):
            return None
        return n, f.factors

    def get(self, n: int) -> Factorization | None:
        factors = self._table.get(n)
        if factors is None:
            return None
        return Factorization(n, factors)

    def put(self, f: Factorization) -> None:
        with self._lock:
            if f.subject in self._table:
                return
            self._table[f.subject] = f.factors
            if self._path is not None:
                record = " ".join(
                    [str(f.subject)]
                    + [f"{p}^{e}" if e > 1 else str(p) for p, e in f.factors]
                )
                with open(self._path, "a", encoding="ascii") as fh:
                    fh.write(record + "\n")

    def __len__(self) -> int:
        return len(self._table)


_active_cache: FactorizationCache | None = None


def set_cache(cache: FactorizationCache | None) -> None:
    """Install (or clear) the process-wide factorization cache."""
    global _active_cache
    _active_cache = cache


def active_cache() -> FactorizationCache | None:
    return _active_cache
