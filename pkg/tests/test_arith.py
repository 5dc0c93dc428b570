import random
from math import gcd, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primover.arith import (
    DETERMINISTIC_PRIMALITY_BOUND,
    Factorization,
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
    smallest_factor_table,
    factor_with_table,
)
from primover.errors import (
    DomainError,
    IncompleteFactorizationError,
    TooManyDivisorsError,
)
from oracles import naive_is_prime, naive_order, naive_phi, naive_divisors


class TestModPow:
    def test_zero_exponent(self):
        assert mod_pow(2, 0, 7) == 1

    def test_fermat_little(self):
        assert mod_pow(2, 10, 11) == 1

    def test_classical_641_facts(self):
        # 641 divides 2^32 + 1, so 2^32 is -1 and 2^64 is 1 mod 641;
        # towers of 2 beyond that collapse to 1 since 64 divides them
        assert mod_pow(2, 32, 641) == 640
        assert mod_pow(2, 64, 641) == 1
        assert mod_pow(2, 2**31, 641) == 1
        assert mod_pow(2, 2**32, 641) == 1

    def test_small_modulus_rejected(self):
        with pytest.raises(DomainError):
            mod_pow(2, 3, 1)
        with pytest.raises(DomainError):
            mod_pow(2, -1, 7)

    @given(
        st.integers(min_value=0, max_value=10**6),
        st.integers(min_value=0, max_value=500),
        st.integers(min_value=2, max_value=10**6),
    )
    def test_matches_builtin(self, base, exponent, modulus):
        assert mod_pow(base, exponent, modulus) == pow(base, exponent, modulus)


class TestPrimality:
    def test_known_values(self):
        assert is_prime(65537)
        assert not is_prime(4294967297)
        assert is_prime(122921)

    def test_exhaustive_small(self):
        for n in range(-1, 3000):
            assert is_prime(n) == naive_is_prime(n), n

    def test_deterministic_below_bound(self):
        for n in (2, 97, 2047, 122921, 2**61 - 1):
            result = check_prime(n)
            assert not result.probabilistic

    def test_probabilistic_flag_above_bound(self):
        m89 = 2**89 - 1  # Mersenne prime, above the proven witness range
        assert m89 > DETERMINISTIC_PRIMALITY_BOUND
        result = check_prime(m89)
        assert result.value and result.probabilistic
        assert check_prime(m89) == result  # repeatable

    def test_composite_above_bound_is_exact(self):
        square = (2**61 - 1) ** 2
        result = check_prime(square)
        assert not result.value and not result.probabilistic


class TestFactorization:
    def test_examples(self):
        assert factorize(2047).factors == ((23, 1), (89, 1))
        assert factorize(2**35 - 1).factors == (
            (31, 1),
            (71, 1),
            (127, 1),
            (122921, 1),
        )
        assert factorize(4294967297).factors == ((641, 1), (6700417, 1))

    def test_small_and_powers(self):
        assert factorize(2).factors == ((2, 1),)
        assert factorize(1024).factors == ((2, 10),)
        assert factorize(600).factors == ((2, 3), (3, 1), (5, 2))

    def test_square_of_large_prime(self):
        p = 1000003
        assert factorize(p * p).factors == ((p, 2),)

    def test_random_recompose_and_primality(self):
        rng = random.Random(20250821)
        for _ in range(10_000):
            n = rng.randrange(2, 10**12)
            f = factorize(n)
            assert prod(p**e for p, e in f.factors) == n
            assert all(is_prime(p) for p, _ in f.factors)

    def test_budget_exhaustion_carries_partial(self):
        hard = 7 * 1000003 * 1000033
        with pytest.raises(IncompleteFactorizationError) as info:
            factorize(hard, rho_budget=10)
        err = info.value
        assert err.subject == hard
        assert err.partial == {7: 1}
        assert err.remainder == 1000003 * 1000033
        assert err.partial != {}  # budget failures are not smaller factorizations

    def test_invalid_subject(self):
        for bad in (1, 0, -6):
            with pytest.raises(DomainError):
                factorize(bad)

    def test_type_invariants(self):
        with pytest.raises(DomainError):
            Factorization(12, ((3, 1), (2, 2)))  # out of order
        with pytest.raises(DomainError):
            Factorization(12, ((2, 2), (3, 0)))  # zero exponent
        with pytest.raises(DomainError):
            Factorization(13, ((2, 2), (3, 1)))  # wrong product

    def test_unit_factorization(self):
        one = Factorization(1, ())
        assert euler_phi(one) == 1
        assert moebius(one) == 1

    def test_divisors(self):
        f = factorize(600)
        assert f.divisor_count() == 24
        assert f.divisors() == naive_divisors(600)
        with pytest.raises(TooManyDivisorsError):
            f.divisors(cap=10)

    def test_str_rendering(self):
        assert str(factorize(600)) == "2^3 * 3 * 5^2"

    def test_factor_with_table(self):
        table = smallest_factor_table(5000)
        for n in range(2, 5000):
            assert factor_with_table(n, table) == factorize(n)


class TestTotients:
    def test_phi_examples(self):
        assert euler_phi(factorize(70)) == 24
        assert euler_phi(factorize(25)) == 20

    def test_phi_brute_force(self):
        for n in range(1, 2001):
            f = Factorization(1, ()) if n == 1 else factorize(n)
            assert euler_phi(f) == naive_phi(n), n

    def test_moebius_examples(self):
        assert moebius(factorize(70)) == -1
        assert moebius(factorize(9)) == 0
        assert moebius(factorize(30030)) == 1  # six distinct primes
        assert moebius(factorize(2310)) == -1  # five
        assert moebius(factorize(6)) == 1

    def test_carmichael_divides_phi(self):
        for n in range(3, 500):
            f = factorize(n)
            laminv = euler_phi(f) % carmichael(f)
            assert laminv == 0, n

    def test_carmichael_power_of_two(self):
        assert carmichael(factorize(2)) == 1
        assert carmichael(factorize(4)) == 2
        assert carmichael(factorize(8)) == 2
        assert carmichael(factorize(16)) == 4


class TestMultOrder:
    def test_examples(self):
        assert mult_order(2, 7).order == 3
        assert mult_order(2, 9).order == 6
        assert mult_order(2, 641).order == 64
        assert mult_order(2, 6700417).order == 64

    def test_against_naive_search(self):
        # full sweep of the documented invariant range
        for a in (2, 3, 5, 7):
            for n in range(2, 10_001):
                if gcd(a, n) != 1:
                    continue
                assert mult_order(a, n).order == naive_order(a, n), (a, n)

    def test_order_divides_phi(self):
        for a in (2, 3, 5):
            for n in range(3, 2000):
                if gcd(a, n) != 1:
                    continue
                f = factorize(n)
                assert euler_phi(f) % mult_order(a, n).order == 0

    def test_order_is_minimal(self):
        result = mult_order(3, 1000)
        assert pow(3, result.order, 1000) == 1
        for d in naive_divisors(result.order)[:-1]:
            assert pow(3, d, 1000) != 1

    def test_shared_factor_rejected(self):
        with pytest.raises(DomainError):
            mult_order(2, 12)
        with pytest.raises(DomainError):
            mult_order(1, 7)

    def test_order_tower_wieferich(self):
        # the two known Wieferich primes keep their order at the square
        assert order_tower(2, 1093, 2) == (364, 364)
        assert order_tower(2, 3511, 2) == (1755, 1755)
        # a garden-variety prime picks up a factor p at the square
        assert order_tower(2, 5, 3) == (4, 20, 100)

    def test_prime_power_orders_listing(self):
        f = factorize(1194649)  # 1093^2
        assert prime_power_orders(2, f) == ((1093, 1, 364), (1093, 2, 364))

    def test_reuses_supplied_factorization(self):
        f = factorize(2047)
        assert mult_order(2, 2047, factorization=f).order == 11


class TestPrimesUpto:
    def test_counts(self):
        assert len(primes_upto(10)) == 4
        assert len(primes_upto(3000)) == 430
        assert len(primes_upto(10**6)) == 78498

    def test_empty(self):
        assert primes_upto(1) == []


@settings(max_examples=200)
@given(st.integers(min_value=2, max_value=10**9))
def test_factorize_roundtrip_property(n):
    f = factorize(n)
    assert prod(p**e for p, e in f.factors) == n
    assert all(e >= 1 for _, e in f.factors)
    assert list(f.primes) == sorted(set(f.primes))
