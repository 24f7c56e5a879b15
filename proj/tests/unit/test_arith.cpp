#include <doctest.h>

#include <random>

#include "krchain/arith.hpp"
#include "krchain/error.hpp"
#include "oracles.hpp"

using namespace krc;

TEST_CASE("mod_pow") {
  CHECK(mod_pow(2, 10, 1000) == 24);
  CHECK(mod_pow(5, 0, 7) == 1);
  CHECK(mod_pow(3, 4, 5) == 1);
  CHECK(mod_pow(-1, 3, 7) == 6);
  CHECK_THROWS_AS(mod_pow(2, 3, 1), Error);
  try {
    mod_pow(2, 3, 0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_modulus);
  }

  SUBCASE("moduli above 64 bits") {
    const Int m = (Int{1} << 100) + 7;
    CHECK(mod_pow(m - 1, 2, m) == 1);
    CHECK(mod_pow(2, 100, m) == m - 7);
  }
}

TEST_CASE("is_prime") {
  CHECK(is_prime(std::uint64_t{2}));
  CHECK_FALSE(is_prime(std::uint64_t{1}));
  CHECK_FALSE(is_prime(std::uint64_t{0}));
  CHECK_FALSE(is_prime(std::uint64_t{561}));
  CHECK(is_prime(std::uint64_t{18446744073709551557ULL}));  // largest 64-bit prime
  CHECK_FALSE(is_prime(std::uint64_t{3215031751ULL}));      // strong pseudoprime to bases 2, 3, 5, 7
  CHECK_FALSE(is_prime(Int{-7}));
  CHECK_THROWS_AS(is_prime(Int{1} << 70), Error);
  for (std::uint64_t n = 0; n < 20000; ++n) CHECK(is_prime(n) == oracle::is_prime_trial(n));
}

TEST_CASE("factor") {
  auto f = factor(12);
  CHECK(f.sign == 1);
  CHECK(f.factors == std::vector<PrimePower>{{2, 2}, {3, 1}});
  f = factor(-1);
  CHECK(f.sign == -1);
  CHECK(f.factors.empty());
  CHECK(factor(97).factors == std::vector<PrimePower>{{97, 1}});
  CHECK_THROWS_AS(factor(0), Error);

  SUBCASE("round trip for 1 <= |n| <= 10^5") {
    for (Int n = 1; n <= 100000; ++n) {
      const Factorization pos = factor(n);
      const Factorization neg = factor(-n);
      REQUIRE(pos.value() == n);
      REQUIRE(neg.value() == -n);
      for (std::size_t i = 1; i < pos.factors.size(); ++i) REQUIRE(pos.factors[i - 1].prime < pos.factors[i].prime);
    }
  }

  SUBCASE("large semiprimes go through Pollard rho") {
    const std::uint64_t a = 1000003, b = 998244353;
    const auto g = factor(static_cast<Int>(a) * b);
    CHECK(g.factors == std::vector<PrimePower>{{a, 1}, {b, 1}});
    const std::uint64_t big = 4294967291ULL;  // prime near 2^32
    CHECK(factor(static_cast<Int>(big) * big).factors == std::vector<PrimePower>{{big, 2}});
  }
}

TEST_CASE("primes_up_to") {
  CHECK(primes_up_to(10) == std::vector<std::uint64_t>{2, 3, 5, 7});
  CHECK(primes_up_to(1).empty());
  CHECK(primes_up_to(100).size() == 25);
  CHECK(primes_up_to(10000) == oracle::primes_trial(10000));
  for (std::uint64_t n = 0; n < 200; ++n) CHECK(primes_up_to(n) == oracle::primes_trial(n));
  CHECK(primes_up_to(10'000'000).size() == 664579);

  SUBCASE("ranges crossing segment boundaries") {
    const std::uint64_t lo = 2 * kSieveSegmentBits - 100, hi = 2 * kSieveSegmentBits + 5000;
    std::vector<std::uint64_t> expect;
    for (std::uint64_t n = lo; n <= hi; ++n) {
      if (is_prime(n)) expect.push_back(n);
    }
    CHECK(primes_in_range(lo, hi) == expect);
  }
}

TEST_CASE("is_kth_residue examples") {
  CHECK(is_kth_residue(2, 2, PrimeModulus(7)));
  CHECK_FALSE(is_kth_residue(3, 2, PrimeModulus(7)));
  CHECK(is_kth_residue(0, 5, PrimeModulus(11)));
  for (Int a = -20; a < 40; ++a) CHECK(is_kth_residue(a, 1, PrimeModulus(13)));
  CHECK_THROWS_AS(is_kth_residue(2, 0, PrimeModulus(7)), Error);
  CHECK_THROWS_AS(PrimeModulus(9), Error);
}

TEST_CASE("is_kth_residue matches enumeration for p < 200, k <= 8") {
  for (const auto p : oracle::primes_trial(199)) {
    const PrimeModulus mod(p);
    for (std::uint64_t k = 1; k <= 8; ++k) {
      const auto powers = oracle::kth_powers_mod(p, k);
      for (std::uint64_t a = 0; a < p; ++a) {
        REQUIRE(is_kth_residue(static_cast<Int>(a), k, mod) == (powers.count(a) == 1));
      }
    }
  }
}

TEST_CASE("residue properties") {
  std::mt19937_64 rng(7);
  const auto primes = oracle::primes_trial(500);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::uint64_t p = primes[rng() % primes.size()];
    const PrimeModulus mod(p);
    const std::uint64_t k = 1 + rng() % 30;
    const std::uint64_t a = 1 + rng() % (p - 1 > 0 ? p - 1 : 1);
    const std::uint64_t b = 1 + rng() % (p - 1 > 0 ? p - 1 : 1);
    if (a % p == 0 || b % p == 0) continue;
    // gcd reduction
    CHECK(is_kth_residue(a, k, mod) == is_kth_residue(a, gcd_u64(k, p - 1), mod));
    // subgroup closure
    if (is_kth_residue(a, k, mod) && is_kth_residue(b, k, mod)) CHECK(is_kth_residue(a * b % p, k, mod));
  }
}

TEST_CASE("euler_phi") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(2) == 1);
  CHECK(euler_phi(5) == 4);
  CHECK(euler_phi(12) == 4);
  CHECK_THROWS_AS(euler_phi(0), Error);
}
