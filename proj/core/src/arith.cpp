#include "krchain/arith.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "krchain/error.hpp"

namespace krc {
namespace {

UInt mul_mod(UInt a, UInt b, UInt m) {
  if (m <= UInt{~std::uint64_t{0}}) return (a * b) % m;
  // Moduli above 2^64: double-and-add, a + b < 2^128 because both are < m < 2^127.
  UInt result = 0;
  a %= m;
  while (b != 0) {
    if (b & 1) {
      result += a;
      if (result >= m) result -= m;
    }
    a += a;
    if (a >= m) a -= m;
    b >>= 1;
  }
  return result;
}

std::uint64_t mul_mod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<UInt>(a) * b % m);
}

bool miller_rabin_round(std::uint64_t n, std::uint64_t a, std::uint64_t d, int r) noexcept {
  std::uint64_t x = mod_pow_u64(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < r; ++i) {
    x = mul_mod64(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> table = primes_up_to(1'000'000);
  return table;
}

std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    auto f = [&](std::uint64_t v) { return (mul_mod64(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod64(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_into(std::uint64_t n, std::map<std::uint64_t, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  const std::uint64_t d = pollard_brent(n);
  split_into(d, out);
  split_into(n / d, out);
}

}  // namespace

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(p) {
  if (!is_prime(p)) {
    throw Error(ErrorKind::invalid_modulus, "modulus " + std::to_string(p) + " is not prime");
  }
}

std::uint64_t PrimeModulus::reduce(Int a) const noexcept {
  Int r = a % static_cast<Int>(p_);
  if (r < 0) r += static_cast<Int>(p_);
  return static_cast<std::uint64_t>(r);
}

Int Factorization::value() const {
  Int v = sign;
  for (const auto& [prime, exponent] : factors) {
    for (unsigned i = 0; i < exponent; ++i) v = checked_mul(v, static_cast<Int>(prime));
  }
  return v;
}

Int mod_pow(Int base, UInt exp, Int modulus) {
  if (modulus < 2) {
    throw Error(ErrorKind::invalid_modulus, "modulus " + to_string(modulus) + " must be >= 2");
  }
  const auto m = static_cast<UInt>(modulus);
  Int reduced = base % modulus;
  if (reduced < 0) reduced += modulus;
  UInt b = static_cast<UInt>(reduced);
  UInt result = 1 % m;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, b, m);
    b = mul_mod(b, b, m);
    exp >>= 1;
  }
  return static_cast<Int>(result);
}

std::uint64_t mod_pow_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus) noexcept {
  std::uint64_t result = 1 % modulus;
  base %= modulus;
  while (exp != 0) {
    if (exp & 1) result = mul_mod64(result, base, modulus);
    base = mul_mod64(base, base, modulus);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  static constexpr std::uint64_t kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (const std::uint64_t q : kSmall) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // The first twelve primes are a deterministic witness set below 3.3 * 10^24.
  for (const std::uint64_t a : kSmall) {
    if (!miller_rabin_round(n, a, d, r)) return false;
  }
  return true;
}

bool is_prime(Int n) {
  if (n < 2) return false;
  if (static_cast<UInt>(n) > UInt{~std::uint64_t{0}}) {
    throw Error(ErrorKind::overflow, "primality of " + to_string(n) + " is outside the 64-bit range");
  }
  return is_prime(static_cast<std::uint64_t>(n));
}

Factorization factor(Int n) {
  if (n == 0) throw Error(ErrorKind::invalid_argument, "cannot factor 0");
  Factorization result;
  result.sign = n < 0 ? -1 : 1;
  const UInt magnitude = abs_value(n);
  if (magnitude > UInt{~std::uint64_t{0}}) {
    throw Error(ErrorKind::overflow, "factor: |" + to_string(n) + "| exceeds 64 bits");
  }
  auto rest = static_cast<std::uint64_t>(magnitude);
  for (const std::uint64_t q : small_primes()) {
    if (q * q > rest) break;
    if (rest % q != 0) continue;
    unsigned e = 0;
    while (rest % q == 0) {
      rest /= q;
      ++e;
    }
    result.factors.push_back({q, e});
  }
  if (rest > 1) {
    std::map<std::uint64_t, unsigned> large;
    split_into(rest, large);
    for (const auto& [q, e] : large) result.factors.push_back({q, e});
  }
  return result;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) noexcept { return std::gcd(a, b); }

std::uint64_t euler_phi(std::uint64_t k) {
  if (k == 0) throw Error(ErrorKind::invalid_argument, "phi(0) is undefined");
  std::uint64_t phi = k;
  for (const auto& pp : factor(static_cast<Int>(k)).factors) phi = phi / pp.prime * (pp.prime - 1);
  return phi;
}

ResidueTest::ResidueTest(std::uint64_t k, std::uint64_t p) : p_(p) {
  if (k == 0) throw Error(ErrorKind::invalid_argument, "k must be >= 1");
  const std::uint64_t d = std::gcd(k, p_ - 1);
  exponent_ = (p_ - 1) / d;
  trivial_ = d == 1;
}

bool is_kth_residue(Int a, std::uint64_t k, const PrimeModulus& p) {
  return ResidueTest(k, p)(p.reduce(a));
}

}  // namespace krc
