#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "krchain/int128.hpp"

namespace krc {

/// A prime p >= 2, checked on construction.
class PrimeModulus {
 public:
  /// Throws Error(invalid_modulus) unless p is prime.
  explicit PrimeModulus(std::uint64_t p);

  std::uint64_t value() const noexcept { return p_; }

  /// a mod p in [0, p).
  std::uint64_t reduce(Int a) const noexcept;

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  std::uint64_t p_;
};

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// sign * prod(prime^exponent), primes strictly increasing. +-1 has no factors.
struct Factorization {
  int sign = 1;
  std::vector<PrimePower> factors;

  /// Multiplies the factorization back out (checked against overflow).
  Int value() const;
};

/// base^exp mod modulus in [0, modulus). Negative bases are reduced first.
/// Throws Error(invalid_modulus) when modulus < 2.
Int mod_pow(Int base, UInt exp, Int modulus);

/// 64-bit fast path, modulus >= 2 assumed.
std::uint64_t mod_pow_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus) noexcept;

/// Deterministic Miller-Rabin, exact on the full 64-bit range.
bool is_prime(std::uint64_t n) noexcept;

/// Same as above for 128-bit inputs. Negative n is never prime; values above
/// 2^64 - 1 raise Error(overflow) since the witness set is only proven there.
bool is_prime(Int n);

/// Complete factorization: trial division by primes below 10^6, then
/// Pollard rho (Brent) on the cofactor. |n| must fit in 64 bits.
/// Throws Error(invalid_argument) for n = 0.
Factorization factor(Int n);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) noexcept;

/// Euler's totient, k >= 1.
std::uint64_t euler_phi(std::uint64_t k);

/// True iff x^k = a (mod p) is solvable. 0 counts as a residue (0 = 0^k).
/// Throws Error(invalid_argument) for k = 0.
bool is_kth_residue(Int a, std::uint64_t k, const PrimeModulus& p);

/// Precomputed residue test for a fixed (k, p): a != 0 is a kth power residue
/// iff a^((p-1)/gcd(k, p-1)) = 1. Used in the hot loops of the searches.
class ResidueTest {
 public:
  ResidueTest(std::uint64_t k, const PrimeModulus& p) : ResidueTest(k, p.value()) {}
  /// `p` must be prime (e.g. straight from the sieve); not re-checked.
  ResidueTest(std::uint64_t k, std::uint64_t p);

  /// `a` must already be reduced into [0, p).
  bool operator()(std::uint64_t a) const noexcept {
    if (a == 0 || trivial_) return true;
    return mod_pow_u64(a, exponent_, p_) == 1;
  }

 private:
  std::uint64_t p_;
  std::uint64_t exponent_;
  bool trivial_;
};

/// All primes <= n in ascending order (segmented, odd-only sieve).
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

/// All primes in [lo, hi] in ascending order.
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

/// Streams the primes of [lo, hi] in ascending order, one sieve segment at a
/// time. Memory stays proportional to the segment size plus sqrt(hi).
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& visit);

/// Odd numbers covered by one sieve segment.
inline constexpr std::uint64_t kSieveSegmentBits = std::uint64_t{1} << 20;

}  // namespace krc
