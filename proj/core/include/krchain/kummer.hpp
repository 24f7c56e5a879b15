#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "krchain/chains.hpp"
#include "krchain/int128.hpp"

namespace krc {

/// Nonnegative rational in lowest terms, printed as "num/denom".
struct Rational {
  UInt num = 0;
  UInt den = 1;

  static Rational make(UInt num, UInt den);

  double to_double() const;
  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Class of a nonzero rational integer in Q*/(Q*)^k, as exponents mod k.
///
/// Position -1 is the sign. For odd k, -1 = (-1)^k is a kth power and the
/// sign coordinate is always 0; for even k it is 0 or k/2, which embeds the
/// order-2 class of -1 into Z/k. Only nonzero coordinates are stored.
class ExponentVector {
 public:
  static constexpr std::int64_t kSignPosition = -1;

  explicit ExponentVector(std::uint64_t k);

  std::uint64_t k() const noexcept { return k_; }
  const std::map<std::int64_t, std::uint64_t>& coordinates() const noexcept { return coords_; }
  std::uint64_t at(std::int64_t position) const;
  bool is_zero() const noexcept { return coords_.empty(); }

  /// Adds `amount` (mod k) at `position`. Sign amounts are reduced so that
  /// 2 * coordinate = 0 (mod k) keeps holding.
  void add(std::int64_t position, std::uint64_t amount);

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

 private:
  std::uint64_t k_;
  std::map<std::int64_t, std::uint64_t> coords_;
};

/// Throws Error(invalid_argument) for a = 0 or k = 0.
ExponentVector exponent_vector(Int a, std::uint64_t k);

struct KummerClassGroup {
  std::uint64_t k = 1;
  /// Nonzero elements used as generators, with their exponent vectors.
  std::vector<Int> generator_values;
  std::vector<ExponentVector> generators;
  /// True when 0 was among the inputs; it is dropped since it constrains nothing.
  bool excluded_zero = false;
  /// Order of the subgroup of Q*/(Q*)^k generated by `generators`.
  UInt subgroup_order = 1;
};

KummerClassGroup class_group(std::span<const Int> elements, std::uint64_t k);
KummerClassGroup class_group(const SumSet& sums, std::uint64_t k);

/// Order of the subgroup of (Z/k)^n spanned by `rows` (entries taken mod k).
///
/// Column-by-column elimination over Z/k with Euclidean (gcd) pivoting: once
/// column c has a single nonzero entry x in the pivot row, the projection of
/// the remaining subgroup onto that coordinate has order k/gcd(x, k), and
/// (k/gcd(x, k)) * pivot is fed back into the pool since it lies in the
/// kernel of that projection. Throws Error(overflow) if the order exceeds
/// 128 bits.
UInt subgroup_order_mod_k(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t k);

/// Rank over GF(2) of 0/1 rows.
std::size_t gf2_rank(const std::vector<std::vector<std::uint8_t>>& rows);

/// 1 / (phi(k) * subgroup order): the degree bound [L:Q] <= phi(k) * order
/// for L = Q(zeta_k, kth roots of the sums) makes this a lower bound on the
/// density of primes at which every sum is a kth power residue. Exact for the
/// split-completely density when k = 2.
Rational predicted_density(std::span<const Int> elements, std::uint64_t k);
Rational predicted_density(const SumSet& sums, std::uint64_t k);

struct DensityReport {
  std::uint64_t k = 1;
  std::uint64_t limit = 0;
  std::uint64_t total_primes = 0;
  std::uint64_t hits = 0;
  Rational empirical;
  Rational predicted_lower_bound;
  /// Exceptional primes <= limit; not counted in total_primes or hits.
  std::vector<std::uint64_t> exceptional_excluded;
  bool sum_distinct = true;
  bool zero_in_sum_set = false;
  /// Binomial standard error sqrt(d (1 - d) / total_primes) at the predicted d.
  double standard_error = 0.0;

  /// empirical >= predicted - 3 sigma.
  bool consistent_with_lower_bound() const;
};

struct DensityOptions {
  unsigned workers = 1;
  std::size_t cap = kDefaultTermCap;
};

/// Counts the primes p <= limit at which r is a permutation chain of kth
/// power residues. Non-sum-distinct candidates are accepted and yield zero
/// hits. Throws Error(invalid_argument) for limit < 2.
DensityReport empirical_density(const CandidateSequence& r, std::uint64_t k, std::uint64_t limit,
                                const DensityOptions& options = {});

}  // namespace krc
