#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "krchain/arith.hpp"
#include "krchain/int128.hpp"
#include "krchain/verdict.hpp"

namespace krc {

/// Largest m accepted by the subset-sum based operations unless overridden.
inline constexpr std::size_t kDefaultTermCap = 24;

/// r_1, ..., r_m over the integers. Nonempty, and the sum of |r_i| fits in
/// 128 bits, so every window or subset sum is representable.
class CandidateSequence {
 public:
  explicit CandidateSequence(std::vector<Int> terms);

  std::span<const Int> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  friend bool operator==(const CandidateSequence&, const CandidateSequence&) = default;

 private:
  std::vector<Int> terms_;
};

/// The set of sums over all windows of all orderings, i.e. all nonempty
/// subset sums. `first_subset[i]` is the lowest bitmask whose sum is values[i].
struct SumSet {
  std::vector<Int> values;
  std::vector<std::uint32_t> first_subset;

  bool contains(Int v) const;
};

/// An ordering and 1-based window [first, last] whose window sum equals the
/// sum of the given subset: the subset is moved to the front.
struct WindowWitness {
  std::vector<std::size_t> permutation;
  std::size_t first = 1;
  std::size_t last = 1;
};

WindowWitness window_witness(std::uint32_t subset_mask, std::size_t m);

/// Throws Error(size_limit) naming the cap when r has more than `cap` terms.
SumSet subset_sums(const CandidateSequence& r, std::size_t cap = kDefaultTermCap);

/// Two distinct index subsets (bitmasks, bit i = r_{i+1}) with equal sums.
struct SumCollision {
  std::uint32_t first_mask;
  std::uint32_t second_mask;
  Int sum;

  std::string describe() const;
};

struct SumDistinctness {
  bool distinct = true;
  /// First collision in ascending mask order of the later subset.
  std::optional<SumCollision> collision;
};

SumDistinctness is_sum_distinct(const CandidateSequence& r, std::size_t cap = kDefaultTermCap);

/// Window sums of r in its given order are distinct mod p and kth power residues.
bool is_chain(const CandidateSequence& r, std::uint64_t k, const PrimeModulus& p);
std::optional<FailureWitness> chain_failure(const CandidateSequence& r, std::uint64_t k,
                                            const PrimeModulus& p);

/// Every rotation of r is a chain.
bool is_cyclic_chain(const CandidateSequence& r, std::uint64_t k, const PrimeModulus& p);

struct VerifyOptions {
  std::size_t cap = kDefaultTermCap;
  /// Debug mode: re-check is_permutation against the m!-permutation verifier
  /// (m <= 6 only) and throw std::logic_error on disagreement.
  bool cross_check_naive = false;
};

/// All three verdicts; is_permutation is decided over the 2^m - 1 subset sums.
ChainVerdict is_permutation_chain(const CandidateSequence& r, std::uint64_t k, const PrimeModulus& p,
                                  const VerifyOptions& options = {});

/// Reference verifier that literally runs is_chain on all m! orderings.
/// Throws Error(size_limit) for m > 8.
bool is_permutation_chain_naive(const CandidateSequence& r, std::uint64_t k, const PrimeModulus& p);

/// Hot-path permutation-chain test for one candidate and one k across many
/// primes. Holds the multiset of nonempty subset sums.
class PermutationChainTester {
 public:
  PermutationChainTester(const CandidateSequence& r, std::uint64_t k, std::size_t cap = kDefaultTermCap);

  bool operator()(const PrimeModulus& p) const { return test_unchecked(p.value()); }
  /// `p` must be prime; used by the sieve-driven searches.
  bool test_unchecked(std::uint64_t p) const;

  bool sum_distinct() const noexcept { return sum_distinct_; }

 private:
  std::vector<Int> sums_;  // nonempty subset sums, sorted, with multiplicity
  std::uint64_t k_;
  bool sum_distinct_;
  UInt spread_;  // max - min of sums_
};

struct ExceptionalPrimeSet {
  std::vector<std::uint64_t> primes;  // ascending

  bool contains(std::uint64_t q) const;
};

/// Primes dividing some difference of two distinct subset sums.
/// Throws Error(invalid_candidate) when r is not sum-distinct.
ExceptionalPrimeSet exceptional_primes(const CandidateSequence& r, std::size_t cap = kDefaultTermCap);

struct SearchOptions {
  std::optional<std::size_t> max_count;
  unsigned workers = 1;
  std::size_t cap = kDefaultTermCap;
};

/// Ascending primes p <= limit for which r is a permutation chain of kth
/// power residues mod p. Every prime is tested, exceptional ones included, so
/// the output is identical for any worker count.
std::vector<std::uint64_t> find_chain_primes(const CandidateSequence& r, std::uint64_t k,
                                             std::uint64_t limit, const SearchOptions& options = {});

/// 1, base, base^2, ..., base^(m-1). Throws Error(invalid_argument) for
/// base < 2 or m < 1 and Error(overflow) beyond 128 bits.
CandidateSequence vegh_sequence(std::size_t m, Int base);

}  // namespace krc
