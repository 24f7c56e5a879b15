#include "krchain/chains.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "krchain/detail/chain_core.hpp"
#include "krchain/error.hpp"
#include "parallel.hpp"

namespace krc {
namespace {

struct IntRing {
  using Element = Int;
  using Key = std::uint64_t;

  PrimeModulus p;
  std::uint64_t k;
  ResidueTest test;

  IntRing(std::uint64_t k_, const PrimeModulus& p_) : p(p_), k(k_), test(k_, p_) {}

  Int zero() const { return 0; }
  Int add(Int a, Int b) const { return a + b; }  // in range: CandidateSequence bounds sum |r_i|
  Key reduce(Int a) const { return p.reduce(a); }
  bool is_residue(Key a) const { return test(a); }
  std::string show(Int a) const { return to_string(a); }
  std::string residue_phrase() const { return ordinal(k) + " power residue mod " + modulus_text(); }
  std::string modulus_text() const { return std::to_string(p.value()); }
};

void check_cap(const CandidateSequence& r, std::size_t cap) {
  if (cap > 31) throw Error(ErrorKind::size_limit, "term cap " + std::to_string(cap) + " exceeds 31");
  if (r.size() > cap) {
    throw Error(ErrorKind::size_limit, "sequence has " + std::to_string(r.size()) +
                                           " terms; subset-sum operations are capped at m = " +
                                           std::to_string(cap));
  }
}

std::vector<Int> sum_table(const CandidateSequence& r) {
  struct Plain {
    using Element = Int;
    Int zero() const { return 0; }
    Int add(Int a, Int b) const { return a + b; }
  };
  return detail::subset_sum_table(r.terms(), Plain{});
}

bool fits_int64(const CandidateSequence& r) {
  UInt total = 0;
  for (const Int t : r.terms()) total += abs_value(t);
  return total <= static_cast<UInt>(INT64_MAX);
}

// Sorted nonempty subset sums; true if some value repeats.
template <class T>
bool has_repeat(const CandidateSequence& r) {
  const auto terms = r.terms();
  const std::size_t count = std::size_t{1} << terms.size();
  std::vector<T> sums(count);
  sums[0] = 0;
  for (std::size_t mask = 1; mask < count; ++mask) {
    sums[mask] = sums[mask & (mask - 1)] + static_cast<T>(terms[__builtin_ctzll(mask)]);
  }
  std::sort(sums.begin() + 1, sums.end());
  return std::adjacent_find(sums.begin() + 1, sums.end()) != sums.end();
}

// First collision in mask order (sorted (sum, mask) pairs; the earliest second member wins).
std::optional<SumCollision> first_collision(const std::vector<Int>& sums) {
  std::vector<std::uint32_t> order(sums.size() - 1);
  std::iota(order.begin(), order.end(), 1U);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return sums[a] < sums[b]; });
  std::optional<SumCollision> best;
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (sums[order[i]] != sums[order[i - 1]]) continue;
    if (i >= 2 && sums[order[i - 2]] == sums[order[i]]) continue;  // only the group's second member
    if (!best || order[i] < best->second_mask) best = SumCollision{order[i - 1], order[i], sums[order[i]]};
  }
  return best;
}

std::optional<FailureWitness> permutation_failure(const CandidateSequence& r, const IntRing& ring) {
  const auto sums = sum_table(r);
  const std::size_t count = sums.size();
  std::size_t first_non_residue = count;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> keyed;
  keyed.reserve(count - 1);
  for (std::size_t mask = 1; mask < count; ++mask) {
    const auto key = ring.reduce(sums[mask]);
    if (first_non_residue == count && !ring.is_residue(key)) first_non_residue = mask;
    keyed.emplace_back(key, static_cast<std::uint32_t>(mask));
  }
  std::sort(keyed.begin(), keyed.end());
  std::size_t collision_second = count;
  std::uint32_t collision_first = 0;
  for (std::size_t i = 1; i < keyed.size(); ++i) {
    if (keyed[i].first != keyed[i - 1].first) continue;
    if (i >= 2 && keyed[i - 2].first == keyed[i].first) continue;
    if (keyed[i].second < collision_second) {
      collision_second = keyed[i].second;
      collision_first = keyed[i - 1].second;
    }
  }
  if (collision_second < count && collision_second <= first_non_residue) {
    return FailureWitness{FailureWitness::Kind::collision,
                          "subset sums " + detail::subset_text(collision_first) + " = " +
                              to_string(sums[collision_first]) + " and " +
                              detail::subset_text(static_cast<std::uint32_t>(collision_second)) + " = " +
                              to_string(sums[collision_second]) + " coincide mod " + ring.modulus_text()};
  }
  if (first_non_residue < count) {
    return FailureWitness{FailureWitness::Kind::non_residue,
                          "subset sum " + detail::subset_text(static_cast<std::uint32_t>(first_non_residue)) +
                              " = " + to_string(sums[first_non_residue]) + " is not a " + ring.residue_phrase()};
  }
  return std::nullopt;
}

}  // namespace

CandidateSequence::CandidateSequence(std::vector<Int> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw Error(ErrorKind::invalid_argument, "candidate sequence must have at least one term");
  // Bounding sum |r_i| bounds every window and subset sum.
  Int total = 0;
  for (const Int t : terms_) total = checked_add(total, static_cast<Int>(abs_value(t)));
}

bool SumSet::contains(Int v) const { return std::binary_search(values.begin(), values.end(), v); }

WindowWitness window_witness(std::uint32_t subset_mask, std::size_t m) {
  WindowWitness w;
  std::size_t size = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if ((subset_mask >> i) & 1U) {
      w.permutation.push_back(i + 1);
      ++size;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!((subset_mask >> i) & 1U)) w.permutation.push_back(i + 1);
  }
  w.first = 1;
  w.last = size;
  return w;
}

SumSet subset_sums(const CandidateSequence& r, std::size_t cap) {
  check_cap(r, cap);
  const auto sums = sum_table(r);
  std::vector<std::uint32_t> order(sums.size() - 1);
  std::iota(order.begin(), order.end(), 1U);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return sums[a] < sums[b]; });
  SumSet out;
  for (const std::uint32_t mask : order) {
    if (!out.values.empty() && out.values.back() == sums[mask]) continue;
    out.values.push_back(sums[mask]);
    out.first_subset.push_back(mask);
  }
  return out;
}

std::string SumCollision::describe() const {
  return detail::subset_text(first_mask) + " vs " + detail::subset_text(second_mask) + " (both sum to " +
         to_string(sum) + ")";
}

SumDistinctness is_sum_distinct(const CandidateSequence& r, std::size_t cap) {
  check_cap(r, cap);
  const bool repeat = fits_int64(r) ? has_repeat<std::int64_t>(r) : has_repeat<Int>(r);
  if (!repeat) return {};
  return {false, first_collision(sum_table(r))};
}

std::optional<FailureWitness> chain_failure(const CandidateSequence& r, std::uint64_t k,
                                            const PrimeModulus& p) {
  return detail::first_window_failure<IntRing>(r.terms(), IntRing(k, p));
}

bool is_chain(const CandidateSequence& r, std::uint64_t k, const PrimeModulus& p) {
  return !chain_failure(r, k, p).has_value();
}

bool is_cyclic_chain(const CandidateSequence& r, std::uint64_t k, const PrimeModulus& p) {
  return !detail::first_rotation_failure<IntRing>(r.terms(), IntRing(k, p)).has_value();
}

ChainVerdict is_permutation_chain(const CandidateSequence& r, std::uint64_t k, const PrimeModulus& p,
                                  const VerifyOptions& options) {
  check_cap(r, options.cap);
  const IntRing ring(k, p);
  ChainVerdict v;
  if (auto failure = detail::first_window_failure<IntRing>(r.terms(), ring)) {
    v.failure_witness = std::move(failure);
  } else {
    v.is_chain = true;
    if (auto rot = detail::first_rotation_failure<IntRing>(r.terms(), ring)) {
      v.failure_witness = std::move(rot);
    } else {
      v.is_cyclic = true;
    }
  }
  // The subset-sum test is run regardless so that the hierarchy is checked
  // rather than assumed.
  const bool permutation = PermutationChainTester(r, k, options.cap)(p);
  if (permutation && !v.is_cyclic) {
    throw std::logic_error("permutation chain that is not cyclic: verifier inconsistency");
  }
  v.is_permutation = permutation;
  if (!permutation && !v.failure_witness) v.failure_witness = permutation_failure(r, ring);
  if (options.cross_check_naive && r.size() <= 6 && permutation != is_permutation_chain_naive(r, k, p)) {
    throw std::logic_error("subset-sum verifier disagrees with the all-permutations verifier");
  }
  return v;
}

bool is_permutation_chain_naive(const CandidateSequence& r, std::uint64_t k, const PrimeModulus& p) {
  if (r.size() > 8) {
    throw Error(ErrorKind::size_limit, "the all-permutations verifier is capped at m = 8");
  }
  std::vector<std::size_t> idx(r.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Int> ordered(r.size());
  const IntRing ring(k, p);
  do {
    for (std::size_t i = 0; i < idx.size(); ++i) ordered[i] = r.terms()[idx[i]];
    if (detail::first_window_failure<IntRing>(ordered, ring)) return false;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return true;
}

PermutationChainTester::PermutationChainTester(const CandidateSequence& r, std::uint64_t k, std::size_t cap)
    : k_(k) {
  check_cap(r, cap);
  if (k == 0) throw Error(ErrorKind::invalid_argument, "k must be >= 1");
  sums_ = sum_table(r);
  sums_.erase(sums_.begin());
  std::sort(sums_.begin(), sums_.end());
  sum_distinct_ = std::adjacent_find(sums_.begin(), sums_.end()) == sums_.end();
  spread_ = static_cast<UInt>(sums_.back()) - static_cast<UInt>(sums_.front());
}

bool PermutationChainTester::test_unchecked(std::uint64_t p) const {
  // A repeated subset sum over Z repeats mod every prime.
  if (!sum_distinct_) return false;
  const ResidueTest residue(k_, p);
  const auto pi = static_cast<Int>(p);
  auto reduce = [pi](Int a) {
    Int m = a % pi;
    return static_cast<std::uint64_t>(m < 0 ? m + pi : m);
  };
  for (const Int s : sums_) {
    if (!residue(reduce(s))) return false;
  }
  // Nonzero differences smaller than p cannot vanish mod p.
  if (static_cast<UInt>(p) > spread_) return true;
  std::vector<std::uint64_t> reduced(sums_.size());
  std::transform(sums_.begin(), sums_.end(), reduced.begin(), reduce);
  std::sort(reduced.begin(), reduced.end());
  return std::adjacent_find(reduced.begin(), reduced.end()) == reduced.end();
}

bool ExceptionalPrimeSet::contains(std::uint64_t q) const {
  return std::binary_search(primes.begin(), primes.end(), q);
}

ExceptionalPrimeSet exceptional_primes(const CandidateSequence& r, std::size_t cap) {
  const SumDistinctness distinct = is_sum_distinct(r, cap);
  if (!distinct.distinct) {
    throw Error(ErrorKind::invalid_candidate,
                "sequence is not sum-distinct: " + distinct.collision->describe());
  }
  const std::vector<Int> values = subset_sums(r, cap).values;
  std::vector<UInt> differences;
  const UInt spread = static_cast<UInt>(values.back()) - static_cast<UInt>(values.front());
  if (spread <= 50'000'000) {
    std::vector<bool> seen(static_cast<std::size_t>(spread) + 1, false);
    for (std::size_t i = 0; i < values.size(); ++i) {
      for (std::size_t j = i + 1; j < values.size(); ++j) {
        seen[static_cast<std::size_t>(static_cast<UInt>(values[j]) - static_cast<UInt>(values[i]))] = true;
      }
    }
    for (std::size_t d = 2; d < seen.size(); ++d) {
      if (seen[d]) differences.push_back(d);
    }
  } else {
    for (std::size_t i = 0; i < values.size(); ++i) {
      for (std::size_t j = i + 1; j < values.size(); ++j) {
        differences.push_back(static_cast<UInt>(values[j]) - static_cast<UInt>(values[i]));
      }
    }
    std::sort(differences.begin(), differences.end());
    differences.erase(std::unique(differences.begin(), differences.end()), differences.end());
  }
  std::vector<std::uint64_t> primes;
  for (const UInt d : differences) {
    if (d < 2) continue;
    if (d > static_cast<UInt>(kIntMax)) throw Error(ErrorKind::overflow, "difference exceeds 128-bit range");
    for (const auto& pp : factor(static_cast<Int>(d)).factors) primes.push_back(pp.prime);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return {std::move(primes)};
}

std::vector<std::uint64_t> find_chain_primes(const CandidateSequence& r, std::uint64_t k, std::uint64_t limit,
                                             const SearchOptions& options) {
  const PermutationChainTester tester(r, k, options.cap);
  std::vector<std::uint64_t> found;
  if (options.max_count && *options.max_count == 0) return found;
  const auto blocks = detail::split_range(0, limit);
  std::vector<std::vector<std::uint64_t>> partial(blocks.size());
  std::size_t merged = 0;
  detail::run_in_waves(
      blocks.size(), options.workers,
      [&](std::size_t b) {
        for_each_prime(blocks[b].lo, blocks[b].hi, [&](std::uint64_t p) {
          if (tester.test_unchecked(p)) partial[b].push_back(p);
        });
      },
      [&](std::size_t completed) {
        for (; merged < completed; ++merged) {
          found.insert(found.end(), partial[merged].begin(), partial[merged].end());
          partial[merged].clear();
        }
        if (options.max_count && found.size() >= *options.max_count) {
          found.resize(*options.max_count);
          return true;
        }
        return false;
      });
  return found;
}

CandidateSequence vegh_sequence(std::size_t m, Int base) {
  if (m < 1) throw Error(ErrorKind::invalid_argument, "vegh sequence needs m >= 1");
  if (base < 2) throw Error(ErrorKind::invalid_argument, "vegh sequence needs base >= 2");
  std::vector<Int> terms;
  terms.reserve(m);
  Int power = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (i > 0) power = checked_mul(power, base);
    terms.push_back(power);
  }
  return CandidateSequence(std::move(terms));
}

}  // namespace krc
