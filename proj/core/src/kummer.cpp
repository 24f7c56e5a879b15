#include "krchain/kummer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "krchain/error.hpp"
#include "parallel.hpp"

namespace krc {
namespace {

UInt gcd_u128(UInt a, UInt b) {
  while (b != 0) {
    const UInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t k) {
  return static_cast<std::uint64_t>(static_cast<UInt>(a) * b % k);
}

}  // namespace

Rational Rational::make(UInt num, UInt den) {
  if (den == 0) throw Error(ErrorKind::invalid_argument, "rational with zero denominator");
  const UInt g = gcd_u128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  return {num, den};
}

double Rational::to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

std::string Rational::to_string() const { return krc::to_string(num) + "/" + krc::to_string(den); }

ExponentVector::ExponentVector(std::uint64_t k) : k_(k) {
  if (k == 0) throw Error(ErrorKind::invalid_argument, "k must be >= 1");
}

std::uint64_t ExponentVector::at(std::int64_t position) const {
  const auto it = coords_.find(position);
  return it == coords_.end() ? 0 : it->second;
}

void ExponentVector::add(std::int64_t position, std::uint64_t amount) {
  amount %= k_;
  if (position == kSignPosition) {
    // Sign lives in {0, k/2}; odd multiples of k/2 toggle it.
    if (k_ % 2 != 0) return;
    const std::uint64_t half = k_ / 2;
    if (amount % half != 0) throw Error(ErrorKind::invalid_argument, "sign coordinate must be a multiple of k/2");
    if ((amount / half) % 2 == 0) return;
    amount = half;
  }
  const std::uint64_t updated = static_cast<std::uint64_t>((static_cast<UInt>(at(position)) + amount) % k_);
  if (updated == 0) {
    coords_.erase(position);
  } else {
    coords_[position] = updated;
  }
}

ExponentVector exponent_vector(Int a, std::uint64_t k) {
  if (a == 0) throw Error(ErrorKind::invalid_argument, "exponent vector of 0 is undefined");
  ExponentVector v(k);
  const Factorization f = factor(a);
  if (f.sign < 0 && k % 2 == 0) v.add(ExponentVector::kSignPosition, k / 2);
  for (const auto& [prime, exponent] : f.factors) {
    v.add(static_cast<std::int64_t>(prime), exponent % k);
  }
  return v;
}

UInt subgroup_order_mod_k(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t k) {
  if (k == 0) throw Error(ErrorKind::invalid_argument, "k must be >= 1");
  if (k == 1 || rows.empty()) return 1;
  const std::size_t width = rows.front().size();
  for (auto& row : rows) {
    if (row.size() != width) throw Error(ErrorKind::invalid_argument, "ragged generator matrix");
    for (auto& x : row) x %= k;
  }
  UInt order = 1;
  for (std::size_t col = 0; col < width; ++col) {
    std::size_t pivot = rows.size();
    for (;;) {
      pivot = rows.size();
      std::size_t nonzero = 0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        ++nonzero;
        if (pivot == rows.size() || rows[i][col] < rows[pivot][col]) pivot = i;
      }
      if (nonzero <= 1) break;
      // Replace every other entry x by x mod pivot entry; strictly decreasing.
      const std::uint64_t x = rows[pivot][col];
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == pivot || rows[i][col] == 0) continue;
        const std::uint64_t q = rows[i][col] / x;
        for (std::size_t j = col; j < width; ++j) {
          rows[i][j] = (rows[i][j] + k - mul_mod(q, rows[pivot][j], k)) % k;
        }
      }
    }
    if (pivot == rows.size()) continue;
    std::vector<std::uint64_t> pivot_row = std::move(rows[pivot]);
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(pivot));
    const std::uint64_t step = k / std::gcd(pivot_row[col], k);
    order = checked_mul(order, static_cast<UInt>(step));
    std::vector<std::uint64_t> annihilated(width, 0);
    bool any = false;
    for (std::size_t j = col + 1; j < width; ++j) {
      annihilated[j] = mul_mod(step, pivot_row[j], k);
      any = any || annihilated[j] != 0;
    }
    if (any) rows.push_back(std::move(annihilated));
  }
  return order;
}

std::size_t gf2_rank(const std::vector<std::vector<std::uint8_t>>& rows) {
  if (rows.empty()) return 0;
  const std::size_t width = rows.front().size();
  const std::size_t words = (width + 63) / 64;
  std::vector<std::vector<std::uint64_t>> packed;
  for (const auto& row : rows) {
    std::vector<std::uint64_t> bits(words, 0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] & 1U) bits[j / 64] |= std::uint64_t{1} << (j % 64);
    }
    packed.push_back(std::move(bits));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < packed.size(); ++col) {
    const std::uint64_t bit = std::uint64_t{1} << (col % 64);
    std::size_t found = packed.size();
    for (std::size_t i = rank; i < packed.size(); ++i) {
      if (packed[i][col / 64] & bit) {
        found = i;
        break;
      }
    }
    if (found == packed.size()) continue;
    std::swap(packed[rank], packed[found]);
    for (std::size_t i = 0; i < packed.size(); ++i) {
      if (i != rank && (packed[i][col / 64] & bit)) {
        for (std::size_t w = 0; w < words; ++w) packed[i][w] ^= packed[rank][w];
      }
    }
    ++rank;
  }
  return rank;
}

KummerClassGroup class_group(std::span<const Int> elements, std::uint64_t k) {
  if (k == 0) throw Error(ErrorKind::invalid_argument, "k must be >= 1");
  KummerClassGroup group;
  group.k = k;
  std::set<std::int64_t> positions;
  for (const Int a : elements) {
    if (a == 0) {
      group.excluded_zero = true;
      continue;
    }
    group.generator_values.push_back(a);
    group.generators.push_back(exponent_vector(a, k));
    for (const auto& [pos, value] : group.generators.back().coordinates()) positions.insert(pos);
  }
  const std::vector<std::int64_t> columns(positions.begin(), positions.end());
  std::vector<std::vector<std::uint64_t>> rows;
  for (const auto& g : group.generators) {
    if (g.is_zero()) continue;
    std::vector<std::uint64_t> row(columns.size(), 0);
    for (std::size_t j = 0; j < columns.size(); ++j) row[j] = g.at(columns[j]);
    rows.push_back(std::move(row));
  }
  group.subgroup_order = subgroup_order_mod_k(std::move(rows), k);
  return group;
}

KummerClassGroup class_group(const SumSet& sums, std::uint64_t k) { return class_group(sums.values, k); }

Rational predicted_density(std::span<const Int> elements, std::uint64_t k) {
  const KummerClassGroup group = class_group(elements, k);
  return Rational::make(1, checked_mul(static_cast<UInt>(euler_phi(k)), group.subgroup_order));
}

Rational predicted_density(const SumSet& sums, std::uint64_t k) { return predicted_density(sums.values, k); }

bool DensityReport::consistent_with_lower_bound() const {
  return empirical.to_double() >= predicted_lower_bound.to_double() - 3.0 * standard_error;
}

DensityReport empirical_density(const CandidateSequence& r, std::uint64_t k, std::uint64_t limit,
                                const DensityOptions& options) {
  if (limit < 2) throw Error(ErrorKind::invalid_argument, "density limit must be >= 2");
  const PermutationChainTester tester(r, k, options.cap);
  const SumSet sums = subset_sums(r, options.cap);

  DensityReport report;
  report.k = k;
  report.limit = limit;
  report.sum_distinct = tester.sum_distinct();
  report.zero_in_sum_set = sums.contains(0);
  report.predicted_lower_bound = predicted_density(sums, k);

  ExceptionalPrimeSet exceptional;
  if (report.sum_distinct) exceptional = exceptional_primes(r, options.cap);
  for (const std::uint64_t q : exceptional.primes) {
    if (q <= limit) report.exceptional_excluded.push_back(q);
  }

  const auto blocks = detail::split_range(0, limit);
  std::vector<std::uint64_t> totals(blocks.size(), 0), hits(blocks.size(), 0);
  detail::run_in_waves(
      blocks.size(), options.workers,
      [&](std::size_t b) {
        for_each_prime(blocks[b].lo, blocks[b].hi, [&](std::uint64_t p) {
          if (exceptional.contains(p)) return;
          ++totals[b];
          if (tester.test_unchecked(p)) ++hits[b];
        });
      },
      [](std::size_t) { return false; });
  report.total_primes = std::accumulate(totals.begin(), totals.end(), std::uint64_t{0});
  report.hits = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
  report.empirical = report.total_primes == 0 ? Rational{0, 1} : Rational::make(report.hits, report.total_primes);
  if (report.total_primes > 0) {
    const double d = report.predicted_lower_bound.to_double();
    report.standard_error = std::sqrt(d * (1.0 - d) / static_cast<double>(report.total_primes));
  }
  return report;
}

}  // namespace krc
