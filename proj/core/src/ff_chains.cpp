#include <algorithm>
#include <numeric>
#include <thread>

#include "krchain/detail/chain_core.hpp"
#include "krchain/error.hpp"
#include "krchain/ffield.hpp"

namespace krc {
namespace {

struct PolyRing {
  using Element = FFPoly;
  using Key = FFPoly;

  const IrreducibleModulus* f;
  std::uint64_t k;

  FFPoly zero() const { return FFPoly::zero(f->characteristic()); }
  FFPoly add(const FFPoly& a, const FFPoly& b) const { return a + b; }
  FFPoly reduce(const FFPoly& a) const { return mod(a, f->poly()); }
  bool is_residue(const FFPoly& a) const { return is_kth_residue_ff(a, k, *f); }
  std::string show(const FFPoly& a) const { return a.to_string(); }
  std::string residue_phrase() const { return ordinal(k) + " power residue mod " + modulus_text(); }
  std::string modulus_text() const { return f->poly().to_string(); }
};

struct PlainPolyRing {
  using Element = FFPoly;
  std::uint32_t p;
  FFPoly zero() const { return FFPoly::zero(p); }
  FFPoly add(const FFPoly& a, const FFPoly& b) const { return a + b; }
};

void check_cap(const PolySequence& r, std::size_t cap) {
  if (r.size() > std::min<std::size_t>(cap, 31)) {
    throw Error(ErrorKind::size_limit, "sequence has " + std::to_string(r.size()) +
                                           " terms; subset-sum operations are capped at m = " +
                                           std::to_string(std::min<std::size_t>(cap, 31)));
  }
}

void check_field(const PolySequence& r, const IrreducibleModulus& f) {
  if (r.characteristic() != f.characteristic()) {
    throw Error(ErrorKind::characteristic_mismatch,
                "sequence is over GF(" + std::to_string(r.characteristic()) + ") but the modulus is " +
                    f.poly().to_string());
  }
}

std::vector<FFPoly> sum_table(const PolySequence& r) {
  return detail::subset_sum_table(r.terms(), PlainPolyRing{r.characteristic()});
}

// Per-modulus permutation-chain test over a fixed multiset of subset sums.
class PolyChainTester {
 public:
  PolyChainTester(const PolySequence& r, std::uint64_t k) : k_(k) {
    sums_ = sum_table(r);
    sums_.erase(sums_.begin());
  }

  bool operator()(const IrreducibleModulus& f) const {
    std::vector<FFPoly> reduced;
    reduced.reserve(sums_.size());
    for (const auto& s : sums_) {
      reduced.push_back(mod(s, f.poly()));
      if (!is_kth_residue_ff(reduced.back(), k_, f)) return false;
    }
    std::sort(reduced.begin(), reduced.end());
    return std::adjacent_find(reduced.begin(), reduced.end()) == reduced.end();
  }

 private:
  std::vector<FFPoly> sums_;
  std::uint64_t k_;
};

}  // namespace

PolySequence::PolySequence(std::vector<FFPoly> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw Error(ErrorKind::invalid_argument, "candidate sequence must have at least one term");
  for (const auto& t : terms_) {
    if (t.characteristic() != terms_.front().characteristic()) {
      throw Error(ErrorKind::characteristic_mismatch,
                  "terms " + terms_.front().to_string() + " and " + t.to_string() + " have different characteristics");
    }
  }
}

PolySequence t_powers(std::uint32_t p, std::size_t m) {
  if (m < 1) throw Error(ErrorKind::invalid_argument, "t-powers need m >= 1");
  std::vector<FFPoly> terms;
  for (std::size_t i = 0; i < m; ++i) terms.push_back(FFPoly::monomial(p, 1, i));
  return PolySequence(std::move(terms));
}

std::vector<FFPoly> ff_subset_sums(const PolySequence& r, std::size_t cap) {
  check_cap(r, cap);
  auto sums = sum_table(r);
  sums.erase(sums.begin());
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  return sums;
}

std::string PolySumCollision::describe() const {
  return detail::subset_text(first_mask) + " vs " + detail::subset_text(second_mask) + " (both sum to " +
         sum.to_string() + ")";
}

PolySumDistinctness ff_is_sum_distinct(const PolySequence& r, std::size_t cap) {
  check_cap(r, cap);
  const auto sums = sum_table(r);
  std::vector<std::uint32_t> order(sums.size() - 1);
  std::iota(order.begin(), order.end(), 1U);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return sums[a] < sums[b]; });
  std::optional<PolySumCollision> best;
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (sums[order[i]] != sums[order[i - 1]]) continue;
    if (i >= 2 && sums[order[i - 2]] == sums[order[i]]) continue;
    if (!best || order[i] < best->second_mask) best = PolySumCollision{order[i - 1], order[i], sums[order[i]]};
  }
  if (!best) return {};
  return {false, std::move(best)};
}

bool ff_is_chain(const PolySequence& r, std::uint64_t k, const IrreducibleModulus& f) {
  check_field(r, f);
  return !detail::first_window_failure<PolyRing>(r.terms(), PolyRing{&f, k}).has_value();
}

bool ff_is_cyclic_chain(const PolySequence& r, std::uint64_t k, const IrreducibleModulus& f) {
  check_field(r, f);
  return !detail::first_rotation_failure<PolyRing>(r.terms(), PolyRing{&f, k}).has_value();
}

ChainVerdict ff_is_permutation_chain(const PolySequence& r, std::uint64_t k, const IrreducibleModulus& f,
                                     std::size_t cap) {
  check_cap(r, cap);
  check_field(r, f);
  if (k == 0) throw Error(ErrorKind::invalid_argument, "k must be >= 1");
  return detail::verdict<PolyRing>(r.terms(), PolyRing{&f, k});
}

std::vector<IrreducibleModulus> find_chain_irreducibles(const PolySequence& r, std::uint64_t k, std::uint32_t p,
                                                        int max_degree, unsigned workers, std::size_t cap) {
  if (r.characteristic() != p) {
    throw Error(ErrorKind::characteristic_mismatch, "sequence is over GF(" + std::to_string(r.characteristic()) +
                                                        ") but the search is over GF(" + std::to_string(p) + ")");
  }
  if (k == 0) throw Error(ErrorKind::invalid_argument, "k must be >= 1");
  const auto distinct = ff_is_sum_distinct(r, cap);
  if (!distinct.distinct) {
    throw Error(ErrorKind::invalid_candidate, "sequence is not sum-distinct: " + distinct.collision->describe());
  }
  const PolyChainTester tester(r, k);
  std::vector<IrreducibleModulus> found;
  for (int d = 1; d <= max_degree; ++d) {
    const auto moduli = irreducibles_of_degree(p, d);
    std::vector<char> hit(moduli.size(), 0);
    const unsigned n = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(moduli.size())));
    auto work = [&](unsigned w) {
      for (std::size_t i = w; i < moduli.size(); i += n) hit[i] = tester(moduli[i]) ? 1 : 0;
    };
    if (n == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < n; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      if (hit[i]) found.push_back(moduli[i]);
    }
  }
  return found;
}

}  // namespace krc
