#pragma once

// Ring-generic chain checks shared by the integer and polynomial verifiers.
// A Ring adapter supplies:
//   Element            summand type
//   Key                reduced residue, totally ordered
//   Element add(const Element&, const Element&) const
//   Element zero() const
//   Key reduce(const Element&) const
//   bool is_residue(const Key&) const
//   std::string show(const Element&) const
//   std::string residue_phrase() const   e.g. "2nd power residue mod 7"
//   std::string modulus_text() const     e.g. "7"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "krchain/verdict.hpp"

namespace krc::detail {

inline std::string subset_text(std::uint32_t mask) {
  std::string out = "{";
  bool first = true;
  for (unsigned i = 0; i < 32; ++i) {
    if (!((mask >> i) & 1U)) continue;
    if (!first) out += ",";
    out += std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

inline std::string window_text(std::size_t i, std::size_t j) {
  return "r[" + std::to_string(i + 1) + ".." + std::to_string(j + 1) + "]";
}

/// Windows (i, j) are visited with i ascending, then j ascending; the first
/// window that repeats an earlier residue or is a non-residue is reported.
template <class Ring>
std::optional<FailureWitness> first_window_failure(std::span<const typename Ring::Element> terms,
                                                   const Ring& ring) {
  using Element = typename Ring::Element;
  using Key = typename Ring::Key;
  struct Seen {
    std::size_t i, j;
    Element sum;
  };
  std::map<Key, Seen> seen;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    Element sum = ring.zero();
    for (std::size_t j = i; j < terms.size(); ++j) {
      sum = ring.add(sum, terms[j]);
      Key key = ring.reduce(sum);
      if (auto it = seen.find(key); it != seen.end()) {
        return FailureWitness{FailureWitness::Kind::collision,
                              "window sums " + window_text(it->second.i, it->second.j) + " = " +
                                  ring.show(it->second.sum) + " and " + window_text(i, j) + " = " +
                                  ring.show(sum) + " coincide mod " + ring.modulus_text()};
      }
      if (!ring.is_residue(key)) {
        return FailureWitness{FailureWitness::Kind::non_residue,
                              "window sum " + ring.show(sum) + " is not a " + ring.residue_phrase()};
      }
      seen.emplace(std::move(key), Seen{i, j, sum});
    }
  }
  return std::nullopt;
}

template <class Ring>
std::optional<FailureWitness> first_rotation_failure(std::span<const typename Ring::Element> terms,
                                                     const Ring& ring) {
  using Element = typename Ring::Element;
  std::vector<Element> rotated(terms.begin(), terms.end());
  for (std::size_t start = 0; start < terms.size(); ++start) {
    for (std::size_t t = 0; t < terms.size(); ++t) rotated[t] = terms[(start + t) % terms.size()];
    if (auto failure = first_window_failure<Ring>(rotated, ring)) {
      if (start != 0) {
        failure->description =
            "rotation starting at r[" + std::to_string(start + 1) + "]: " + failure->description;
      }
      return failure;
    }
  }
  return std::nullopt;
}

/// All 2^m subset sums indexed by bitmask (index 0 holds the empty sum).
template <class Ring>
std::vector<typename Ring::Element> subset_sum_table(std::span<const typename Ring::Element> terms,
                                                     const Ring& ring) {
  const std::size_t count = std::size_t{1} << terms.size();
  std::vector<typename Ring::Element> sums;
  sums.reserve(count);
  sums.push_back(ring.zero());
  for (std::size_t mask = 1; mask < count; ++mask) {
    const auto low = static_cast<std::size_t>(__builtin_ctzll(mask));
    sums.push_back(ring.add(sums[mask & (mask - 1)], terms[low]));
  }
  return sums;
}

/// Permutation-chain check over the nonempty subset sums, visited in mask order.
template <class Ring>
std::optional<FailureWitness> first_subset_failure(std::span<const typename Ring::Element> terms,
                                                   const Ring& ring) {
  const auto sums = subset_sum_table(terms, ring);
  std::map<typename Ring::Key, std::uint32_t> seen;
  for (std::size_t mask = 1; mask < sums.size(); ++mask) {
    auto key = ring.reduce(sums[mask]);
    const auto m32 = static_cast<std::uint32_t>(mask);
    if (auto it = seen.find(key); it != seen.end()) {
      return FailureWitness{FailureWitness::Kind::collision,
                            "subset sums " + subset_text(it->second) + " = " + ring.show(sums[it->second]) +
                                " and " + subset_text(m32) + " = " + ring.show(sums[mask]) +
                                " coincide mod " + ring.modulus_text()};
    }
    if (!ring.is_residue(key)) {
      return FailureWitness{FailureWitness::Kind::non_residue,
                            "subset sum " + subset_text(m32) + " = " + ring.show(sums[mask]) +
                                " is not a " + ring.residue_phrase()};
    }
    seen.emplace(std::move(key), m32);
  }
  return std::nullopt;
}

/// Full verdict: the witness comes from the weakest level that fails.
template <class Ring>
ChainVerdict verdict(std::span<const typename Ring::Element> terms, const Ring& ring) {
  ChainVerdict v;
  if (auto failure = first_window_failure<Ring>(terms, ring)) {
    v.failure_witness = std::move(failure);
    return v;
  }
  v.is_chain = true;
  if (auto failure = first_rotation_failure<Ring>(terms, ring)) {
    v.failure_witness = std::move(failure);
    return v;
  }
  v.is_cyclic = true;
  if (auto failure = first_subset_failure<Ring>(terms, ring)) {
    v.failure_witness = std::move(failure);
    return v;
  }
  v.is_permutation = true;
  return v;
}

}  // namespace krc::detail
