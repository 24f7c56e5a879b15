#pragma once

#include <optional>
#include <string>

namespace krc {

/// First violated condition found by a chain verifier.
struct FailureWitness {
  enum class Kind { non_residue, collision };

  Kind kind;
  std::string description;
};

/// Outcome of verifying one candidate against one prime modulus.
/// Invariant: is_permutation implies is_cyclic implies is_chain.
struct ChainVerdict {
  bool is_chain = false;
  bool is_cyclic = false;
  bool is_permutation = false;
  /// Set when is_permutation is false; describes the weakest failing level.
  std::optional<FailureWitness> failure_witness;
};

/// "1st", "2nd", "3rd", "4th", "11th", ...
std::string ordinal(unsigned long long n);

}  // namespace krc
