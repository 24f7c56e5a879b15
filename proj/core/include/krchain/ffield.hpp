#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "krchain/chains.hpp"
#include "krchain/int128.hpp"
#include "krchain/verdict.hpp"

namespace krc {

/// Dense polynomial over the prime field F_p, lowest degree first, with no
/// trailing zero coefficients (the zero polynomial has no coefficients).
///
/// Text form is `GF(p)[c0,c1,...]`, e.g. `GF(3)[1,0,1]` for t^2 + 1 over F_3;
/// the zero polynomial prints as `GF(p)[]`.
class FFPoly {
 public:
  /// Validates that p is prime (p < 2^32) and every coefficient is in [0, p);
  /// trailing zeros are dropped.
  FFPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs);

  static FFPoly zero(std::uint32_t p);
  static FFPoly constant(std::uint32_t p, std::uint64_t c);
  /// c * t^degree.
  static FFPoly monomial(std::uint32_t p, std::uint64_t c, std::size_t degree);

  /// Parses the `GF(p)[...]` form; throws Error(parse) naming the literal.
  static FFPoly parse(std::string_view text);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::span<const std::uint32_t> coeffs() const noexcept { return c_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }
  std::uint32_t leading() const noexcept { return c_.empty() ? 0 : c_.back(); }
  std::uint32_t coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }

  std::string to_string() const;

  friend bool operator==(const FFPoly&, const FFPoly&) = default;
  friend std::strong_ordering operator<=>(const FFPoly& a, const FFPoly& b);

  friend FFPoly operator+(const FFPoly& a, const FFPoly& b);
  friend FFPoly operator-(const FFPoly& a, const FFPoly& b);
  friend FFPoly operator*(const FFPoly& a, const FFPoly& b);

 private:
  struct Unchecked {};
  FFPoly(Unchecked, std::uint32_t p, std::vector<std::uint32_t> coeffs);
  void trim();

  std::uint32_t p_;
  std::vector<std::uint32_t> c_;

  friend struct PolyOps;
};

struct PolyDivMod {
  FFPoly quotient;
  FFPoly remainder;
};

/// Throws Error(division_by_zero) or Error(characteristic_mismatch).
PolyDivMod divmod(const FFPoly& a, const FFPoly& b);
FFPoly mod(const FFPoly& a, const FFPoly& b);
/// base^e mod modulus, square-and-multiply.
FFPoly powmod(const FFPoly& base, UInt e, const FFPoly& modulus);
/// Monic gcd (zero if both inputs are zero).
FFPoly gcd(const FFPoly& a, const FFPoly& b);
FFPoly make_monic(const FFPoly& a);

/// Irreducibility over F_p by Rabin's test: t^(p^d) = t mod f and
/// gcd(t^(p^(d/l)) - t, f) = 1 for every prime l | d. Non-monic input is
/// normalized first. Throws Error(invalid_argument) for constants.
bool is_irreducible(const FFPoly& f);

/// A monic irreducible f; F_p[t]/(f) is the residue field of size p^deg f.
class IrreducibleModulus {
 public:
  /// Throws Error(invalid_argument) unless f is monic and irreducible.
  explicit IrreducibleModulus(FFPoly f);

  const FFPoly& poly() const noexcept { return f_; }
  std::uint32_t characteristic() const noexcept { return f_.characteristic(); }
  int degree() const noexcept { return f_.degree(); }
  /// p^d; Error(overflow) if it does not fit in 128 bits.
  UInt field_size() const;

  friend bool operator==(const IrreducibleModulus&, const IrreducibleModulus&) = default;

 private:
  struct Trusted {};
  IrreducibleModulus(Trusted, FFPoly f) : f_(std::move(f)) {}

  FFPoly f_;

  friend std::vector<IrreducibleModulus> irreducibles_of_degree(std::uint32_t, int);
};

/// All monic irreducibles of degree d over F_p. Order: monics are indexed by
/// the base-p number c_{d-1} ... c_1 c_0, ascending, so (2, 1) gives t, t + 1.
/// Degrees <= 4 sieve all monics against lower-degree irreducibles; larger
/// degrees use Rabin's test.
std::vector<IrreducibleModulus> irreducibles_of_degree(std::uint32_t p, int d);

/// k with every factor of p removed.
std::uint64_t strip_characteristic(std::uint64_t k, std::uint32_t p);

/// x^k = a solvable in F_p[t]/(f). k is first reduced to its prime-to-p part
/// k', since x -> x^p is a bijection of the residue field. Then 0 is a
/// residue and a != 0 is one iff a^((q-1)/gcd(k', q-1)) = 1, q = p^d.
/// Throws Error(invalid_argument) for k = 0, Error(characteristic_mismatch).
bool is_kth_residue_ff(const FFPoly& a, std::uint64_t k, const IrreducibleModulus& f);

/// r_1, ..., r_m in F_p[t], nonempty and of a single characteristic.
class PolySequence {
 public:
  explicit PolySequence(std::vector<FFPoly> terms);

  std::span<const FFPoly> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  std::uint32_t characteristic() const noexcept { return terms_.front().characteristic(); }

 private:
  std::vector<FFPoly> terms_;
};

/// 1, t, ..., t^(m-1) over F_p.
PolySequence t_powers(std::uint32_t p, std::size_t m);

/// Distinct nonempty subset sums, ascending.
std::vector<FFPoly> ff_subset_sums(const PolySequence& r, std::size_t cap = kDefaultTermCap);

struct PolySumCollision {
  std::uint32_t first_mask;
  std::uint32_t second_mask;
  FFPoly sum;

  std::string describe() const;
};

struct PolySumDistinctness {
  bool distinct = true;
  std::optional<PolySumCollision> collision;
};

PolySumDistinctness ff_is_sum_distinct(const PolySequence& r, std::size_t cap = kDefaultTermCap);

bool ff_is_chain(const PolySequence& r, std::uint64_t k, const IrreducibleModulus& f);
bool ff_is_cyclic_chain(const PolySequence& r, std::uint64_t k, const IrreducibleModulus& f);
ChainVerdict ff_is_permutation_chain(const PolySequence& r, std::uint64_t k, const IrreducibleModulus& f,
                                     std::size_t cap = kDefaultTermCap);

/// Monic irreducibles of degree <= max_degree realizing r as a permutation
/// chain, ordered by degree then as in irreducibles_of_degree.
/// Throws Error(invalid_candidate) when r is not sum-distinct and
/// Error(characteristic_mismatch) when p differs from r's characteristic.
std::vector<IrreducibleModulus> find_chain_irreducibles(const PolySequence& r, std::uint64_t k, std::uint32_t p,
                                                        int max_degree, unsigned workers = 1,
                                                        std::size_t cap = kDefaultTermCap);

}  // namespace krc
