#pragma once

// Brute-force references for the tests. Nothing here calls into the
// residue, subset-sum, elimination or irreducibility code it is compared with.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

inline bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> primes_trial(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q <= n; ++q) {
    if (is_prime_trial(q)) out.push_back(q);
  }
  return out;
}

/// {x^k mod p : x in [0, p)} by repeated multiplication.
inline std::set<std::uint64_t> kth_powers_mod(std::uint64_t p, std::uint64_t k) {
  std::set<std::uint64_t> out;
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t v = 1 % p;
    for (std::uint64_t i = 0; i < k; ++i) v = v * x % p;
    out.insert(v);
  }
  return out;
}

inline std::uint64_t reduce(long long a, std::uint64_t p) {
  long long r = a % static_cast<long long>(p);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(p) : r);
}

/// Window sums over every ordering of `terms`.
inline std::set<long long> window_sums_all_orderings(std::vector<long long> terms) {
  std::set<long long> out;
  std::sort(terms.begin(), terms.end());
  do {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      long long s = 0;
      for (std::size_t j = i; j < terms.size(); ++j) {
        s += terms[j];
        out.insert(s);
      }
    }
  } while (std::next_permutation(terms.begin(), terms.end()));
  return out;
}

/// Literal definition: the window sums of one ordering are distinct kth power residues mod p.
inline bool chain_literal(const std::vector<long long>& terms, std::uint64_t k, std::uint64_t p,
                          const std::set<std::uint64_t>& powers) {
  std::set<std::uint64_t> seen;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    long long s = 0;
    for (std::size_t j = i; j < terms.size(); ++j) {
      s += terms[j];
      const auto r = reduce(s, p);
      if (!powers.count(r) || !seen.insert(r).second) return false;
    }
  }
  (void)k;
  return true;
}

inline bool permutation_chain_literal(std::vector<long long> terms, std::uint64_t k, std::uint64_t p) {
  const auto powers = kth_powers_mod(p, k);
  std::vector<std::size_t> idx(terms.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<long long> ordered(terms.size());
  do {
    for (std::size_t i = 0; i < idx.size(); ++i) ordered[i] = terms[idx[i]];
    if (!chain_literal(ordered, k, p, powers)) return false;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return true;
}

/// Order of the subgroup of (Z/k)^n generated by `rows`, by closure.
inline std::size_t subgroup_order_closure(const std::vector<std::vector<std::uint64_t>>& rows, std::uint64_t k) {
  if (rows.empty()) return 1;
  const std::size_t n = rows.front().size();
  std::set<std::vector<std::uint64_t>> group{std::vector<std::uint64_t>(n, 0)};
  std::vector<std::vector<std::uint64_t>> frontier{std::vector<std::uint64_t>(n, 0)};
  while (!frontier.empty()) {
    std::vector<std::vector<std::uint64_t>> next;
    for (const auto& v : frontier) {
      for (const auto& g : rows) {
        std::vector<std::uint64_t> w(n);
        for (std::size_t j = 0; j < n; ++j) w[j] = (v[j] + g[j]) % k;
        if (group.insert(w).second) next.push_back(std::move(w));
      }
    }
    frontier = std::move(next);
  }
  return group.size();
}

inline int mobius(int n) {
  int result = 1;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

/// Number of monic irreducibles of degree d over F_p.
inline long long necklace_count(long long p, int d) {
  long long total = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e != 0) continue;
    long long pw = 1;
    for (int i = 0; i < d / e; ++i) pw *= p;
    total += mobius(e) * pw;
  }
  return total / d;
}

// --- tiny F_p[t] helpers on raw coefficient vectors (lowest first) ---

using Coeffs = std::vector<std::uint64_t>;

inline Coeffs trim(Coeffs c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

inline Coeffs mul(const Coeffs& a, const Coeffs& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Coeffs c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  return trim(c);
}

/// Remainder modulo a monic f.
inline Coeffs rem_monic(Coeffs a, const Coeffs& f, std::uint64_t p) {
  a = trim(a);
  const std::size_t d = f.size() - 1;
  while (a.size() > d) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - d;
    for (std::size_t j = 0; j <= d; ++j) a[shift + j] = (a[shift + j] + (p - lead) * f[j]) % p;
    a = trim(a);
  }
  return a;
}

/// All p^d residues (polynomials of degree < d), as trimmed vectors.
inline std::vector<Coeffs> residue_field(std::uint64_t p, std::size_t d) {
  std::vector<Coeffs> out;
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < d; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Coeffs c(d, 0);
    std::uint64_t v = idx;
    for (std::size_t i = 0; i < d; ++i) {
      c[i] = v % p;
      v /= p;
    }
    out.push_back(trim(c));
  }
  return out;
}

/// {x^k mod f} over the residue field of monic f by repeated multiplication.
inline std::set<Coeffs> kth_powers_mod_poly(const Coeffs& f, std::uint64_t p, std::uint64_t k) {
  std::set<Coeffs> out;
  for (const auto& x : residue_field(p, f.size() - 1)) {
    Coeffs v{1};
    for (std::uint64_t i = 0; i < k; ++i) v = rem_monic(mul(v, x, p), f, p);
    out.insert(v);
  }
  return out;
}

/// Monic f of degree d is irreducible iff it is not a product of two monics of
/// positive degree; checked by multiplying out every such pair.
inline bool irreducible_by_products(const Coeffs& f, std::uint64_t p) {
  const std::size_t d = f.size() - 1;
  if (d <= 1) return d == 1;
  for (std::size_t e = 1; e <= d / 2; ++e) {
    for (auto g : residue_field(p, e)) {
      g.resize(e, 0);
      g.push_back(1);
      for (auto h : residue_field(p, d - e)) {
        h.resize(d - e, 0);
        h.push_back(1);
        if (mul(g, h, p) == trim(f)) return false;
      }
    }
  }
  return true;
}

}  // namespace oracle
