#include <doctest.h>

#include <random>

#include "krchain/error.hpp"
#include "krchain/ffield.hpp"
#include "oracles.hpp"

using namespace krc;

namespace {

FFPoly P(const char* text) { return FFPoly::parse(text); }

oracle::Coeffs raw(const FFPoly& f) { return {f.coeffs().begin(), f.coeffs().end()}; }

}  // namespace

TEST_CASE("FFPoly text form") {
  CHECK(P("GF(3)[1,0,1]").to_string() == "GF(3)[1,0,1]");
  CHECK(P("GF(3)[1,0,1]").degree() == 2);
  CHECK(P("GF(5)[2,0,0]").to_string() == "GF(5)[2]");
  CHECK(P("GF(5)[]").is_zero());
  CHECK(FFPoly::zero(7).to_string() == "GF(7)[]");
  for (const char* bad : {"GF(4)[1]", "GF(3)[3]", "GF(3)[1,]", "GF(3)1,2]", "gf(3)[1]", "GF(3)[1] ", "GF(3)[-1]"}) {
    CHECK_THROWS_AS(FFPoly::parse(bad), Error);
  }
  CHECK_THROWS_AS(FFPoly(3, {0, 5}), Error);
}

TEST_CASE("poly arithmetic") {
  CHECK(P("GF(2)[1,1]") * P("GF(2)[1,1]") == P("GF(2)[1,0,1]"));
  const auto dm = divmod(P("GF(3)[1,0,1]"), P("GF(3)[0,1]"));
  CHECK(dm.quotient == P("GF(3)[0,1]"));
  CHECK(dm.remainder == P("GF(3)[1]"));
  // t^9 = t * (t^2)^4 = t * (-1)^4 = t mod t^2 + 1 over F_3
  CHECK(powmod(P("GF(3)[0,1]"), 9, P("GF(3)[1,0,1]")) == P("GF(3)[0,1]"));
  CHECK(P("GF(5)[1,2]") - P("GF(5)[1,2]") == FFPoly::zero(5));
  CHECK_THROWS_AS(divmod(P("GF(3)[1]"), FFPoly::zero(3)), Error);
  CHECK_THROWS_AS(P("GF(3)[1]") + P("GF(5)[1]"), Error);
  CHECK(gcd(P("GF(5)[4,0,1]"), P("GF(5)[1,1]")) == P("GF(5)[1,1]"));
  CHECK(gcd(P("GF(5)[4,0,1]"), P("GF(5)[3,1]")) == P("GF(5)[1]"));

  SUBCASE("divmod identity on random inputs") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 300; ++trial) {
      const std::uint32_t p = std::vector<std::uint32_t>{2, 3, 5, 7, 13}[rng() % 5];
      auto rnd = [&](std::size_t n) {
        std::vector<std::uint32_t> c(n);
        for (auto& x : c) x = static_cast<std::uint32_t>(rng() % p);
        return FFPoly(p, c);
      };
      const FFPoly a = rnd(rng() % 9), b = rnd(1 + rng() % 5);
      if (b.is_zero()) continue;
      const auto qr = divmod(a, b);
      REQUIRE(qr.quotient * b + qr.remainder == a);
      REQUIRE(qr.remainder.degree() < b.degree());
    }
  }
}

TEST_CASE("is_irreducible") {
  CHECK(is_irreducible(P("GF(3)[1,0,1]")));
  CHECK_FALSE(is_irreducible(P("GF(5)[1,0,1]")));
  for (std::uint32_t p : {2U, 3U, 5U, 7U}) CHECK(is_irreducible(FFPoly::monomial(p, 1, 1)));
  CHECK_THROWS_AS(is_irreducible(P("GF(3)[2]")), Error);
  CHECK_THROWS_AS(IrreducibleModulus(P("GF(5)[1,0,1]")), Error);
  CHECK_THROWS_AS(IrreducibleModulus(P("GF(3)[1,0,2]")), Error);  // not monic

  SUBCASE("Rabin test agrees with multiplying out factor pairs, degree <= 4") {
    for (std::uint32_t p : {2U, 3U, 5U}) {
      for (int d = 1; d <= 4; ++d) {
        for (const auto& f : oracle::residue_field(p, static_cast<std::size_t>(d))) {
          auto c = f;
          c.resize(static_cast<std::size_t>(d), 0);
          c.push_back(1);
          std::vector<std::uint32_t> c32(c.begin(), c.end());
          REQUIRE(is_irreducible(FFPoly(p, c32)) == oracle::irreducible_by_products(c, p));
        }
      }
    }
  }
}

TEST_CASE("irreducibles_of_degree") {
  const auto two_one = irreducibles_of_degree(2, 1);
  REQUIRE(two_one.size() == 2);
  CHECK(two_one[0].poly() == P("GF(2)[0,1]"));
  CHECK(two_one[1].poly() == P("GF(2)[1,1]"));
  const auto two_two = irreducibles_of_degree(2, 2);
  REQUIRE(two_two.size() == 1);
  CHECK(two_two[0].poly() == P("GF(2)[1,1,1]"));
  CHECK(irreducibles_of_degree(3, 2).size() == 3);

  for (std::uint32_t p : {2U, 3U, 5U}) {
    for (int d = 1; d <= 6; ++d) {
      const auto list = irreducibles_of_degree(p, d);
      REQUIRE(static_cast<long long>(list.size()) == oracle::necklace_count(p, d));
      for (std::size_t i = 1; i < list.size(); ++i) {
        // index order: compare coefficient d-1 first
        std::vector<std::uint32_t> a(list[i - 1].poly().coeffs().begin(), list[i - 1].poly().coeffs().end());
        std::vector<std::uint32_t> b(list[i].poly().coeffs().begin(), list[i].poly().coeffs().end());
        REQUIRE(std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend()));
      }
      if (d == 5) {
        for (const auto& f : list) REQUIRE(is_irreducible(f.poly()));
      }
    }
  }
}

TEST_CASE("is_kth_residue_ff") {
  const IrreducibleModulus f(P("GF(3)[1,0,1]"));
  // Squares in the 9-element field F_3[t]/(t^2 + 1).
  const auto squares = oracle::kth_powers_mod_poly(raw(f.poly()), 3, 2);
  CHECK(is_kth_residue_ff(P("GF(3)[0,1]"), 2, f) == (squares.count({0, 1}) == 1));
  for (std::uint64_t k = 1; k <= 12; ++k) CHECK(is_kth_residue_ff(P("GF(3)[1]"), k, f));
  for (const auto& x : oracle::residue_field(3, 2)) {
    std::vector<std::uint32_t> c(x.begin(), x.end());
    CHECK(is_kth_residue_ff(FFPoly(3, c), 3, f));  // k = p: every element
  }
  CHECK_THROWS_AS(is_kth_residue_ff(P("GF(3)[1]"), 0, f), Error);
  CHECK_THROWS_AS(is_kth_residue_ff(P("GF(5)[1]"), 2, f), Error);
  CHECK(strip_characteristic(18, 3) == 2);
  CHECK(strip_characteristic(81, 3) == 1);
}

TEST_CASE("residue test and char-p reduction agree with enumeration, field size <= 81") {
  for (std::uint32_t p : {2U, 3U, 5U, 7U}) {
    for (int d = 1; d <= 4; ++d) {
      UInt q = 1;
      for (int i = 0; i < d; ++i) q *= p;
      if (q > 81) break;
      for (const auto& f : irreducibles_of_degree(p, d)) {
        const auto fr = raw(f.poly());
        for (std::uint64_t k = 1; k <= 27; ++k) {
          const auto powers = oracle::kth_powers_mod_poly(fr, p, k);
          const std::uint64_t kp = strip_characteristic(k, p);
          for (const auto& x : oracle::residue_field(p, static_cast<std::size_t>(d))) {
            const FFPoly a(p, std::vector<std::uint32_t>(x.begin(), x.end()));
            const bool expected = powers.count(x) == 1;
            REQUIRE(is_kth_residue_ff(a, k, f) == expected);
            REQUIRE(is_kth_residue_ff(a, kp, f) == expected);
          }
        }
      }
    }
  }
}

TEST_CASE("Frobenius is a bijection of the residue field") {
  for (std::uint32_t p : {2U, 3U, 5U}) {
    for (int d = 1; d <= 4; ++d) {
      UInt q = 1;
      for (int i = 0; i < d; ++i) q *= p;
      if (q > 81) break;
      const auto f = irreducibles_of_degree(p, d).front();
      std::set<FFPoly> images;
      for (const auto& x : oracle::residue_field(p, static_cast<std::size_t>(d))) {
        images.insert(powmod(FFPoly(p, std::vector<std::uint32_t>(x.begin(), x.end())), p, f.poly()));
      }
      CHECK(images.size() == static_cast<std::size_t>(q));
    }
  }
}

TEST_CASE("polynomial chains") {
  for (std::uint32_t p : {2U, 3U, 5U, 7U}) CHECK(ff_is_sum_distinct(t_powers(p, 3)).distinct);
  const PolySequence constants({P("GF(3)[1]"), P("GF(3)[2]")});
  CHECK(ff_is_sum_distinct(constants).distinct);
  CHECK(ff_subset_sums(constants) == std::vector<FFPoly>{FFPoly::zero(3), P("GF(3)[1]"), P("GF(3)[2]")});
  const PolySequence colliding({P("GF(3)[1]"), P("GF(3)[1]"), P("GF(3)[2]")});
  const auto d = ff_is_sum_distinct(colliding);
  CHECK_FALSE(d.distinct);
  CHECK(d.collision->describe() == "{1} vs {2} (both sum to GF(3)[1])");
  CHECK_THROWS_AS(PolySequence({P("GF(3)[1]"), P("GF(5)[1]")}), Error);

  SUBCASE("k = p^2 only needs distinctness for degree >= 3") {
    for (std::uint32_t p : {2U, 3U, 5U}) {
      const auto r = t_powers(p, 3);
      for (int deg = 3; deg <= 4; ++deg) {
        for (const auto& f : irreducibles_of_degree(p, deg)) {
          const auto v = ff_is_permutation_chain(r, static_cast<std::uint64_t>(p) * p, f);
          CHECK(v.is_permutation);  // the 7 sums have degree < 3 <= deg, so stay distinct
        }
      }
    }
  }

  SUBCASE("verdict hierarchy, permutation invariance, brute-force agreement") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 150; ++trial) {
      const std::uint32_t p = rng() % 2 ? 3 : 5;
      const int deg = 1 + static_cast<int>(rng() % 2);
      const auto moduli = irreducibles_of_degree(p, deg);
      const auto& f = moduli[rng() % moduli.size()];
      std::vector<FFPoly> terms;
      for (std::size_t i = 0, m = 1 + rng() % 3; i < m; ++i) {
        terms.push_back(FFPoly(p, {static_cast<std::uint32_t>(rng() % p), static_cast<std::uint32_t>(rng() % p),
                                   static_cast<std::uint32_t>(rng() % p)}));
      }
      const std::uint64_t k = 1 + rng() % 4;
      const auto v = ff_is_permutation_chain(PolySequence(terms), k, f);
      if (v.is_permutation) REQUIRE(v.is_cyclic);
      if (v.is_cyclic) REQUIRE(v.is_chain);
      REQUIRE(v.is_chain == ff_is_chain(PolySequence(terms), k, f));
      REQUIRE(v.is_cyclic == ff_is_cyclic_chain(PolySequence(terms), k, f));

      // Literal definition over all orderings with enumerated kth powers.
      const auto powers = oracle::kth_powers_mod_poly(raw(f.poly()), p, k);
      std::vector<std::size_t> idx(terms.size());
      std::iota(idx.begin(), idx.end(), 0);
      bool literal = true;
      do {
        std::set<oracle::Coeffs> seen;
        for (std::size_t i = 0; i < idx.size() && literal; ++i) {
          FFPoly s = FFPoly::zero(p);
          for (std::size_t j = i; j < idx.size(); ++j) {
            s = s + terms[idx[j]];
            const auto red = oracle::rem_monic(raw(s), raw(f.poly()), p);
            if (!powers.count(red) || !seen.insert(red).second) {
              literal = false;
              break;
            }
          }
        }
        if (v.is_permutation) {
          std::vector<FFPoly> shuffled;
          for (auto i : idx) shuffled.push_back(terms[i]);
          REQUIRE(ff_is_permutation_chain(PolySequence(shuffled), k, f).is_permutation);
        }
      } while (literal && std::next_permutation(idx.begin(), idx.end()));
      REQUIRE(v.is_permutation == literal);
    }
  }
}

TEST_CASE("find_chain_irreducibles") {
  SUBCASE("k = p: exactly the moduli keeping the 7 sums distinct") {
    const auto r = t_powers(3, 3);
    const auto found = find_chain_irreducibles(r, 3, 3, 4);
    std::vector<FFPoly> expected;
    for (int d = 1; d <= 4; ++d) {
      for (const auto& f : irreducibles_of_degree(3, d)) {
        std::set<oracle::Coeffs> reduced;
        for (std::uint32_t mask = 1; mask < 8; ++mask) {
          oracle::Coeffs s(3, 0);
          for (int i = 0; i < 3; ++i) {
            if ((mask >> i) & 1U) s[static_cast<std::size_t>(i)] = 1;
          }
          reduced.insert(oracle::rem_monic(s, raw(f.poly()), 3));
        }
        if (reduced.size() == 7) expected.push_back(f.poly());
      }
    }
    REQUIRE(found.size() == expected.size());
    for (std::size_t i = 0; i < found.size(); ++i) CHECK(found[i].poly() == expected[i]);
  }

  SUBCASE("k = 2, p = 5, degree <= 2 is nonempty and brute-force verified") {
    const auto r = t_powers(5, 3);
    const auto found = find_chain_irreducibles(r, 2, 5, 2);
    CHECK_FALSE(found.empty());
    for (const auto& f : found) {
      const auto squares = oracle::kth_powers_mod_poly(raw(f.poly()), 5, 2);
      for (std::uint32_t mask = 1; mask < 8; ++mask) {
        oracle::Coeffs s(3, 0);
        for (int i = 0; i < 3; ++i) {
          if ((mask >> i) & 1U) s[static_cast<std::size_t>(i)] = 1;
        }
        CHECK(squares.count(oracle::rem_monic(s, raw(f.poly()), 5)) == 1);
      }
    }
  }

  SUBCASE("powers of t admit chain moduli for p <= 5, m <= 3, k <= 4") {
    for (std::uint32_t p : {2U, 3U, 5U}) {
      for (std::size_t m = 1; m <= 3; ++m) {
        for (std::uint64_t k = 1; k <= 4; ++k) {
          INFO("p=" << p << " m=" << m << " k=" << k);
          CHECK_FALSE(find_chain_irreducibles(t_powers(p, m), k, p, 6).empty());
        }
      }
    }
  }

  SUBCASE("errors and worker determinism") {
    const PolySequence colliding({P("GF(3)[1]"), P("GF(3)[1]")});
    CHECK_THROWS_AS(find_chain_irreducibles(colliding, 2, 3, 3), Error);
    CHECK_THROWS_AS(find_chain_irreducibles(t_powers(3, 2), 2, 5, 3), Error);
    const auto one = find_chain_irreducibles(t_powers(5, 3), 2, 5, 5, 1);
    const auto many = find_chain_irreducibles(t_powers(5, 3), 2, 5, 5, 4);
    CHECK(one == many);
  }
}
