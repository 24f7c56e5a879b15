#include "krchain/ffield.hpp"

#include <algorithm>
#include <numeric>

#include "krchain/arith.hpp"
#include "krchain/error.hpp"

namespace krc {

struct PolyOps {
  static FFPoly make(std::uint32_t p, std::vector<std::uint32_t> c) {
    return FFPoly(FFPoly::Unchecked{}, p, std::move(c));
  }
  static std::uint32_t inverse(std::uint32_t a, std::uint32_t p) {
    return static_cast<std::uint32_t>(mod_pow_u64(a, p - 2, p));
  }
};

namespace {

void require_same_field(const FFPoly& a, const FFPoly& b) {
  if (a.characteristic() != b.characteristic()) {
    throw Error(ErrorKind::characteristic_mismatch,
                "characteristic mismatch: " + a.to_string() + " vs " + b.to_string());
  }
}

std::uint32_t mulp(std::uint64_t a, std::uint64_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(a * b % p);
}

}  // namespace

FFPoly::FFPoly(Unchecked, std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  trim();
}

FFPoly::FFPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  if (!is_prime(static_cast<std::uint64_t>(p))) {
    throw Error(ErrorKind::invalid_argument, "characteristic " + std::to_string(p) + " is not prime");
  }
  for (const auto c : c_) {
    if (c >= p) {
      throw Error(ErrorKind::invalid_argument,
                  "coefficient " + std::to_string(c) + " is outside [0, " + std::to_string(p) + ")");
    }
  }
  trim();
}

void FFPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FFPoly FFPoly::zero(std::uint32_t p) { return FFPoly(p, {}); }

FFPoly FFPoly::constant(std::uint32_t p, std::uint64_t c) {
  return FFPoly(p, {static_cast<std::uint32_t>(c % p)});
}

FFPoly FFPoly::monomial(std::uint32_t p, std::uint64_t c, std::size_t degree) {
  std::vector<std::uint32_t> coeffs(degree + 1, 0);
  coeffs[degree] = static_cast<std::uint32_t>(c % p);
  return FFPoly(p, std::move(coeffs));
}

FFPoly FFPoly::parse(std::string_view text) {
  const std::string shown(text);
  auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorKind::parse, "malformed polynomial '" + shown + "': " + why);
  };
  auto read_number = [&](std::size_t& pos) -> std::uint64_t {
    const std::size_t start = pos;
    std::uint64_t v = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      if (v > (UINT32_MAX - static_cast<std::uint64_t>(text[pos] - '0')) / 10) throw fail("number too large");
      v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
      ++pos;
    }
    if (pos == start) throw fail("expected a decimal number at offset " + std::to_string(start));
    return v;
  };
  if (text.substr(0, 3) != "GF(") throw fail("expected prefix 'GF('");
  std::size_t pos = 3;
  const std::uint64_t p = read_number(pos);
  if (text.substr(pos, 2) != ")[") throw fail("expected ')[' after the characteristic");
  pos += 2;
  if (!is_prime(p)) throw fail("characteristic " + std::to_string(p) + " is not prime");
  std::vector<std::uint32_t> coeffs;
  if (pos < text.size() && text[pos] == ']') {
    ++pos;
  } else {
    for (;;) {
      const std::uint64_t c = read_number(pos);
      if (c >= p) throw fail("coefficient " + std::to_string(c) + " is not below " + std::to_string(p));
      coeffs.push_back(static_cast<std::uint32_t>(c));
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == ']') {
        ++pos;
        break;
      }
      throw fail("expected ',' or ']'");
    }
  }
  if (pos != text.size()) throw fail("trailing characters");
  return FFPoly(static_cast<std::uint32_t>(p), std::move(coeffs));
}

std::string FFPoly::to_string() const {
  std::string out = "GF(" + std::to_string(p_) + ")[";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c_[i]);
  }
  return out + "]";
}

std::strong_ordering operator<=>(const FFPoly& a, const FFPoly& b) {
  if (auto c = a.p_ <=> b.p_; c != 0) return c;
  if (auto c = a.c_.size() <=> b.c_.size(); c != 0) return c;
  for (std::size_t i = a.c_.size(); i-- > 0;) {
    if (auto c = a.c_[i] <=> b.c_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

FFPoly operator+(const FFPoly& a, const FFPoly& b) {
  require_same_field(a, b);
  const std::uint32_t p = a.p_;
  std::vector<std::uint32_t> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = static_cast<std::uint32_t>((std::uint64_t{a.coeff(i)} + b.coeff(i)) % p);
  }
  return PolyOps::make(p, std::move(c));
}

FFPoly operator-(const FFPoly& a, const FFPoly& b) {
  require_same_field(a, b);
  const std::uint32_t p = a.p_;
  std::vector<std::uint32_t> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = static_cast<std::uint32_t>((std::uint64_t{a.coeff(i)} + p - b.coeff(i)) % p);
  }
  return PolyOps::make(p, std::move(c));
}

FFPoly operator*(const FFPoly& a, const FFPoly& b) {
  require_same_field(a, b);
  const std::uint32_t p = a.p_;
  if (a.is_zero() || b.is_zero()) return PolyOps::make(p, {});
  std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      acc[i + j] = (acc[i + j] + std::uint64_t{a.c_[i]} * b.c_[j]) % p;
    }
  }
  return PolyOps::make(p, std::vector<std::uint32_t>(acc.begin(), acc.end()));
}

PolyDivMod divmod(const FFPoly& a, const FFPoly& b) {
  require_same_field(a, b);
  if (b.is_zero()) throw Error(ErrorKind::division_by_zero, "division by the zero polynomial");
  const std::uint32_t p = a.characteristic();
  std::vector<std::uint32_t> rem(a.coeffs().begin(), a.coeffs().end());
  const auto bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  if (rem.size() < bc.size()) return {PolyOps::make(p, {}), a};
  std::vector<std::uint32_t> quot(rem.size() - db, 0);
  const std::uint32_t inv = PolyOps::inverse(b.leading(), p);
  for (std::size_t i = rem.size(); i-- > db;) {
    if (rem[i] == 0) continue;
    const std::uint32_t q = mulp(rem[i], inv, p);
    quot[i - db] = q;
    for (std::size_t j = 0; j <= db; ++j) {
      rem[i - db + j] = static_cast<std::uint32_t>((rem[i - db + j] + p - mulp(q, bc[j], p)) % p);
    }
  }
  rem.resize(db);
  return {PolyOps::make(p, std::move(quot)), PolyOps::make(p, std::move(rem))};
}

FFPoly mod(const FFPoly& a, const FFPoly& b) { return divmod(a, b).remainder; }

FFPoly powmod(const FFPoly& base, UInt e, const FFPoly& modulus) {
  FFPoly result = mod(FFPoly::constant(modulus.characteristic(), 1), modulus);
  FFPoly b = mod(base, modulus);
  while (e != 0) {
    if (e & 1) result = mod(result * b, modulus);
    e >>= 1;
    if (e != 0) b = mod(b * b, modulus);
  }
  return result;
}

FFPoly make_monic(const FFPoly& a) {
  if (a.is_zero() || a.is_monic()) return a;
  const std::uint32_t p = a.characteristic();
  return a * PolyOps::make(p, {PolyOps::inverse(a.leading(), p)});
}

FFPoly gcd(const FFPoly& a, const FFPoly& b) {
  require_same_field(a, b);
  FFPoly x = a, y = b;
  while (!y.is_zero()) {
    FFPoly r = mod(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return make_monic(x);
}

bool is_irreducible(const FFPoly& f_in) {
  if (f_in.degree() < 1) {
    throw Error(ErrorKind::invalid_argument, "irreducibility of constant " + f_in.to_string() + " is undefined");
  }
  const FFPoly f = make_monic(f_in);
  const int d = f.degree();
  if (d == 1) return true;
  const std::uint32_t p = f.characteristic();
  const FFPoly t = FFPoly::monomial(p, 1, 1);
  // frob[i] = t^(p^i) mod f
  std::vector<FFPoly> frob{mod(t, f)};
  for (int i = 1; i <= d; ++i) frob.push_back(powmod(frob.back(), p, f));
  if (frob[static_cast<std::size_t>(d)] != frob[0]) return false;
  for (const auto& pp : factor(d).factors) {
    const auto e = static_cast<std::size_t>(d) / pp.prime;
    if (gcd(frob[e] - frob[0], f).degree() > 0) return false;
  }
  return true;
}

IrreducibleModulus::IrreducibleModulus(FFPoly f) : f_(std::move(f)) {
  if (!f_.is_monic() || f_.degree() < 1) {
    throw Error(ErrorKind::invalid_argument, "modulus " + f_.to_string() + " must be monic of degree >= 1");
  }
  if (!is_irreducible(f_)) throw Error(ErrorKind::invalid_argument, "modulus " + f_.to_string() + " is reducible");
}

UInt IrreducibleModulus::field_size() const {
  UInt q = 1;
  for (int i = 0; i < degree(); ++i) q = checked_mul(q, static_cast<UInt>(characteristic()));
  return q;
}

namespace {

FFPoly monic_from_index(std::uint32_t p, int d, std::uint64_t index) {
  std::vector<std::uint32_t> c(static_cast<std::size_t>(d) + 1, 0);
  for (int j = 0; j < d; ++j) {
    c[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(index % p);
    index /= p;
  }
  c[static_cast<std::size_t>(d)] = 1;
  return PolyOps::make(p, std::move(c));
}

}  // namespace

std::vector<IrreducibleModulus> irreducibles_of_degree(std::uint32_t p, int d) {
  if (d < 1) throw Error(ErrorKind::invalid_argument, "degree must be >= 1");
  if (!is_prime(static_cast<std::uint64_t>(p))) {
    throw Error(ErrorKind::invalid_argument, "characteristic " + std::to_string(p) + " is not prime");
  }
  UInt count = 1;
  for (int i = 0; i < d; ++i) count = checked_mul(count, static_cast<UInt>(p));
  if (count > (UInt{1} << 40)) throw Error(ErrorKind::size_limit, "too many monics of degree " + std::to_string(d));

  std::vector<FFPoly> smaller;
  if (d <= 4) {
    for (int e = 1; 2 * e <= d; ++e) {
      for (auto& g : irreducibles_of_degree(p, e)) smaller.push_back(g.poly());
    }
  }
  std::vector<IrreducibleModulus> out;
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(count); ++i) {
    FFPoly f = monic_from_index(p, d, i);
    bool irreducible = true;
    if (d == 1) {
      irreducible = true;
    } else if (d <= 4) {
      for (const auto& g : smaller) {
        if (mod(f, g).is_zero()) {
          irreducible = false;
          break;
        }
      }
    } else {
      irreducible = is_irreducible(f);
    }
    if (irreducible) out.push_back(IrreducibleModulus(IrreducibleModulus::Trusted{}, std::move(f)));
  }
  return out;
}

std::uint64_t strip_characteristic(std::uint64_t k, std::uint32_t p) {
  if (k == 0) throw Error(ErrorKind::invalid_argument, "k must be >= 1");
  while (k % p == 0) k /= p;
  return k;
}

bool is_kth_residue_ff(const FFPoly& a, std::uint64_t k, const IrreducibleModulus& f) {
  require_same_field(a, f.poly());
  const std::uint64_t k_prime = strip_characteristic(k, f.characteristic());
  const FFPoly reduced = mod(a, f.poly());
  if (reduced.is_zero()) return true;
  const UInt group = f.field_size() - 1;
  const UInt g = std::gcd(static_cast<UInt>(k_prime), group);
  if (g == 1) return true;
  return powmod(reduced, group / g, f.poly()) == FFPoly::constant(f.characteristic(), 1);
}

}  // namespace krc
