#include "krchain/int128.hpp"

#include <algorithm>

#include "krchain/error.hpp"

namespace krc {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_modulus: return "invalid-modulus";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::size_limit: return "size-limit";
    case ErrorKind::invalid_candidate: return "invalid-candidate";
    case ErrorKind::characteristic_mismatch: return "characteristic-mismatch";
    case ErrorKind::division_by_zero: return "division-by-zero";
    case ErrorKind::parse: return "parse";
  }
  return "unknown";
}

std::string to_string(UInt v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string to_string(Int v) {
  if (v >= 0) return to_string(static_cast<UInt>(v));
  // Two's complement negation is well defined on the unsigned type.
  return "-" + to_string(UInt{0} - static_cast<UInt>(v));
}

Int parse_int(std::string_view text) {
  const std::string shown(text);
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) throw Error(ErrorKind::parse, "malformed integer '" + shown + "'");
  const UInt limit = negative ? static_cast<UInt>(kIntMax) + 1 : static_cast<UInt>(kIntMax);
  UInt acc = 0;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c < '0' || c > '9') throw Error(ErrorKind::parse, "malformed integer '" + shown + "'");
    const auto digit = static_cast<UInt>(c - '0');
    if (acc > (limit - digit) / 10) {
      throw Error(ErrorKind::overflow, "integer '" + shown + "' exceeds 128-bit range");
    }
    acc = acc * 10 + digit;
  }
  if (negative) return static_cast<Int>(UInt{0} - acc);
  return static_cast<Int>(acc);
}

UInt abs_value(Int v) {
  if (v == kIntMin) throw Error(ErrorKind::overflow, "absolute value exceeds 128-bit range");
  return static_cast<UInt>(v < 0 ? -v : v);
}

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::overflow, "128-bit addition overflow");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::overflow, "128-bit multiplication overflow");
  return r;
}

UInt checked_mul(UInt a, UInt b) {
  UInt r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::overflow, "128-bit multiplication overflow");
  return r;
}

}  // namespace krc
