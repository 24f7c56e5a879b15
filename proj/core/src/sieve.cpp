#include <algorithm>
#include <cmath>
#include <vector>

#include "krchain/arith.hpp"

namespace krc {
namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Odd primes up to n by a plain sieve; only used for the base primes.
std::vector<std::uint64_t> odd_base_primes(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 3) return out;
  std::vector<bool> composite(n / 2 + 1, false);  // index i <-> 2i + 1
  for (std::uint64_t i = 1; 2 * i + 1 <= n; ++i) {
    if (composite[i]) continue;
    const std::uint64_t q = 2 * i + 1;
    out.push_back(q);
    for (std::uint64_t m = q * q; m <= n; m += 2 * q) composite[m / 2] = true;
  }
  return out;
}

}  // namespace

void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& visit) {
  if (hi < 2 || lo > hi) return;
  if (lo <= 2) visit(2);
  std::uint64_t start = std::max<std::uint64_t>(lo, 3);
  if (start % 2 == 0) ++start;
  if (start > hi) return;

  const std::vector<std::uint64_t> base = odd_base_primes(isqrt(hi));
  std::vector<std::uint64_t> bits(kSieveSegmentBits / 64);

  // Each segment covers the odd numbers start, start + 2, ..., start + 2(bits - 1).
  for (std::uint64_t seg = start; seg <= hi;) {
    const std::uint64_t span = std::min<std::uint64_t>(kSieveSegmentBits, (hi - seg) / 2 + 1);
    std::fill(bits.begin(), bits.end(), 0);
    const std::uint64_t seg_last = seg + 2 * (span - 1);
    for (const std::uint64_t q : base) {
      if (q * q > seg_last) break;
      std::uint64_t m = std::max(q * q, (seg + q - 1) / q * q);
      if (m % 2 == 0) m += q;
      for (; m <= seg_last; m += 2 * q) {
        const std::uint64_t idx = (m - seg) / 2;
        bits[idx / 64] |= std::uint64_t{1} << (idx % 64);
      }
    }
    for (std::uint64_t idx = 0; idx < span; ++idx) {
      if (!((bits[idx / 64] >> (idx % 64)) & 1)) {
        const std::uint64_t n = seg + 2 * idx;
        if (n != 1) visit(n);
      }
    }
    if (hi - seg_last < 2) break;
    seg = seg_last + 2;
  }
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi >= 2 && hi >= lo) {
    const double width = static_cast<double>(hi - std::min(lo, hi));
    out.reserve(static_cast<std::size_t>(1.3 * width / std::max(1.0, std::log(static_cast<double>(hi)))) + 16);
  }
  for_each_prime(lo, hi, [&out](std::uint64_t p) { out.push_back(p); });
  return out;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) { return primes_in_range(0, n); }

}  // namespace krc
