#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace krc::detail {

struct Block {
  std::uint64_t lo;
  std::uint64_t hi;
};

inline constexpr std::uint64_t kBlockWidth = std::uint64_t{1} << 22;

inline std::vector<Block> split_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<Block> blocks;
  if (hi < lo) return blocks;
  for (std::uint64_t b = lo;; b += kBlockWidth) {
    const std::uint64_t e = (hi - b < kBlockWidth - 1) ? hi : b + kBlockWidth - 1;
    blocks.push_back({b, e});
    if (e == hi) break;
  }
  return blocks;
}

/// Runs `work(block_index)` over all blocks, `workers` at a time, in waves.
/// After each wave `done()` is consulted, so callers can stop early while
/// still consuming results strictly in block order.
inline void run_in_waves(std::size_t block_count, unsigned workers,
                         const std::function<void(std::size_t)>& work,
                         const std::function<bool(std::size_t)>& done) {
  workers = std::max(1U, workers);
  for (std::size_t first = 0; first < block_count; first += workers) {
    const std::size_t last = std::min(block_count, first + workers);
    if (last - first == 1) {
      work(first);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t b = first; b < last; ++b) pool.emplace_back(work, b);
      for (auto& t : pool) t.join();
    }
    if (done(last)) return;
  }
}

}  // namespace krc::detail
