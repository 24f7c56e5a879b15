#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace krc {

/// Signed machine integer used for chain terms, sums and moduli.
using Int = __int128;
using UInt = unsigned __int128;

inline constexpr Int kIntMax = static_cast<Int>(~UInt{0} >> 1);
inline constexpr Int kIntMin = -kIntMax - 1;

std::string to_string(Int v);
std::string to_string(UInt v);

/// Parses a signed decimal literal. Throws Error(parse) on malformed text and
/// Error(overflow) when the value does not fit in 128 signed bits.
Int parse_int(std::string_view text);

/// |v|, or Error(overflow) for kIntMin.
UInt abs_value(Int v);

/// Checked arithmetic; throws Error(overflow).
Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);
UInt checked_mul(UInt a, UInt b);

}  // namespace krc
