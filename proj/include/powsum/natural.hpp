#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace powsum {

/// Arbitrary-precision nonnegative integer. Negative values are never
/// produced by the library; parse_natural rejects them at the boundary.
using Natural = boost::multiprecision::cpp_int;

/// Parses a plain decimal string (digits only, no sign, no exponent).
/// Throws std::invalid_argument on anything else.
Natural parse_natural(std::string_view text);

std::string to_decimal(const Natural& value);

/// True when value fits in an unsigned 64-bit word.
bool fits_u64(const Natural& value);

/// Narrowing conversion; throws std::out_of_range when !fits_u64(value).
std::uint64_t to_u64(const Natural& value);

}  // namespace powsum
