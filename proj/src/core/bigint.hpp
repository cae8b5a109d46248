#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace divr {

using Bigint = boost::multiprecision::cpp_int;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline std::optional<u64> to_u64(const Bigint& v) {
  if (v < 0 || v > std::numeric_limits<u64>::max()) return std::nullopt;
  return static_cast<u64>(v);
}

inline std::string dec(const Bigint& v) { return v.str(); }

// Exponent bookkeeping uses signed 64-bit with explicit overflow checks.
inline bool add_overflows(i64 a, i64 b, i64& out) {
  return __builtin_add_overflow(a, b, &out);
}
inline bool mul_overflows(i64 a, i64 b, i64& out) {
  return __builtin_mul_overflow(a, b, &out);
}
inline bool add_overflows_u64(u64 a, u64 b, u64& out) {
  return __builtin_add_overflow(a, b, &out);
}
inline bool mul_overflows_u64(u64 a, u64 b, u64& out) {
  return __builtin_mul_overflow(a, b, &out);
}

}  // namespace divr
