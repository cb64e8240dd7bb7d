#ifndef PARSIM_CORE_TYPES_HPP
#define PARSIM_CORE_TYPES_HPP

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace parsim {

/// Dense page identifier in [0, universe_size).
using PageId = std::uint32_t;

/// Zero-based position in a request sequence.
using Time = std::uint64_t;

/// Cost in page loads.
using Cost = std::uint64_t;

/// Next-arrival sentinel, strictly greater than any valid position.
inline constexpr Time kNever = std::numeric_limits<Time>::max();

inline constexpr PageId kNoPage = std::numeric_limits<PageId>::max();

/// The single generator a simulation owns; policies and predictors draw from it.
using Rng = std::mt19937_64;

/// Raised for violated preconditions and malformed inputs.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform index in [0, n).
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

/// splitmix64 finalizer; used to derive per-run seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) {
  return mix64(seed ^ mix64(value));
}

inline std::uint64_t hash_string(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace parsim

#endif  // PARSIM_CORE_TYPES_HPP
