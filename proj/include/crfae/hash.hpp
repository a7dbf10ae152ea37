#pragma once

#include <cstdint>
#include <string_view>

namespace crfae {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ (splitmix64(b) + 0x632BE59BD9B4E019ull + (a << 6) + (a >> 2)));
}

/// FNV-1a.
inline std::uint64_t hash_string(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

/// Value in [-1, 1] determined by the four keys.
inline double unit_hash(std::uint64_t seed, std::uint64_t salt, std::uint64_t key, std::uint64_t j) {
  std::uint64_t h = hash_combine(hash_combine(hash_combine(seed, salt), key), j);
  return static_cast<double>(h >> 11) * (2.0 / 9007199254740992.0) - 1.0;
}

}  // namespace crfae
