#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ergocert {

/// splitmix64 step; used to derive independent sub-stream seeds so that
/// parallel realizations are schedule-independent.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t state = a;
  std::uint64_t h = splitmix64(state);
  state ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return splitmix64(state);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b,
                              std::uint64_t c) {
  return mix_seed(mix_seed(a, b), c);
}

/// Unbiased draw in [0, bound) by rejection; the engine itself is fully
/// specified by the standard, so results are platform-stable.
inline std::uint64_t bounded_u64(std::mt19937_64& eng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = eng();
    if (r >= threshold) return r % bound;
  }
}

/// Fisher-Yates with the portable bounded draw above.
template <typename T>
void shuffle_in_place(std::vector<T>& items, std::mt19937_64& eng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(bounded_u64(eng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace ergocert
