#pragma once

#include <cstddef>
#include <cstdint>

#include "gbk/core.hpp"

namespace gbk {

// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based generator: the value at any counter is a pure function of
// (key, counter), so draws do not depend on evaluation order or threading.
class CounterRng {
 public:
  constexpr explicit CounterRng(std::uint64_t seed) noexcept : key_(mix64(seed ^ 0x6a09e667f3bcc909ULL)) {}

  constexpr std::uint64_t key() const noexcept { return key_; }

  constexpr std::uint64_t word(std::uint64_t counter) const noexcept {
    return mix64(key_ + (counter + 1) * 0x9e3779b97f4a7c15ULL);
  }

  // Uniform ±1 for a given index; 64 indices share one word.
  constexpr int sign(std::uint64_t index) const noexcept {
    return ((word(index >> 6) >> (index & 63)) & 1u) ? -1 : 1;
  }

  // Independent child stream.
  constexpr CounterRng derive(std::uint64_t stream) const noexcept { return CounterRng(key_, stream); }

  double uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>(word(counter) >> 11) * 0x1.0p-53;
  }

 private:
  constexpr CounterRng(std::uint64_t parent, std::uint64_t stream) noexcept
      : key_(mix64(parent ^ mix64(stream + 0x3c6ef372fe94f82bULL))) {}

  std::uint64_t key_;
};

inline Configuration random_configuration(std::size_t area, const CounterRng& rng) {
  Configuration config(area);
  auto words = config.signs.words();
  for (std::size_t w = 0; w < words.size(); ++w) words[w] = rng.word(w);
  if (area % 64 != 0 && !words.empty()) words.back() &= (std::uint64_t{1} << (area % 64)) - 1;
  return config;
}

}  // namespace gbk
