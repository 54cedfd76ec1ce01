#pragma once

#include <cstdint>
#include <vector>

namespace hunt {

// Deterministic splitmix64 stream. The standard distributions are
// implementation-defined, so instance generation draws through this
// engine only; identical seeds give identical graphs on every platform.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) by rejection; n == 0 returns 0.
  std::uint64_t below(std::uint64_t n) {
    if (n < 2) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % n;
  }

  int below_int(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }
};

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  Rng r(a * 0x9e3779b97f4a7c15ull + 0x165667b19e3779f9ull);
  r.state ^= b + 0x9e3779b97f4a7c15ull;
  r.next();
  r.state ^= c * 0xc2b2ae3d27d4eb4full;
  r.next();
  r.state ^= d + 0x165667b19e3779f9ull;
  return r.next();
}

}  // namespace hunt
