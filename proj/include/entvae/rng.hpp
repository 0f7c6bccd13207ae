#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace entvae::rng {

// Named substream tags. Every random draw in the project flows from one
// run seed through (seed, tag[, index]) keys so components can be varied
// independently and per-sample generation is order-independent.
inline constexpr std::uint64_t kDataStream = 0x64617461u;      // dataset generation
inline constexpr std::uint64_t kInitStream = 0x696e6974u;      // parameter init
inline constexpr std::uint64_t kShuffleStream = 0x73687566u;   // epoch shuffles
inline constexpr std::uint64_t kDropoutStream = 0x64726f70u;   // dropout masks
inline constexpr std::uint64_t kLatentStream = 0x65707369u;    // latent epsilon draws

// Test datasets draw from a stream disjoint from the training stream.
inline constexpr std::uint64_t kTestSeedXor = 0x7e57da7a5eedull;

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Hash-combine (seed, tag, index) into one well-mixed 64-bit key.
inline std::uint64_t derive_key(std::uint64_t seed, std::uint64_t tag,
                                std::uint64_t index = 0) {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix64(s);
  s ^= tag + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  h = splitmix64(s);
  s ^= index + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return splitmix64(s);
}

// Deterministic random stream. mt19937_64 plus hand-rolled uniform/normal
// transforms, so draws are identical on every standard-conforming platform
// (std::normal_distribution is implementation-defined and unusable here).
class Stream {
 public:
  explicit Stream(std::uint64_t key) : gen_(key) {}

  Stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index = 0)
      : gen_(derive_key(seed, tag, index)) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Integer on [0, n) via rejection-free scaling; n must be >= 1.
  std::uint64_t uniform_index(std::uint64_t n) {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
  }

  // Standard normal via Box-Muller; pairs are cached.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    // map to (0,1) so log() stays finite
    const double u1 = (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

 private:
  std::mt19937_64 gen_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace entvae::rng
