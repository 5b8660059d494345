#pragma once

#include <bit>
#include <cstdint>
#include <limits>

namespace cardgame {

// SplitMix64 finalizer. Used both to expand a seed into engine state and as
// the 64-bit mixer behind derive_seed().
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Per-stream seed: mix(master, index) = splitmix64(master ^ splitmix64(index)).
// Game i of a run always gets derive_seed(master_seed, i), so results do not
// depend on which worker plays which game.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(master ^ splitmix64(index));
}

// Substream tags under a game seed.
enum class Stream : std::uint64_t { Deck = 0, Strategy = 1, Coupling = 2 };

constexpr std::uint64_t stream_seed(std::uint64_t game_seed, Stream s) noexcept {
  return derive_seed(game_seed, static_cast<std::uint64_t>(s) + 0xC0FFEEULL);
}

// xoshiro256** 1.0 (Blackman & Vigna). Models std::uniform_random_bit_generator.
class Xoshiro256ss {
 public:
  using result_type = std::uint64_t;

  constexpr Xoshiro256ss() noexcept : Xoshiro256ss(0) {}
  constexpr explicit Xoshiro256ss(std::uint64_t seed) noexcept { this->seed(seed); }

  constexpr void seed(std::uint64_t seed) noexcept {
    std::uint64_t x = seed;
    for (auto& word : s_) {
      word = splitmix64(x);
      x += 0x9E3779B97F4A7C15ULL;
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
  }

  friend constexpr bool operator==(const Xoshiro256ss&, const Xoshiro256ss&) = default;

 private:
  std::uint64_t s_[4]{};
};

using Rng = Xoshiro256ss;

// Unbiased integer in [0, bound) (Lemire's multiply-and-reject).
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  unsigned __int128 product = static_cast<unsigned __int128>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(rng()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng& rng, double p) { return uniform_unit(rng) < p; }

}  // namespace cardgame
