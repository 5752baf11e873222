#ifndef VOTEAGG_RNG_HPP
#define VOTEAGG_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace voteagg {

// Deterministic RNG with named sub-streams. Every consumer of randomness
// (mv-ties, subsample, simulate, ...) derives its own stream from the master
// seed, so adding one consumer never perturbs the draws seen by another.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Unbiased draw in [0, n) via rejection sampling. Behavior is pinned by
  // this implementation, not by the standard library's distributions.
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = gen_();
    while (x >= limit) x = gen_();
    return x % n;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}
}  // namespace detail

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream) {
  return detail::splitmix64(seed ^ detail::fnv1a64(stream));
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream, std::uint64_t index) {
  return detail::splitmix64(derive_seed(seed, stream) ^ detail::splitmix64(index));
}

inline Rng substream(std::uint64_t seed, std::string_view stream) {
  return Rng(derive_seed(seed, stream));
}

}  // namespace voteagg

#endif  // VOTEAGG_RNG_HPP
