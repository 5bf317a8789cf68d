#pragma once

#include <cstdint>
#include <limits>

namespace jigsaw {

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Identifies one independent random stream: a master seed plus a stream id
// (typically the trial index).
struct Seed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;

  // A stream derived from this one, e.g. one per grid point of a trial.
  constexpr Seed child(std::uint64_t tag) const {
    return {master, mix64(stream ^ mix64(tag + 0x632be59bd9b4e019ULL))};
  }

  friend constexpr bool operator==(const Seed&, const Seed&) = default;
};

// Counter-based generator: output k of a stream is mix64(key + k * gamma),
// with the key derived from (master, stream). Every draw is a pure function of
// the seed and the counter, so results never depend on scheduling. Distribution
// helpers below are hand-rolled rather than taken from <random>, whose
// distributions are implementation-defined.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Rng(Seed seed)
      : key_(mix64(mix64(seed.master) ^ mix64(seed.stream + kGamma) ^ 0x9e3779b97f4a7c15ULL)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() { return mix64(key_ + kGamma * ++counter_); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe as a log() argument.
  double uniform_open0() { return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53; }

  // Uniform integer in [0, bound), bound > 0. Lemire's nearly-divisionless method.
  std::uint64_t below(std::uint64_t bound) {
    __uint128_t m = static_cast<__uint128_t>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<__uint128_t>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  std::uint64_t counter() const { return counter_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace jigsaw
