#pragma once

#include <cstdint>

namespace dcl {

// Counter-based random streams: every draw site is addressed by
// (seed, sample, timestep, position, purpose, draw index), so results are
// reproducible independent of execution order or thread count.
enum class StreamPurpose : std::uint64_t {
  kInitState = 1,
  kGate = 2,
  kSparseFire = 3,
  kChannelFire = 4,
  kChannelRotation = 5,
  kNoiseMask = 6,
  kGeneric = 7,
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}
}  // namespace detail

class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t sample, std::uint64_t timestep,
         std::uint64_t position, StreamPurpose purpose)
      : base_(mix5(seed, sample, timestep, position,
                   static_cast<std::uint64_t>(purpose))) {}

  std::uint64_t next_u64() { return detail::splitmix64(base_ + (ctr_++)); }

  // Uniform in [0, 1).
  double next_double() {
    return double(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n); Lemire multiply-shift (bias < n / 2^64).
  std::uint64_t next_below(std::uint64_t n) {
    return std::uint64_t((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  bool next_bernoulli(double p) { return next_double() < p; }

 private:
  static std::uint64_t mix5(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                            std::uint64_t d, std::uint64_t e) {
    std::uint64_t h = detail::splitmix64(a);
    h = detail::splitmix64(h ^ (b + 0x9e3779b97f4a7c15ull));
    h = detail::splitmix64(h ^ (c + 0xc2b2ae3d27d4eb4full));
    h = detail::splitmix64(h ^ (d + 0x165667b19e3779f9ull));
    h = detail::splitmix64(h ^ (e + 0xd6e8feb86659fd93ull));
    return h;
  }

  std::uint64_t base_;
  std::uint64_t ctr_ = 0;
};

}  // namespace dcl
