#pragma once

#include <complex>
#include <cmath>
#include <cstdint>

namespace nccsim {

/// Counter-based pseudo-random generator (splitmix64 increment + finalizer).
/// Streams derived from a master seed and a (snr index, frame index, link id)
/// key are statistically independent, so adding links or reordering frames
/// never perturbs the draws of other streams.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1]; safe as a log() argument.
  double next_unit() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  /// Uniform integer in [0, 2^bits); bits must be <= 32.
  std::uint32_t next_bits(unsigned bits) {
    return static_cast<std::uint32_t>(next_u64() >> (64 - bits));
  }

  /// One complex Gaussian sample: CN(0, var), i.e. each component has
  /// variance var/2. Box-Muller on two fresh uniforms.
  std::complex<double> next_cnormal(double var) {
    const double r = std::sqrt(-var * std::log(next_unit()));
    const double phi = 2.0 * kPi * next_double();
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  static constexpr double kPi = 3.141592653589793238462643383279502884;
  std::uint64_t state_;
};

/// splitmix64 finalizer; a strong 64-bit bijective mixer.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Derives the independent substream for one link of one frame of one sweep
/// point. Pure function of its arguments.
inline Prng derive_stream(std::uint64_t master_seed, std::uint32_t snr_index,
                          std::uint32_t frame_index, std::uint32_t link_id) {
  std::uint64_t h = mix64(master_seed ^ 0x6a09e667f3bcc909ull);
  h = mix64(h ^ ((static_cast<std::uint64_t>(snr_index) << 32) | frame_index));
  h = mix64(h ^ link_id);
  return Prng(h);
}

}  // namespace nccsim
