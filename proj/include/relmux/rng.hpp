#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace relmux {

// splitmix64 step; also used as the mixing finalizer for derived seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Derives the seed for an indexed substream (per-sample seeds in the Monte
// Carlo loops). Pure function of (seed, index), stable across platforms.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ull * (index + 1));
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  return a ^ (b << 1);
}

// Deterministic generator with a fixed bit-level contract. The standard
// library engines are pinned by the standard but std::normal_distribution is
// not, so the Gaussian transform is done by hand (Box-Muller).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {
    // decorrelate trivially related seeds
    for (int i = 0; i < 4; ++i) splitmix64(state_);
  }

  std::uint64_t next_u64() { return splitmix64(state_); }

  // uniform on [0, 1), 53 random bits
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // standard complex Gaussian: E[z] = 0, E[|z|^2] = 1
  std::complex<double> next_cgauss() {
    double u1 = 1.0 - next_double();  // (0, 1]
    double u2 = next_double();
    double r = std::sqrt(-std::log(u1));  // includes the 1/sqrt(2) per-part scale
    double phi = 6.283185307179586476925286766559 * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  std::uint64_t state_;
};

}  // namespace relmux
