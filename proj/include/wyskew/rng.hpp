#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "wyskew/linalg.hpp"
#include "wyskew/states.hpp"

namespace wyskew {

/// Identifier recorded in reports for reproducibility.
inline constexpr const char *kRngAlgorithm = "xoshiro256++/splitmix64";

/// splitmix64 finalizer: constant-multiplier + xor-shift mixing.
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Decorrelated per-stream seed for stream `index` of `master_seed`.
inline std::uint64_t split_seed(std::uint64_t master_seed, std::uint64_t index) {
    return splitmix64_mix(master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

/// xoshiro256++ with splitmix64 state expansion. Deterministic for a given
/// seed independent of platform word order or library internals.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t z = seed;
        for (std::uint64_t &word : state_) {
            z += 0x9E3779B97F4A7C15ULL;
            word = splitmix64_mix(z);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4] = {};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Gaussian vector scaled to the unit sphere.
std::vector<double> random_unit_vector(Rng &rng, std::size_t dim);

/// Hermitian matrix with independent standard-normal real/imag parts above
/// the diagonal and standard-normal diagonal.
HermitianMatrix random_hermitian(Rng &rng, std::size_t dim);

/// Full-rank density matrix G G^dagger / Tr(G G^dagger) from a complex
/// Gaussian G.
DensityMatrix random_density_matrix(Rng &rng, std::size_t dim);

/// Haar-like random pure state (normalized complex Gaussian amplitudes).
PureState random_pure_state(Rng &rng, const std::vector<std::size_t> &local_dims);

}  // namespace wyskew
