#pragma once

#include <cstdint>
#include <cmath>

namespace rpde {

// Deterministic stream-splittable RNG. A stream is identified by the master
// seed mixed with up to three ids (experiment cell, sample index, node index),
// so parallel and serial sweeps see identical draws. The normal sampler is
// Box-Muller on top of raw 64-bit output, independent of any library
// distribution implementation.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t id0 = 0, std::uint64_t id1 = 0,
                 std::uint64_t id2 = 0) {
        state_ = mix(mix(mix(mix(0x9e3779b97f4a7c15ull ^ seed, id0), id1), id2), seed);
        if (state_ == 0) state_ = 0x2545f4914f6cdd1dull;
        cached_ = false;
    }

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in (0, 1)
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double next_normal() {
        if (cached_) {
            cached_ = false;
            return cache_;
        }
        double u1 = next_uniform();
        double u2 = next_uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        cache_ = r * std::sin(a);
        cached_ = true;
        return r * std::cos(a);
    }

  private:
    static std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        std::uint64_t z = h;
        z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdull;
        z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ull;
        return z ^ (z >> 33);
    }

    std::uint64_t state_;
    double cache_ = 0.0;
    bool cached_ = false;
};

}  // namespace rpde
