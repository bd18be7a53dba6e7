#pragma once

#include <cmath>
#include <cstdint>
#include <random>

// Seedable random streams. Every stochastic component takes an explicit
// stream; sub-stream seeds are derived with splitmix64 so that sweeps
// partition deterministically across SNR points and trial blocks.

namespace bimasim {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Mix a master seed with up to three stream coordinates.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
    std::uint64_t s = master;
    std::uint64_t h = splitmix64_next(s);
    s ^= a + 0x9E3779B97F4A7C15ULL;
    h ^= splitmix64_next(s);
    s ^= b + 0xD1B54A32D192ED03ULL;
    h ^= splitmix64_next(s);
    s ^= c + 0x8CB92BA72F3D8DD7ULL;
    h ^= splitmix64_next(s);
    return h;
}

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t raw() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return (engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal, Box-Muller with caching.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Rejection-free enough for the small n used by interleavers.
        const std::uint64_t threshold = (-n) % n;
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return r % n;
        }
    }

    /// n random bits packed little-endian into a label.
    std::uint32_t label_bits(int n) {
        return static_cast<std::uint32_t>(engine_() >> (64 - n));
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace bimasim
