#pragma once

#include <cstdint>
#include <vector>

namespace wlancap {

/// Deterministic 64-bit generator (splitmix64). Chosen over std::mt19937_64
/// because the output sequence is fixed by this header alone, not by the
/// standard library implementation, so reports are reproducible across
/// toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double next_double(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    /// Uniform integer in [0, n). Modulo reduction; the bias at 64 bits is
    /// far below anything observable here and the result is deterministic.
    std::uint64_t next_below(std::uint64_t n) {
        return next_u64() % n;
    }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

/// Derives an independent substream seed from a base seed and up to two
/// stream tags. Each tag is folded through the splitmix64 permutation so
/// that nearby tags give unrelated streams.
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    Rng g(seed);
    Rng h(g.next_u64() ^ (a * 0x9E3779B97F4A7C15ULL));
    Rng k(h.next_u64() ^ (b * 0xD1B54A32D192ED03ULL));
    return k.next_u64();
}

} // namespace wlancap
