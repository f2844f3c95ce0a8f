#ifndef DEPICT_RNG_HPP
#define DEPICT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

#include "depict/matrix.hpp"

namespace depict {

/// 64-bit seed. Identical seed + identical call sequence gives bit-identical
/// output streams on every platform.
struct Seed {
    std::uint64_t value = 0;
};

/// Counter-free splitmix64 generator with Box-Muller normals.
///
/// splitmix64 is a fixed, public-domain recurrence (Steele/Lea/Flood), so the
/// exact byte stream is reproducible from the seed alone in any language.
/// State is caller-owned; the library never keeps a hidden global stream.
class Rng {
public:
    explicit Rng(Seed seed) : state_(seed.value) {}
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1], safe as a log() argument.
    double next_double_open() { return double((next_u64() >> 11) + 1) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        // Rejection sampling keeps the distribution exact and the stream
        // reproducible (no platform-dependent modulo shortcuts).
        const std::uint64_t limit = n * (UINT64_MAX / n);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

    /// Standard normal via Box-Muller; generates pairs, caches the spare.
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = next_double_open();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    /// Derive an independent stream deterministically (e.g. per check name).
    Rng fork(std::uint64_t salt) {
        Rng child(state_ ^ (salt * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
        child.next_u64();
        return child;
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// rows x cols matrix of i.i.d. standard normal entries, deterministic per seed.
inline Matrix seeded_gaussian(int rows, int cols, Seed seed) {
    if (rows < 1 || cols < 1) throw ShapeMismatch("seeded_gaussian needs rows, cols >= 1");
    Rng rng(seed);
    Matrix m(rows, cols);
    for (double& v : m.data()) v = rng.next_normal();
    return m;
}

inline Matrix gaussian(int rows, int cols, Rng& rng) {
    Matrix m(rows, cols);
    for (double& v : m.data()) v = rng.next_normal();
    return m;
}

/// FNV-1a hash of a string; used to derive per-name substreams without
/// depending on std::hash (which is not stable across platforms).
inline std::uint64_t fnv1a(const char* s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (; *s; ++s) {
        h ^= std::uint64_t(static_cast<unsigned char>(*s));
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace depict

#endif
