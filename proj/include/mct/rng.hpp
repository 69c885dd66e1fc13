#ifndef MCT_RNG_HPP
#define MCT_RNG_HPP

#include <cstdint>

namespace mct {

/// splitmix64 stream.  Standard-library distributions are implementation
/// defined, so seeded experiments draw through this to keep byte-identical
/// outputs across toolchains.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0,1).
    double u01() { return double(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    uint64_t below(uint64_t n) { return next() % n; }

    /// Uniform integer in [lo, hi] inclusive.
    int64_t range(int64_t lo, int64_t hi) {
        return lo + int64_t(below(uint64_t(hi - lo + 1)));
    }

private:
    uint64_t state_;
};

}  // namespace mct

#endif
