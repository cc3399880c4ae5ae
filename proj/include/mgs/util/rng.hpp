#pragma once

#include <cstdint>

namespace mgs {

/// splitmix64: tiny, platform-independent generator. Benchmarks and
/// perturbation studies record their seeds, and replays must reproduce
/// outputs bit-for-bit, so no implementation-defined stdlib distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return (next() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

    /// Derive an independent stream, e.g. per (scenario, repeat).
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        Rng r(a ^ (b * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull));
        return r.next();
    }

private:
    std::uint64_t state_;
};

}  // namespace mgs
