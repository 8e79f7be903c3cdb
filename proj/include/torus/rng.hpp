#ifndef TORUS_RNG_HPP
#define TORUS_RNG_HPP

#include <cstdint>

#include "torus/types.hpp"

namespace torus {

// Deterministic generator with a fixed cross-platform mapping to doubles.
// std::uniform_real_distribution is implementation-defined, which would break
// the byte-identical-report guarantee; splitmix64 is fully specified.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// uniform in [0, 1)
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    cx uniform_complex(double re_lo, double re_hi, double im_lo, double im_hi) {
        const double re = uniform(re_lo, re_hi);
        const double im = uniform(im_lo, im_hi);
        return {re, im};
    }

    /// uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t state_;
};

} // namespace torus

#endif
