// prng.hpp -- splitmix64-based deterministic generator. Reports quote the
// seed; identical seeds must reproduce identical streams on any platform,
// so no std:: distributions here.

#pragma once

#include <cstdint>

#include "holonov/rational.hpp"

namespace holonov {

class Prng {
public:
    explicit Prng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }

    // uniform integer in [lo, hi]
    long integer(long lo, long hi) { return lo + long(below(uint64_t(hi - lo + 1))); }

    // rational with numerator in [-num_box, num_box], denominator in [1, den_box]
    Rational rational(long num_box, long den_box = 1) {
        long n = integer(-num_box, num_box);
        long d = integer(1, den_box);
        return Rational(n, d);
    }

    double real01() { return double(next() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi]
    double real(double lo, double hi) { return lo + (hi - lo) * real01(); }

private:
    uint64_t state_;
};

}  // namespace holonov
