#pragma once

#include <cstdint>
#include <numeric>
#include <random>

#include "pantsflat/slope.hpp"

namespace pantsflat::gen {

// Uniform-ish reduced slope of height <= h, by rejection.
inline Slope random_slope(std::mt19937_64& rng, std::int64_t h) {
    std::uniform_int_distribution<std::int64_t> num(-h, h);
    std::uniform_int_distribution<std::int64_t> den(0, h);
    for (;;) {
        const std::int64_t p = num(rng);
        const std::int64_t q = den(rng);
        if (std::gcd(p, q) != 1) continue;
        if (q == 0 && p != 1) continue;
        return Slope(p, q);
    }
}

// Random determinant +-1 integer matrix, as a product of generators.
inline Unimodular random_unimodular(std::mt19937_64& rng, int steps = 6) {
    Unimodular m;
    std::uniform_int_distribution<int> pick(0, 3);
    for (int i = 0; i < steps; ++i) {
        Unimodular g;
        switch (pick(rng)) {
            case 0: g = {1, 1, 0, 1}; break;
            case 1: g = {1, 0, 1, 1}; break;
            case 2: g = {0, -1, 1, 0}; break;
            default: g = {-1, 0, 0, 1}; break;
        }
        m = {m.a * g.a + m.b * g.c, m.a * g.b + m.b * g.d, m.c * g.a + m.d * g.c, m.c * g.b + m.d * g.d};
    }
    return m;
}

}  // namespace pantsflat::gen
