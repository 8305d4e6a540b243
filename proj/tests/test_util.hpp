#pragma once

#include "hypfill/generate.hpp"
#include "hypfill/hyperbolic.hpp"

#include <random>

namespace testutil {

using namespace hypfill;

inline HPoint random_point(std::mt19937_64& rng, double max_dist = 3.0) {
    double r = std::tanh(uniform_unit(rng) * max_dist / 2);
    double th = uniform_unit(rng) * 2 * kPi;
    return HPoint(std::polar(r, th));
}

inline Isometry random_isometry(std::mt19937_64& rng) {
    return Isometry::frame(random_point(rng, 4.0), uniform_unit(rng) * 2 * kPi);
}

inline HTriangle random_triangle(std::mt19937_64& rng, double max_dist = 3.0) {
    for (;;) {
        HTriangle t{random_point(rng, max_dist), random_point(rng, max_dist), random_point(rng, max_dist)};
        try {
            require_nondegenerate(t);
        } catch (...) {
            continue;
        }
        auto a = triangle_angles(t);
        if (a[0] < 1e-3 || a[1] < 1e-3 || a[2] < 1e-3) continue;
        return t;
    }
}

// Minimum of the distance sum over a barycentric grid in Klein coordinates.
inline double grid_oracle(const HTriangle& t, int n) {
    cplx a = t.a.klein(), b = t.b.klein(), c = t.c.klein();
    double best = 1e300;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; i + j <= n; ++j) {
            double u = double(i) / n, v = double(j) / n;
            cplx k = u * a + v * b + (1 - u - v) * c;
            best = std::min(best, star_sum(t, HPoint::from_klein(k)));
        }
    }
    return best;
}

} // namespace testutil
