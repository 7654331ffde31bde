#ifndef TVG_TEST_UTIL_HPP
#define TVG_TEST_UTIL_HPP

#include <cmath>

#include "tvg/geometry.hpp"
#include "tvg/rng.hpp"

namespace tvg::test {

// Uniform-ish sample from the set; entropic-safe (interior) for the simplex.
inline Vec sample_point(const ActionSet& s, RngStream& rng) {
    Vec v(s.dim());
    switch (s.kind()) {
        case SetKind::box:
            for (int j = 0; j < s.dim(); ++j)
                v[j] = s.lo()[j] + rng.uniform01() * (s.hi()[j] - s.lo()[j]);
            break;
        case SetKind::ball: {
            double n2 = 0.0;
            for (int j = 0; j < s.dim(); ++j) {
                v[j] = rng.normal();
                n2 += v[j] * v[j];
            }
            const double n = std::sqrt(n2);
            const double r = s.radius() * std::pow(rng.uniform01(), 1.0 / s.dim());
            for (int j = 0; j < s.dim(); ++j)
                v[j] = s.center()[j] + (n > 0 ? r * v[j] / n : 0.0);
            break;
        }
        case SetKind::simplex: {
            double sum = 0.0;
            for (int j = 0; j < s.dim(); ++j) {
                v[j] = -std::log(1.0 - rng.uniform01());
                sum += v[j];
            }
            for (int j = 0; j < s.dim(); ++j) v[j] /= sum;
            break;
        }
    }
    return v;
}

inline Vec sample_dual(int dim, double scale, RngStream& rng) {
    Vec y(dim);
    for (int j = 0; j < dim; ++j) y[j] = scale * rng.normal();
    return y;
}

}  // namespace tvg::test

#endif
