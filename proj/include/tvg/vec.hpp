#ifndef TVG_VEC_HPP
#define TVG_VEC_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace tvg {

using Vec = std::vector<double>;

// Joint action / dual profile: one vector per player.  The ambient norm is
// the product l2 norm, ||x||^2 = sum_i ||x_i||^2, and the dual norm is the
// same l2 norm under the standard pairing.
using Profile = std::vector<Vec>;

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
    return s;
}

inline double norm2_sq(const Vec& a) { return dot(a, a); }
inline double norm2(const Vec& a) { return std::sqrt(norm2_sq(a)); }

inline double dot(const Profile& a, const Profile& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += dot(a[i], b[i]);
    return s;
}

inline double norm2_sq(const Profile& a) {
    double s = 0.0;
    for (const Vec& v : a) s += norm2_sq(v);
    return s;
}

inline double norm2(const Profile& a) { return std::sqrt(norm2_sq(a)); }

inline double dist2(const Profile& a, const Profile& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) {
            const double d = a[i][j] - b[i][j];
            s += d * d;
        }
    return std::sqrt(s);
}

inline bool all_finite(const Vec& a) {
    for (double x : a)
        if (!std::isfinite(x)) return false;
    return true;
}

inline bool all_finite(const Profile& a) {
    for (const Vec& v : a)
        if (!all_finite(v)) return false;
    return true;
}

}  // namespace tvg

#endif
