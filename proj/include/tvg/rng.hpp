#ifndef TVG_RNG_HPP
#define TVG_RNG_HPP

#include <cstdint>
#include <random>

namespace tvg {

// Seeded random stream.  Each run owns one stream per player plus one
// run-level stream; streams are derived from (seed, stream_id) so that runs
// are reproducible and player draws are independent.
//
// Gaussians are generated with explicit Box-Muller instead of
// std::normal_distribution so traces do not depend on the standard library
// implementation.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : engine_(mix(seed, stream_id)) {}

    double uniform01() {
        // 53-bit mantissa uniform in [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double normal() {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    // Uniform integer in [0, n)
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r = engine_();
        while (r >= limit) r = engine_();
        return r % n;
    }

private:
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream_id) {
        // splitmix64 over the combined key
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream_id + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace tvg

#endif
