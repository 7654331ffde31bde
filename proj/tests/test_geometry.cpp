#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "test_util.hpp"
#include "tvg/geometry.hpp"

using namespace tvg;
using test::sample_dual;
using test::sample_point;

namespace {

const double kLog2 = std::log(2.0);

struct Geometry {
    Regularizer reg;
    ActionSet set;
    const char* label;
};

std::vector<Geometry> property_geometries() {
    std::vector<Geometry> g;
    g.push_back({Regularizer(RegKind::euclidean), ActionSet::simplex(5),
                 "euclidean/simplex"});
    g.push_back({Regularizer(RegKind::euclidean),
                 ActionSet::box({-1.0, 0.0, 2.0}, {1.5, 0.5, 3.0}),
                 "euclidean/box"});
    g.push_back({Regularizer(RegKind::euclidean),
                 ActionSet::ball({0.5, -0.5, 1.0}, 2.0), "euclidean/ball"});
    g.push_back({Regularizer(RegKind::entropic), ActionSet::simplex(5),
                 "entropic/simplex"});
    return g;
}

}  // namespace

TEST_CASE("bregman divergence examples") {
    Regularizer eu(RegKind::euclidean);
    ActionSet box = ActionSet::box({-2.0, -2.0}, {2.0, 2.0});
    CHECK(eu.bregman(box, {1.0, 0.0}, {0.0, 0.0}) == doctest::Approx(0.5));

    Regularizer en(RegKind::entropic);
    ActionSet sx = ActionSet::simplex(2);
    CHECK(en.bregman(sx, {0.3, 0.7}, {0.3, 0.7}) == doctest::Approx(0.0));
    CHECK(en.bregman(sx, {1.0, 0.0}, {0.5, 0.5}) == doctest::Approx(kLog2));

    // x outside the prox-domain
    CHECK_THROWS_AS(en.bregman(sx, {0.5, 0.5}, {1.0, 0.0}), std::domain_error);
}

TEST_CASE("prox examples") {
    Regularizer en(RegKind::entropic);
    ActionSet sx = ActionSet::simplex(2);
    const Vec fixed = en.prox(sx, {0.3, 0.7}, {0.0, 0.0});
    CHECK(fixed[0] == doctest::Approx(0.3));
    CHECK(fixed[1] == doctest::Approx(0.7));

    const Vec mw = en.prox(sx, {0.5, 0.5}, {kLog2, 0.0});
    CHECK(mw[0] == doctest::Approx(2.0 / 3.0));
    CHECK(mw[1] == doctest::Approx(1.0 / 3.0));

    Regularizer eu(RegKind::euclidean);
    ActionSet box = ActionSet::box({0.0, 0.0}, {1.0, 1.0});
    const Vec clamped = eu.prox(box, {0.9, 0.5}, {0.3, -0.2});
    CHECK(clamped[0] == doctest::Approx(1.0));
    CHECK(clamped[1] == doctest::Approx(0.3));

    CHECK_THROWS_AS(
        eu.prox(box, {0.5, 0.5}, {std::numeric_limits<double>::infinity(), 0.0}),
        std::invalid_argument);
}

TEST_CASE("dgf_min examples") {
    Regularizer en(RegKind::entropic);
    const Vec bc = en.dgf_min(ActionSet::simplex(4));
    for (double c : bc) CHECK(c == doctest::Approx(0.25));

    Regularizer eu(RegKind::euclidean);
    const Vec b = eu.dgf_min(ActionSet::box({1.0, -1.0}, {2.0, 1.0}));
    CHECK(b[0] == doctest::Approx(1.0));
    CHECK(b[1] == doctest::Approx(0.0));

    const Vec s = eu.dgf_min(ActionSet::ball({3.0, 4.0}, 1.0));
    CHECK(s[0] == doctest::Approx(2.4));
    CHECK(s[1] == doctest::Approx(3.2));
}

TEST_CASE("support_max examples") {
    const auto [p1, v1] = ActionSet::simplex(3).support_max({1.0, 5.0, 2.0});
    CHECK(v1 == doctest::Approx(5.0));
    CHECK(p1[1] == doctest::Approx(1.0));

    const auto [p2, v2] =
        ActionSet::box({0.0, 0.0}, {1.0, 1.0}).support_max({-1.0, 2.0});
    CHECK(v2 == doctest::Approx(2.0));
    CHECK(p2[0] == doctest::Approx(0.0));
    CHECK(p2[1] == doctest::Approx(1.0));

    const auto [p3, v3] = ActionSet::ball({0.0, 0.0}, 2.0).support_max({3.0, 4.0});
    CHECK(v3 == doctest::Approx(10.0));
    CHECK(p3[0] == doctest::Approx(1.2));
    CHECK(p3[1] == doctest::Approx(1.6));

    // c = 0: any point works, value 0; ties break to the lowest index
    const auto [p4, v4] = ActionSet::simplex(3).support_max({0.0, 0.0, 0.0});
    CHECK(v4 == doctest::Approx(0.0));
    CHECK(p4[0] == doctest::Approx(1.0));
}

TEST_CASE("three-point identity examples") {
    Regularizer eu(RegKind::euclidean);
    ActionSet box = ActionSet::box({-2.0, -2.0}, {2.0, 2.0});
    CHECK(three_point_check(eu, box, {1.0, -0.5}, {0.2, 0.3}, {-1.0, 1.5}) <=
          1e-12);

    Regularizer en(RegKind::entropic);
    ActionSet sx = ActionSet::simplex(2);
    CHECK(three_point_check(en, sx, {0.2, 0.8}, {0.5, 0.5}, {0.6, 0.4}) <= 1e-12);
    CHECK(three_point_check(en, sx, {0.2, 0.8}, {0.2, 0.8}, {0.2, 0.8}) <= 1e-15);
}

TEST_CASE("simplex projection is exact on hand cases") {
    ActionSet sx = ActionSet::simplex(3);
    const Vec p = sx.project({1.2, 0.4, -0.6});
    CHECK(p[0] == doctest::Approx(0.9));
    CHECK(p[1] == doctest::Approx(0.1));
    CHECK(p[2] == doctest::Approx(0.0));
    CHECK(sx.contains(p));
}

TEST_CASE("geometry property suite") {
    // Energy inequalities, template inequality, strong convexity, bounded
    // divergence; >= 1e4 random instances per geometry, violation <= 1e-10.
    const int kInstances = 10000;
    for (const Geometry& g : property_geometries()) {
        CAPTURE(g.label);
        RngStream rng(42, 7);
        const double K = g.reg.modulus();
        const double H = g.reg.depth(g.set);
        const double diam = g.set.diameter();
        double lips = 0.0;  // max sampled dual norm of grad h (euclidean only)

        for (int it = 0; it < kInstances; ++it) {
            const Vec x = sample_point(g.set, rng);
            const Vec p = sample_point(g.set, rng);
            const Vec y = sample_dual(g.set.dim(), 1.5, rng);
            const Vec xp = g.reg.prox(g.set, x, y);

            const double dpx = g.reg.bregman(g.set, p, x);
            const double dpxp = g.reg.bregman(g.set, p, xp);
            const double dxpx = g.reg.bregman(g.set, xp, x);

            // strong convexity lower bound
            double pdist = 0.0;
            for (std::size_t j = 0; j < p.size(); ++j)
                pdist += (p[j] - x[j]) * (p[j] - x[j]);
            CHECK(dpx >= 0.5 * K * pdist - 1e-10);

            // sharp energy: D(p,x+) <= D(p,x) - D(x+,x) + <y, x+ - p>
            double e1 = dpx - dxpx;
            for (std::size_t j = 0; j < y.size(); ++j)
                e1 += y[j] * (xp[j] - p[j]);
            CHECK(dpxp <= e1 + 1e-10);

            // energy: D(p,x+) <= D(p,x) + <y, x - p> + ||y||^2 / 2K
            double e2 = dpx + norm2_sq(y) / (2.0 * K);
            for (std::size_t j = 0; j < y.size(); ++j)
                e2 += y[j] * (x[j] - p[j]);
            CHECK(dpxp <= e2 + 1e-10);

            // three-point identity
            CHECK(three_point_check(g.reg, g.set, p, x, xp) <= 1e-10);

            // prox feasibility and fixed point at zero
            CHECK(g.set.contains(xp, 1e-12));
            if (it % 100 == 0) {
                const Vec same = g.reg.prox(g.set, x, Vec(g.set.dim(), 0.0));
                for (std::size_t j = 0; j < x.size(); ++j)
                    CHECK(same[j] == doctest::Approx(x[j]).epsilon(1e-12));
            }

            if (g.reg.kind() == RegKind::euclidean) {
                lips = std::max(lips, norm2(g.reg.grad(x)));
                CHECK(dpx <= H + lips * diam + 1e-10);
            }
        }
    }
}

TEST_CASE("template inequality") {
    // weighted telescoping bound over a random dual sequence
    for (const Geometry& g : property_geometries()) {
        CAPTURE(g.label);
        RngStream rng(99, 3);
        const double K = g.reg.modulus();
        for (int rep = 0; rep < 500; ++rep) {
            const int stages = 12;
            const Vec p = sample_point(g.set, rng);
            Vec x = sample_point(g.set, rng);

            // lambda_n = 1/gamma_n for a decreasing power step, and a second
            // arbitrary nonnegative weight sequence
            for (int variant = 0; variant < 2; ++variant) {
                Vec lam(stages);
                for (int n = 0; n < stages; ++n)
                    lam[n] = variant == 0 ? std::pow(n + 1.0, 0.7)
                                          : 2.0 * rng.uniform01();

                Vec cur = x;
                double lhs = 0.0, rhs = 0.0;
                double lam_prev = 0.0;
                for (int n = 0; n < stages; ++n) {
                    const Vec y = sample_dual(g.set.dim(), 1.0, rng);
                    double inner = 0.0;
                    for (std::size_t j = 0; j < y.size(); ++j)
                        inner += y[j] * (p[j] - cur[j]);
                    lhs += lam[n] * inner;
                    rhs += (lam[n] - lam_prev) * g.reg.bregman(g.set, p, cur);
                    rhs += lam[n] * norm2_sq(y) / (2.0 * K);
                    lam_prev = lam[n];
                    cur = g.reg.prox(g.set, cur, y);
                }
                CHECK(lhs <= rhs + 1e-10);
            }
        }
    }
}

TEST_CASE("action set invariants") {
    CHECK_THROWS_AS(ActionSet::box({1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(ActionSet::ball({0.0}, 0.0), std::invalid_argument);
    CHECK(ActionSet::simplex(4).diameter() == doctest::Approx(std::sqrt(2.0)));
    CHECK(ActionSet::box({0.0, 0.0}, {1.0, 2.0}).diameter() ==
          doctest::Approx(std::sqrt(5.0)));
    CHECK(ActionSet::ball({1.0, 1.0}, 1.5).diameter() == doctest::Approx(3.0));

    // simplex tangent basis is orthonormal and sums to zero
    ActionSet sx = ActionSet::simplex(4);
    CHECK(sx.affine_dim() == 3);
    for (int k = 0; k < 3; ++k) {
        const Vec e = sx.tangent_basis(k);
        double sum = 0.0;
        for (double c : e) sum += c;
        CHECK(std::abs(sum) <= 1e-14);
        CHECK(norm2(e) == doctest::Approx(1.0));
        for (int l = k + 1; l < 3; ++l)
            CHECK(std::abs(dot(e, sx.tangent_basis(l))) <= 1e-14);
    }

    // inradius point stays inside: barycenter + r * tangent in set
    for (int k = 0; k < 3; ++k) {
        Vec z = sx.barycenter();
        const Vec e = sx.tangent_basis(k);
        for (int j = 0; j < 4; ++j) z[j] += sx.inradius() * e[j];
        CHECK(sx.contains(z, 1e-9));
    }
}
