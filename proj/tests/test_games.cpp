#include <doctest.h>

#include <cmath>
#include <memory>
#include <stdexcept>

#include "test_util.hpp"
#include "tvg/games.hpp"
#include "tvg/metrics.hpp"

using namespace tvg;
using test::sample_point;

namespace {

Profile sample_profile(const StageGame& g, RngStream& rng) {
    Profile x(g.players());
    for (int i = 0; i < g.players(); ++i) x[i] = sample_point(g.action_set(i), rng);
    return x;
}

// central finite difference of the payoff w.r.t. player i's coordinates
Vec fd_gradient(const StageGame& g, int i, const Profile& x, double h) {
    Vec out(x[i].size());
    Profile z = x;
    for (std::size_t j = 0; j < out.size(); ++j) {
        z[i][j] = x[i][j] + h;
        const double up = g.payoff(i, z);
        z[i][j] = x[i][j] - h;
        const double dn = g.payoff(i, z);
        z[i][j] = x[i][j];
        out[j] = (up - dn) / (2.0 * h);
    }
    return out;
}

std::shared_ptr<QuadraticNetwork> demo_quadratic(int players, int dim,
                                                 double mu, double beta) {
    std::vector<Vec> theta(players, Vec(dim));
    std::vector<ActionSet> boxes;
    for (int i = 0; i < players; ++i) {
        for (int j = 0; j < dim; ++j) theta[i][j] = 0.3 + 0.1 * i + 0.05 * j;
        boxes.push_back(ActionSet::box(Vec(dim, 0.0), Vec(dim, 1.0)));
    }
    return std::make_shared<QuadraticNetwork>(mu, beta, theta, boxes);
}

}  // namespace

TEST_CASE("payoff examples") {
    KellyAuction kelly({4.0}, 1.0, 1.0, {2.0});
    CHECK(kelly.payoff(0, {{1.0}}) == doctest::Approx(1.0));

    BilinearZeroSum mp({{1.0, -1.0}, {-1.0, 1.0}});
    CHECK(mp.payoff(0, {{0.5, 0.5}, {0.5, 0.5}}) == doctest::Approx(0.0));

    QuadraticNetwork qn(2.0, 0.0, {{0.3}}, {ActionSet::box({0.0}, {1.0})});
    CHECK(qn.payoff(0, {{0.3}}) == doctest::Approx(0.0));
}

TEST_CASE("gradient examples") {
    KellyAuction kelly({4.0}, 1.0, 1.0, {2.0});
    CHECK(kelly.gradient_i(0, {{1.0}})[0] == doctest::Approx(0.0));

    BilinearZeroSum mp({{1.0, -1.0}, {-1.0, 1.0}});
    const Vec v1 = mp.gradient_i(0, {{0.2, 0.8}, {0.7, 0.3}});
    CHECK(v1[0] == doctest::Approx(-(0.7 - 0.3)));
    CHECK(v1[1] == doctest::Approx(-(-0.7 + 0.3)));
    const Vec v2 = mp.gradient_i(1, {{0.2, 0.8}, {0.7, 0.3}});
    CHECK(v2[0] == doctest::Approx(0.2 - 0.8));
    CHECK(v2[1] == doctest::Approx(-0.2 + 0.8));

    QuadraticNetwork qn(1.0, 0.0, {{0.2}, {0.7}},
                        {ActionSet::box({0.0}, {1.0}), ActionSet::box({0.0}, {1.0})});
    const Profile g = qn.gradient({{0.0}, {0.0}});
    CHECK(g[0][0] == doctest::Approx(0.2));
    CHECK(g[1][0] == doctest::Approx(0.7));
}

TEST_CASE("analytic gradients match finite differences") {
    std::vector<std::shared_ptr<StageGame>> games;
    games.push_back(std::make_shared<KellyAuction>(Vec{4.0, 3.0, 2.0}, 1.0, 1.0,
                                                   Vec{2.0, 2.0, 2.0}));
    games.push_back(
        std::make_shared<BilinearZeroSum>(std::vector<Vec>{{1.0, -0.5}, {-0.5, 0.5}}));
    games.push_back(demo_quadratic(3, 2, 1.0, 0.2));
    games.push_back(std::make_shared<LinearSimplex>(Vec{0.3, -0.2, 0.9}));

    for (const auto& g : games) {
        RngStream rng(11, 0);
        for (int rep = 0; rep < 1000; ++rep) {
            const Profile x = sample_profile(*g, rng);
            for (int i = 0; i < g->players(); ++i) {
                const Vec va = g->gradient_i(i, x);
                const Vec vf = fd_gradient(*g, i, x, 1e-5);
                for (std::size_t j = 0; j < va.size(); ++j) {
                    const double scale = std::max(1.0, std::abs(va[j]));
                    CHECK(std::abs(va[j] - vf[j]) <= 1e-6 * scale);
                }
            }
        }
    }
}

TEST_CASE("monotonicity certificates") {
    // sampled <V(x') - V(x), x' - x> <= 0 (monotone) or <= -mu ||x'-x||^2
    std::shared_ptr<StageGame> kelly = std::make_shared<KellyAuction>(
        Vec{4.0, 3.0}, 1.0, 1.0, Vec{2.0, 2.0});
    std::shared_ptr<StageGame> mp =
        std::make_shared<BilinearZeroSum>(std::vector<Vec>{{1.0, -1.0}, {-1.0, 1.0}});
    auto quad = demo_quadratic(3, 1, 1.0, 0.2);
    const double mu_eff = quad->strong_modulus();
    CHECK(mu_eff == doctest::Approx(0.6));

    std::vector<std::shared_ptr<StageGame>> games{kelly, mp, quad};
    RngStream rng(21, 0);
    for (int rep = 0; rep < 10000; ++rep) {
        for (const auto& g : games) {
            const Profile a = sample_profile(*g, rng);
            const Profile b = sample_profile(*g, rng);
            const Profile va = g->gradient(a);
            const Profile vb = g->gradient(b);
            double inner = 0.0, dist2sum = 0.0;
            for (int i = 0; i < g->players(); ++i)
                for (std::size_t j = 0; j < a[i].size(); ++j) {
                    const double dx = b[i][j] - a[i][j];
                    inner += (vb[i][j] - va[i][j]) * dx;
                    dist2sum += dx * dx;
                }
            if (g == quad)
                CHECK(inner <= -mu_eff * dist2sum + 1e-9);
            else
                CHECK(inner <= 1e-12);
        }
    }
}

TEST_CASE("individual concavity certificate") {
    auto games = std::vector<std::shared_ptr<StageGame>>{
        std::make_shared<KellyAuction>(Vec{4.0, 3.0}, 1.0, 1.0, Vec{2.0, 2.0}),
        demo_quadratic(2, 2, 1.0, 0.2)};
    RngStream rng(33, 0);
    for (const auto& g : games) {
        for (int rep = 0; rep < 2000; ++rep) {
            const Profile x = sample_profile(*g, rng);
            const Profile xp = sample_profile(*g, rng);
            const double t = rng.uniform01();
            for (int i = 0; i < g->players(); ++i) {
                Profile mix = x;
                for (std::size_t j = 0; j < x[i].size(); ++j)
                    mix[i][j] = t * x[i][j] + (1.0 - t) * xp[i][j];
                Profile xi_only = x;
                xi_only[i] = xp[i];
                const double lhs = g->payoff(i, mix);
                const double rhs =
                    t * g->payoff(i, x) + (1.0 - t) * g->payoff(i, xi_only);
                CHECK(lhs >= rhs - 1e-9);
            }
        }
    }
}

TEST_CASE("gradient bound and Lipschitz metadata hold on samples") {
    auto games = std::vector<std::shared_ptr<StageGame>>{
        std::make_shared<KellyAuction>(Vec{4.0, 3.0}, 1.0, 1.0, Vec{2.0, 2.0}),
        std::make_shared<BilinearZeroSum>(std::vector<Vec>{{1.0, -0.5}, {-0.5, 0.5}}),
        demo_quadratic(3, 1, 1.0, 0.2)};
    RngStream rng(55, 0);
    for (const auto& g : games) {
        for (int rep = 0; rep < 5000; ++rep) {
            const Profile a = sample_profile(*g, rng);
            const Profile b = sample_profile(*g, rng);
            const Profile va = g->gradient(a);
            const Profile vb = g->gradient(b);
            CHECK(norm2(va) <= g->grad_bound() + 1e-9);
            double diff2 = 0.0, dist2sum = 0.0;
            for (int i = 0; i < g->players(); ++i)
                for (std::size_t j = 0; j < a[i].size(); ++j) {
                    diff2 += (vb[i][j] - va[i][j]) * (vb[i][j] - va[i][j]);
                    dist2sum += (b[i][j] - a[i][j]) * (b[i][j] - a[i][j]);
                }
            CHECK(std::sqrt(diff2) <=
                  g->grad_lipschitz() * std::sqrt(dist2sum) + 1e-9);
        }
    }
}

TEST_CASE("static sequence is constant") {
    auto quad = demo_quadratic(2, 1, 1.0, 0.1);
    const auto seq = GameSequence::static_sequence(quad);
    const Profile x{{0.4}, {0.6}};
    for (int n : {1, 5, 1000})
        CHECK(seq.payoff(n, 0, x) == doctest::Approx(seq.payoff(1, 0, x)));
}

TEST_CASE("stabilizing sequence: decay schedule and difference bound") {
    auto quad = demo_quadratic(3, 1, 1.0, 0.1);
    const auto seq = GameSequence::stabilizing(quad, 2.0, 0.5);
    CHECK(seq.beta_n(100) == doctest::Approx(0.2));

    // grid check: sum_i ||V_{i,n}(x) - V_i(x)|| <= beta_n
    RngStream rng(77, 0);
    for (int n : {1, 3, 10, 100, 10000}) {
        for (int rep = 0; rep < 200; ++rep) {
            Profile x(3);
            for (int i = 0; i < 3; ++i) x[i] = sample_point(quad->action_set(i), rng);
            double total = 0.0;
            for (int i = 0; i < 3; ++i) {
                const Vec vn = seq.gradient_i(n, i, x);
                const Vec v = quad->gradient_i(i, x);
                double d2 = 0.0;
                for (std::size_t j = 0; j < v.size(); ++j)
                    d2 += (vn[j] - v[j]) * (vn[j] - v[j]);
                total += std::sqrt(d2);
            }
            CHECK(total <= seq.beta_n(n) + 1e-12);
        }
    }

    // perturbed payoff matches the perturbed gradient (finite differences)
    const auto stage = seq.stage(7);
    RngStream rng2(78, 0);
    for (int rep = 0; rep < 200; ++rep) {
        Profile x(3);
        for (int i = 0; i < 3; ++i) x[i] = sample_point(quad->action_set(i), rng2);
        for (int i = 0; i < 3; ++i) {
            const Vec va = stage->gradient_i(i, x);
            const Vec vf = fd_gradient(*stage, i, x, 1e-6);
            for (std::size_t j = 0; j < va.size(); ++j)
                CHECK(std::abs(va[j] - vf[j]) <= 1e-5);
        }
    }
}

TEST_CASE("drifting sequence: equilibrium variation matches the exponent") {
    std::vector<Vec> theta{{0.5}, {0.5}};
    std::vector<ActionSet> boxes{ActionSet::box({0.0}, {1.0}),
                                 ActionSet::box({0.0}, {1.0})};
    auto base = std::make_shared<QuadraticNetwork>(1.0, 0.1, theta, boxes);
    const double v = 0.5;
    const auto seq = GameSequence::drifting(base, v, 0.25, 0.6);

    const int horizon = 100000;
    Vec cumvar(horizon);
    double acc = 0.0;
    auto prev = *seq.nash(1);
    for (int n = 1; n <= horizon; ++n) {
        const auto cur = *seq.nash(n + 1);
        acc += dist2(cur, prev);
        prev = cur;
        cumvar[n - 1] = acc;
    }
    CHECK(equilibrium_variation(seq, horizon) == doctest::Approx(acc));

    const RateFit fit = fit_rate(cumvar, Window{horizon / 2, horizon});
    CHECK(fit.slope >= v - 0.05);
    CHECK(fit.slope <= v + 0.05);

    // configured magnitude within a factor of 4 on the log-log fit:
    // theta path length is rho * wrap * T^v, and the NE map is contractive
    const double predicted = 0.25 * 0.6 * std::pow(double(horizon), v);
    CHECK(acc >= predicted / 4.0);
    CHECK(acc <= predicted * 4.0);

    // consecutive NE displacement decays like n^{v-1}
    const double hop_small = dist2(*seq.nash(10001), *seq.nash(10000));
    const double hop_large = dist2(*seq.nash(90001), *seq.nash(90000));
    const double ratio = hop_large / hop_small;
    const double expected = std::pow(9.0, v - 1.0);
    CHECK(ratio == doctest::Approx(expected).epsilon(0.2));
}

TEST_CASE("stage materialization agrees with direct evaluators") {
    std::vector<Vec> theta{{0.5}, {0.5}};
    std::vector<ActionSet> boxes{ActionSet::box({0.0}, {1.0}),
                                 ActionSet::box({0.0}, {1.0})};
    auto base = std::make_shared<QuadraticNetwork>(1.0, 0.1, theta, boxes);
    const auto seq = GameSequence::drifting(base, 0.5, 0.2, 0.6);
    const Profile x{{0.3}, {0.8}};
    for (int n : {1, 17, 4242}) {
        const auto stage = seq.stage(n);
        for (int i = 0; i < 2; ++i) {
            CHECK(stage->payoff(i, x) == doctest::Approx(seq.payoff(n, i, x)));
            CHECK(stage->gradient_i(i, x)[0] ==
                  doctest::Approx(seq.gradient_i(n, i, x)[0]));
        }
    }
}

TEST_CASE("family validation") {
    CHECK_THROWS_AS(KellyAuction({4.0}, 1.0, 0.0, {2.0}), std::invalid_argument);
    CHECK_THROWS_AS(QuadraticNetwork(1.0, 0.6, {{0.5}, {0.5}},
                                     {ActionSet::box({0.0}, {1.0}),
                                      ActionSet::box({0.0}, {1.0})}),
                    std::invalid_argument);
}
