#include "tvg/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tvg/rng.hpp"

namespace tvg {

Profile nash_closed_form(const StageGame& g) {
    auto ne = g.closed_form_nash();
    if (!ne)
        throw std::invalid_argument("nash_closed_form: family has no closed form");
    return *ne;
}

double stampacchia_residual(const StageGame& g, const Profile& p) {
    double res = 0.0;
    for (int i = 0; i < g.players(); ++i) {
        const Vec vi = g.gradient_i(i, p);
        const auto [arg, val] = g.action_set(i).support_max(vi);
        (void)arg;
        res += val - dot(vi, p[i]);
    }
    return res;
}

namespace {

Profile random_profile(const StageGame& g, RngStream& rng) {
    Profile x(g.players());
    for (int i = 0; i < g.players(); ++i) {
        const ActionSet& s = g.action_set(i);
        Vec v(s.dim());
        switch (s.kind()) {
            case SetKind::box:
                for (int j = 0; j < s.dim(); ++j)
                    v[j] = s.lo()[j] + rng.uniform01() * (s.hi()[j] - s.lo()[j]);
                break;
            case SetKind::ball: {
                for (int j = 0; j < s.dim(); ++j) v[j] = rng.normal();
                const double n = norm2(v);
                const double r =
                    s.radius() * std::pow(rng.uniform01(), 1.0 / s.dim());
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
        x[i] = std::move(v);
    }
    return x;
}

}  // namespace

double minty_residual(const StageGame& g, const Profile& p, int nsamples,
                      std::uint64_t seed) {
    RngStream rng(seed, 0x4d696e7479ULL);  // dedicated purpose stream
    double worst = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < nsamples; ++k) {
        const Profile x = random_profile(g, rng);
        const Profile v = g.gradient(x);
        double val = 0.0;
        for (int i = 0; i < g.players(); ++i)
            val += dot(v[i], x[i]) - dot(v[i], p[i]);
        worst = std::max(worst, val);
    }
    return worst;
}

EquilibriumCertificate nash_extragradient(const StageGame& g, double tol,
                                          int max_iters) {
    const int n = g.players();
    const double step = 1.0 / (2.0 * std::max(g.grad_lipschitz(), 1e-9));
    const bool average = g.monotonicity() == Monotonicity::monotone;

    Profile x(n);
    for (int i = 0; i < n; ++i) x[i] = g.action_set(i).barycenter();
    Profile avg = x;
    double weight = 0.0;

    auto half_step = [&](const Profile& from, const Profile& grad) {
        Profile out(n);
        for (int i = 0; i < n; ++i) {
            Vec z(from[i].size());
            for (std::size_t j = 0; j < z.size(); ++j)
                z[j] = from[i][j] + step * grad[i][j];
            out[i] = g.action_set(i).project(z);
        }
        return out;
    };

    double res = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= max_iters; ++it) {
        const Profile mid = half_step(x, g.gradient(x));
        x = half_step(x, g.gradient(mid));
        if (average) {
            weight += 1.0;
            for (int i = 0; i < n; ++i)
                for (std::size_t j = 0; j < x[i].size(); ++j)
                    avg[i][j] += (x[i][j] - avg[i][j]) / weight;
        }
        // residual checks are O(eval), so test periodically
        if (it % 10 == 0 || it == max_iters) {
            const Profile& cand = average ? avg : x;
            res = stampacchia_residual(g, cand);
            if (res <= tol) {
                EquilibriumCertificate cert;
                cert.point = cand;
                cert.stampacchia_residual = res;
                cert.minty_residual = minty_residual(g, cand, 2000, 0xe9);
                cert.iterations = it;
                return cert;
            }
        }
    }
    throw std::runtime_error(
        "nash_extragradient: no convergence after max_iters (last residual " +
        std::to_string(res) + ")");
}

double saddle_gap(const BilinearZeroSum& g, const Profile& x) {
    const auto& a = g.matrix();
    const int d1 = static_cast<int>(a.size());
    const int d2 = static_cast<int>(a[0].size());
    // max over columns of A' x1
    double best_col = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < d2; ++c) {
        double v = 0.0;
        for (int r = 0; r < d1; ++r) v += a[r][c] * x[0][r];
        best_col = std::max(best_col, v);
    }
    // min over rows of A x2
    double worst_row = std::numeric_limits<double>::infinity();
    for (int r = 0; r < d1; ++r) worst_row = std::min(worst_row, dot(a[r], x[1]));
    return best_col - worst_row;
}

}  // namespace tvg
