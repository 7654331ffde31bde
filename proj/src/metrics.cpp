#include "tvg/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "tvg/equilibrium.hpp"

namespace tvg {

namespace {

void check_window(const RunTrace& t, Window w) {
    if (w.start < 1 || w.end > t.horizon || w.start > w.end)
        throw std::invalid_argument("window outside trace");
}

}  // namespace

double gap(const RunTrace& t, int i, Window w) {
    check_window(t, w);
    if (t.grads.empty())
        throw std::invalid_argument("gap: trace has no cached gradients");
    const int d = t.dims[i];
    int off = 0;
    for (int k = 0; k < i; ++k) off += t.dims[k];

    Vec gsum(d, 0.0);
    double inner = 0.0;
    for (int n = w.start; n <= w.end; ++n) {
        const double* grow =
            t.grads.data() + static_cast<std::size_t>(n - 1) * t.total_dim + off;
        const double* xrow =
            t.actions.data() + static_cast<std::size_t>(n - 1) * t.total_dim + off;
        for (int j = 0; j < d; ++j) {
            gsum[j] += grow[j];
            inner += grow[j] * xrow[j];
        }
    }
    const auto [arg, val] = t.seq->action_set(i).support_max(gsum);
    (void)arg;
    return val - inner;
}

namespace {

// Projected gradient ascent on the summed unilateral payoff; the objective
// is concave so this is a certified inner solver.
Vec pga_best_fixed(const RunTrace& t, int i, Window w) {
    const GameSequence& seq = *t.seq;
    const ActionSet& set = seq.action_set(i);
    const int stages = w.end - w.start + 1;
    double lips = stages * std::max(seq.limit_game().grad_lipschitz(), 1e-12);
    const double step = 1.0 / lips;

    Vec x = set.barycenter();
    double prev = -std::numeric_limits<double>::infinity();
    for (int it = 0; it < 500; ++it) {
        Vec g(set.dim(), 0.0);
        double val = 0.0;
        for (int n = w.start; n <= w.end; ++n) {
            Profile z = t.profile_at(n);
            z[i] = x;
            const Vec gn = seq.gradient_i(n, i, z);
            for (int j = 0; j < set.dim(); ++j) g[j] += gn[j];
            val += seq.payoff(n, i, z);
        }
        if (std::abs(val - prev) <= 1e-8 * std::max(1.0, std::abs(val))) break;
        prev = val;
        Vec z(set.dim());
        for (int j = 0; j < set.dim(); ++j) z[j] = x[j] + step * g[j];
        x = set.project(z);
    }
    return x;
}

const QuadraticNetwork* as_quadratic(const GameSequence& seq) {
    return dynamic_cast<const QuadraticNetwork*>(&seq.limit_game());
}
const KellyAuction* as_kelly(const GameSequence& seq) {
    return dynamic_cast<const KellyAuction*>(&seq.limit_game());
}
const BilinearZeroSum* as_bilinear(const GameSequence& seq) {
    return dynamic_cast<const BilinearZeroSum*>(&seq.limit_game());
}
const LinearSimplex* as_linear(const GameSequence& seq) {
    return dynamic_cast<const LinearSimplex*>(&seq.limit_game());
}

// sum over the window of the other players' actions, per coordinate of
// player i's block (all players share the coordinate layout in the
// quadratic family)
Vec summed_others(const RunTrace& t, int i, Window w) {
    const int d = t.dims[i];
    Vec s(d, 0.0);
    for (int n = w.start; n <= w.end; ++n) {
        const double* row = t.actions.data() + static_cast<std::size_t>(n - 1) * t.total_dim;
        int off = 0;
        for (int k = 0; k < t.players; ++k) {
            if (k != i)
                for (int j = 0; j < d; ++j) s[j] += row[off + j];
            off += t.dims[k];
        }
    }
    return s;
}

}  // namespace

Vec best_fixed_action(const RunTrace& t, int i, Window w) {
    check_window(t, w);
    const GameSequence& seq = *t.seq;
    const int stages = w.end - w.start + 1;

    if (seq.kind() == DriftKind::stabilizing) return pga_best_fixed(t, i, w);

    if (const auto* lin = as_linear(seq)) {
        Vec c = lin->coefficients();
        for (double& v : c) v *= stages;
        return seq.action_set(i).support_max(c).first;
    }
    if (const auto* bz = as_bilinear(seq)) {
        // summed unilateral payoff is linear: -x1' A S2 resp. x2' A' S1
        const auto& a = bz->matrix();
        Vec c;
        if (i == 0) {
            Vec s2(t.dims[1], 0.0);
            for (int n = w.start; n <= w.end; ++n) {
                Profile p = t.profile_at(n);
                for (int j = 0; j < t.dims[1]; ++j) s2[j] += p[1][j];
            }
            c.assign(t.dims[0], 0.0);
            for (int r = 0; r < t.dims[0]; ++r) c[r] = -dot(a[r], s2);
        } else {
            Vec s1(t.dims[0], 0.0);
            for (int n = w.start; n <= w.end; ++n) {
                Profile p = t.profile_at(n);
                for (int j = 0; j < t.dims[0]; ++j) s1[j] += p[0][j];
            }
            c.assign(t.dims[1], 0.0);
            for (int r = 0; r < t.dims[0]; ++r)
                for (int col = 0; col < t.dims[1]; ++col) c[col] += a[r][col] * s1[r];
        }
        return seq.action_set(i).support_max(c).first;
    }
    if (const auto* qn = as_quadratic(seq)) {
        // argmax of -(W mu / 2)||x||^2 + <mu sum theta_i(n) - beta sum s, x>
        Vec tsum(t.dims[i], 0.0);
        for (int n = w.start; n <= w.end; ++n) {
            const std::vector<Vec> th = seq.kind() == DriftKind::drifting
                                            ? seq.theta_at(n)
                                            : qn->theta();
            for (int j = 0; j < t.dims[i]; ++j) tsum[j] += th[i][j];
        }
        const Vec s = summed_others(t, i, w);
        const ActionSet& set = seq.action_set(i);
        Vec x(t.dims[i]);
        for (int j = 0; j < t.dims[i]; ++j) {
            const double raw =
                (qn->mu() * tsum[j] - qn->beta() * s[j]) / (stages * qn->mu());
            x[j] = std::min(set.hi()[j], std::max(set.lo()[j], raw));
        }
        return x;
    }
    if (const auto* ka = as_kelly(seq)) {
        // concave in the scalar bid, derivative strictly decreasing -> bisection
        const ActionSet& set = seq.action_set(i);
        auto dF = [&](double x) {
            double v = 0.0;
            for (int n = w.start; n <= w.end; ++n) {
                Profile z = t.profile_at(n);
                z[i][0] = x;
                v += ka->gradient_i(i, z)[0];
            }
            return v;
        };
        double lo = set.lo()[0], hi = set.hi()[0];
        if (dF(lo) <= 0.0) return Vec{lo};
        if (dF(hi) >= 0.0) return Vec{hi};
        for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
            const double mid = 0.5 * (lo + hi);
            (dF(mid) > 0.0 ? lo : hi) = mid;
        }
        return Vec{0.5 * (lo + hi)};
    }
    return pga_best_fixed(t, i, w);
}

double static_regret(const RunTrace& t, int i, Window w) {
    check_window(t, w);
    const GameSequence& seq = *t.seq;
    const Vec best = best_fixed_action(t, i, w);
    double shortfall = 0.0;
    for (int n = w.start; n <= w.end; ++n) {
        Profile z = t.profile_at(n);
        const double played = seq.payoff(n, i, z);
        z[i] = best;
        shortfall += seq.payoff(n, i, z) - played;
    }
    return shortfall;
}

Vec best_response(const GameSequence& seq, int n, int i, const Profile& x) {
    if (const auto* qn = dynamic_cast<const QuadraticNetwork*>(&seq.limit_game())) {
        if (seq.kind() != DriftKind::stabilizing) {
            const std::vector<Vec> th =
                seq.kind() == DriftKind::drifting ? seq.theta_at(n) : qn->theta();
            const ActionSet& set = seq.action_set(i);
            Vec out(x[i].size());
            for (std::size_t j = 0; j < out.size(); ++j) {
                double others = 0.0;
                for (int k = 0; k < seq.players(); ++k)
                    if (k != i) others += x[k][j];
                const double raw = th[i][j] - qn->beta() / qn->mu() * others;
                out[j] = std::min(set.hi()[j], std::max(set.lo()[j], raw));
            }
            return out;
        }
    }
    if (const auto* ka = dynamic_cast<const KellyAuction*>(&seq.limit_game())) {
        if (seq.kind() == DriftKind::static_seq) {
            // u' = g q (c+s) / (c+s+x)^2 - 1, strictly decreasing in the bid
            const ActionSet& set = seq.action_set(i);
            auto dU = [&](double xi) {
                Profile z = x;
                z[i][0] = xi;
                return ka->gradient_i(i, z)[0];
            };
            double lo = set.lo()[0], hi = set.hi()[0];
            if (dU(lo) <= 0.0) return Vec{lo};
            if (dU(hi) >= 0.0) return Vec{hi};
            for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
                const double mid = 0.5 * (lo + hi);
                (dU(mid) > 0.0 ? lo : hi) = mid;
            }
            return Vec{0.5 * (lo + hi)};
        }
    }
    if (dynamic_cast<const BilinearZeroSum*>(&seq.limit_game()) ||
        dynamic_cast<const LinearSimplex*>(&seq.limit_game())) {
        const Vec vi = seq.gradient_i(n, i, x);
        return seq.action_set(i).support_max(vi).first;
    }
    throw std::invalid_argument("best_response: no closed form for this family");
}

double dynamic_regret(const RunTrace& t, int i, Window w) {
    check_window(t, w);
    const GameSequence& seq = *t.seq;
    double shortfall = 0.0;
    for (int n = w.start; n <= w.end; ++n) {
        Profile z = t.profile_at(n);
        const double played = seq.payoff(n, i, z);
        z[i] = best_response(seq, n, i, z);
        shortfall += seq.payoff(n, i, z) - played;
    }
    return shortfall;
}

Vec dynamic_regret_series(const RunTrace& t, int i) {
    Vec out(t.horizon);
    const GameSequence& seq = *t.seq;
    double acc = 0.0;
    for (int n = 1; n <= t.horizon; ++n) {
        Profile z = t.profile_at(n);
        const double played = seq.payoff(n, i, z);
        z[i] = best_response(seq, n, i, z);
        acc += seq.payoff(n, i, z) - played;
        out[n - 1] = acc;
    }
    return out;
}

namespace {

double stage_sq_err(const RunTrace& t, int n, bool use_realized) {
    const auto ne = t.seq->nash(n);
    if (!ne)
        throw std::invalid_argument(
            "tracking_error: sequence has no per-stage equilibrium oracle");
    const Profile x = use_realized ? t.realized_at(n) : t.profile_at(n);
    double s = 0.0;
    for (int i = 0; i < t.players; ++i)
        for (std::size_t j = 0; j < x[i].size(); ++j) {
            const double d = x[i][j] - (*ne)[i][j];
            s += d * d;
        }
    return s;
}

}  // namespace

double tracking_error(const RunTrace& t, Window w, bool use_realized) {
    check_window(t, w);
    if (use_realized && !t.bandit)
        throw std::invalid_argument("tracking_error: trace has no realized actions");
    double s = 0.0;
    for (int n = w.start; n <= w.end; ++n) s += stage_sq_err(t, n, use_realized);
    return s;
}

Vec tracking_error_series(const RunTrace& t, bool use_realized) {
    Vec out(t.horizon);
    double acc = 0.0;
    for (int n = 1; n <= t.horizon; ++n) {
        acc += stage_sq_err(t, n, use_realized);
        out[n - 1] = acc;
    }
    return out;
}

double equilibrium_variation(const GameSequence& seq, int horizon) {
    auto prev = seq.nash(1);
    if (!prev)
        throw std::invalid_argument(
            "equilibrium_variation: sequence has no equilibrium oracle");
    double v = 0.0;
    for (int n = 1; n <= horizon; ++n) {
        const auto cur = seq.nash(n + 1);
        v += dist2(*cur, *prev);
        prev = cur;
    }
    return v;
}

RateFit fit_rate(const Vec& series, Window w) {
    if (w.start < 1 || w.end > static_cast<int>(series.size()) || w.start > w.end)
        throw std::invalid_argument("fit_rate: window outside series");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    int m = 0;
    for (int n = w.start; n <= w.end; ++n) {
        const double y = series[n - 1];
        if (!(y > 0.0))
            throw std::invalid_argument("fit_rate: series must be positive");
        const double lx = std::log(static_cast<double>(n));
        const double ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        syy += ly * ly;
        ++m;
    }
    const double denom = m * sxx - sx * sx;
    RateFit f;
    if (denom == 0.0) {  // single point
        f.slope = 0.0;
        f.intercept = sy / m;
        f.r_squared = 1.0;
        return f;
    }
    f.slope = (m * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / m;
    const double sst = syy - sy * sy / m;
    double sse = 0.0;
    for (int n = w.start; n <= w.end; ++n) {
        const double r =
            std::log(series[n - 1]) - (f.intercept + f.slope * std::log((double)n));
        sse += r * r;
    }
    f.r_squared = sst > 0.0 ? 1.0 - sse / sst : 1.0;
    return f;
}

Vec bregman_to_ne(const RunTrace& t, const Regularizer& reg) {
    const StageGame& limit = t.seq->limit_game();
    Profile star;
    if (auto ne = limit.closed_form_nash()) {
        star = *ne;
    } else {
        star = nash_extragradient(limit, 1e-10, 200000).point;
    }
    Vec out(t.horizon);
    for (int n = 1; n <= t.horizon; ++n) {
        const Profile x = t.profile_at(n);
        double d = 0.0;
        for (int i = 0; i < t.players; ++i)
            d += reg.bregman(t.seq->action_set(i), star[i], x[i]);
        out[n - 1] = d;
    }
    return out;
}

std::vector<Profile> ergodic_average(const RunTrace& t) {
    std::vector<Profile> out;
    out.reserve(t.horizon);
    Profile acc(t.players);
    for (int i = 0; i < t.players; ++i) acc[i].assign(t.dims[i], 0.0);
    double wsum = 0.0;
    for (int n = 1; n <= t.horizon; ++n) {
        const Profile x = t.profile_at(n);
        const double g = t.gamma[n - 1];
        wsum += g;
        for (int i = 0; i < t.players; ++i)
            for (int j = 0; j < t.dims[i]; ++j)
                acc[i][j] += g * x[i][j];
        Profile bar(t.players);
        for (int i = 0; i < t.players; ++i) {
            bar[i].resize(t.dims[i]);
            for (int j = 0; j < t.dims[i]; ++j) bar[i][j] = acc[i][j] / wsum;
        }
        out.push_back(std::move(bar));
    }
    return out;
}

Profile ergodic_average_at(const RunTrace& t, int n) {
    if (n < 1 || n > t.horizon) throw std::out_of_range("ergodic_average_at");
    Profile acc(t.players);
    for (int i = 0; i < t.players; ++i) acc[i].assign(t.dims[i], 0.0);
    double wsum = 0.0;
    for (int k = 1; k <= n; ++k) {
        const Profile x = t.profile_at(k);
        const double g = t.gamma[k - 1];
        wsum += g;
        for (int i = 0; i < t.players; ++i)
            for (int j = 0; j < t.dims[i]; ++j) acc[i][j] += g * x[i][j];
    }
    for (int i = 0; i < t.players; ++i)
        for (int j = 0; j < t.dims[i]; ++j) acc[i][j] /= wsum;
    return acc;
}

void write_trace_csv(std::ostream& os, const RunTrace& t, const Regularizer& reg) {
    os << "# tvg-trace v1\n";
    const bool has_ne = t.seq->nash(1).has_value();
    Vec breg;
    bool has_breg = false;
    if (t.seq->limit_game().closed_form_nash().has_value()) {
        breg = bregman_to_ne(t, reg);
        has_breg = true;
    }

    os << "n";
    for (int i = 0; i < t.players; ++i)
        for (int j = 0; j < t.dims[i]; ++j) os << ",x" << i + 1 << "_" << j + 1;
    if (t.bandit)
        for (int i = 0; i < t.players; ++i)
            for (int j = 0; j < t.dims[i]; ++j) os << ",xhat" << i + 1 << "_" << j + 1;
    os << ",gamma";
    if (t.bandit) os << ",delta";
    if (has_ne) os << ",sq_track_err";
    if (has_breg) os << ",bregman_to_ne";
    if (t.has_diagnostics) os << ",bias_norm,noise_norm,vhat_norm";
    os << "\n";

    char buf[32];
    auto emit = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        os << ',' << buf;
    };
    for (int n = 1; n <= t.horizon; ++n) {
        os << n;
        const double* row =
            t.actions.data() + static_cast<std::size_t>(n - 1) * t.total_dim;
        for (int j = 0; j < t.total_dim; ++j) emit(row[j]);
        if (t.bandit) {
            const double* rrow =
                t.realized.data() + static_cast<std::size_t>(n - 1) * t.total_dim;
            for (int j = 0; j < t.total_dim; ++j) emit(rrow[j]);
        }
        emit(t.gamma[n - 1]);
        if (t.bandit) emit(t.delta[n - 1]);
        if (has_ne) emit(stage_sq_err(t, n, t.bandit));
        if (has_breg) emit(breg[n - 1]);
        if (t.has_diagnostics) {
            emit(t.bias_norm.empty() ? 0.0 : t.bias_norm[n - 1]);
            emit(t.noise_norm.empty() ? 0.0 : t.noise_norm[n - 1]);
            emit(t.vhat_norm.empty() ? 0.0 : t.vhat_norm[n - 1]);
        }
        os << "\n";
    }
}

}  // namespace tvg
