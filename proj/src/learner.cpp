#include "tvg/learner.hpp"

#include <cmath>
#include <stdexcept>

namespace tvg {

StepSchedule StepSchedule::constant(double g) {
    if (!(g > 0.0)) throw std::invalid_argument("StepSchedule: gamma must be > 0");
    return StepSchedule(Kind::constant, g, 0.0);
}

StepSchedule StepSchedule::power(double g0, double p) {
    if (!(g0 > 0.0)) throw std::invalid_argument("StepSchedule: gamma0 must be > 0");
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("StepSchedule: power exponent must lie in (0,1]");
    return StepSchedule(Kind::power, g0, p);
}

StepSchedule StepSchedule::inverse_log(double g0) {
    if (!(g0 > 0.0)) throw std::invalid_argument("StepSchedule: gamma0 must be > 0");
    return StepSchedule(Kind::inverse_log, g0, 0.0);
}

double StepSchedule::gamma(int n) const {
    switch (kind_) {
        case Kind::constant:
            return gamma0_;
        case Kind::power:
            return gamma0_ * std::pow(static_cast<double>(n), -p_);
        case Kind::inverse_log:
            return gamma0_ / std::log(static_cast<double>(n) + 2.718281828459045);
    }
    return gamma0_;
}

Profile RunTrace::unpack(const std::vector<double>& flat, int n) const {
    if (n < 1 || n > horizon) throw std::out_of_range("RunTrace: stage out of range");
    Profile p(players);
    const double* row = flat.data() + static_cast<std::size_t>(n - 1) * total_dim;
    for (int i = 0; i < players; ++i) {
        p[i].assign(row, row + dims[i]);
        row += dims[i];
    }
    return p;
}

Profile prox_learn_step(const Regularizer& reg, const GameSequence& seq,
                        const Profile& x, const Profile& vhat, double gamma) {
    Profile next(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        Vec y(vhat[i].size());
        for (std::size_t j = 0; j < y.size(); ++j) y[j] = gamma * vhat[i][j];
        next[i] = reg.prox(seq.action_set(static_cast<int>(i)), x[i], y);
    }
    return next;
}

namespace {

struct TraceBuilder {
    RunTrace t;

    TraceBuilder(std::shared_ptr<const GameSequence> seq, int horizon, bool bandit,
                 bool diag) {
        t.seq = std::move(seq);
        t.players = t.seq->players();
        t.horizon = horizon;
        t.bandit = bandit;
        t.has_diagnostics = diag;
        for (int i = 0; i < t.players; ++i) t.dims.push_back(t.seq->action_set(i).dim());
        t.total_dim = 0;
        for (int d : t.dims) t.total_dim += d;
        const std::size_t cells = static_cast<std::size_t>(horizon) * t.total_dim;
        t.actions.resize(cells);
        if (bandit) t.realized.resize(cells);
        if (diag) t.grads.resize(cells);
        t.gamma.resize(horizon);
        if (bandit) t.delta.resize(horizon);
        if (diag) {
            t.bias_norm.resize(horizon);
            t.noise_norm.resize(horizon);
            t.vhat_norm.resize(horizon);
        }
    }

    void pack(std::vector<double>& flat, int n, const Profile& p) {
        double* row = flat.data() + static_cast<std::size_t>(n - 1) * t.total_dim;
        for (const Vec& v : p)
            for (double c : v) *row++ = c;
    }
};

Profile initial_profile(const GameSequence& seq, const Regularizer& reg) {
    Profile x(seq.players());
    for (int i = 0; i < seq.players(); ++i) x[i] = reg.dgf_min(seq.action_set(i));
    return x;
}

}  // namespace

RunTrace run_gradient(std::shared_ptr<const GameSequence> seq,
                      const Regularizer& reg, const StepSchedule& sched,
                      const NoiseSchedule& noise, int horizon, std::uint64_t seed,
                      bool with_diagnostics) {
    if (horizon < 1) throw std::invalid_argument("run_gradient: horizon must be >= 1");
    TraceBuilder b(seq, horizon, /*bandit=*/false, with_diagnostics);
    SfoOracle oracle(*seq, noise, seed);

    Profile x = initial_profile(*seq, reg);
    for (int n = 1; n <= horizon; ++n) {
        b.pack(b.t.actions, n, x);
        const double g = sched.gamma(n);
        b.t.gamma[n - 1] = g;

        FeedbackSignal f = oracle.feedback(n, x);
        if (!all_finite(f.vhat))
            throw std::runtime_error("run_gradient: non-finite signal at stage " +
                                     std::to_string(n));
        if (with_diagnostics) {
            b.pack(b.t.grads, n, f.vtrue);
            b.t.bias_norm[n - 1] = f.bias_norm;
            b.t.noise_norm[n - 1] = f.noise_norm;
            b.t.vhat_norm[n - 1] = norm2(f.vhat);
        }
        x = prox_learn_step(reg, *seq, x, f.vhat, g);
    }
    return std::move(b.t);
}

RunTrace run_bandit(std::shared_ptr<const GameSequence> seq,
                    const Regularizer& reg, const StepSchedule& sched,
                    const SpsaConfig& spsa, int horizon, std::uint64_t seed,
                    bool with_diagnostics) {
    if (horizon < 1) throw std::invalid_argument("run_bandit: horizon must be >= 1");
    spsa.validate(horizon);
    TraceBuilder b(seq, horizon, /*bandit=*/true, with_diagnostics);
    SpsaOracle oracle(*seq, spsa, seed);

    Profile x = initial_profile(*seq, reg);
    for (int n = 1; n <= horizon; ++n) {
        b.pack(b.t.actions, n, x);
        const double g = sched.gamma(n);
        b.t.gamma[n - 1] = g;
        b.t.delta[n - 1] = spsa.delta(n);

        SpsaOutcome o = oracle.feedback(n, x);
        if (!all_finite(o.vhat))
            throw std::runtime_error("run_bandit: non-finite signal at stage " +
                                     std::to_string(n));
        b.pack(b.t.realized, n, o.realized);
        if (with_diagnostics) {
            b.pack(b.t.grads, n, o.vtrue);
            b.t.vhat_norm[n - 1] = norm2(o.vhat);
        }
        x = prox_learn_step(reg, *seq, x, o.vhat, g);
    }
    return std::move(b.t);
}

}  // namespace tvg
