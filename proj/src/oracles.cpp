#include "tvg/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace tvg {

double NoiseSchedule::bias_magnitude(int n) const {
    if (b0_ == 0.0) return 0.0;
    return b0_ * std::pow(static_cast<double>(n), -lb_);
}

double NoiseSchedule::sigma(int n) const {
    if (sigma0_ == 0.0) return 0.0;
    return sigma0_ * std::pow(static_cast<double>(n), s_);
}

SfoOracle::SfoOracle(const GameSequence& seq, NoiseSchedule sched,
                     std::uint64_t seed)
    : seq_(seq), sched_(sched) {
    const int n = seq.players();
    streams_.reserve(n + 1);
    for (int i = 0; i <= n; ++i) streams_.emplace_back(seed, i);
    // run-level stream draws the fixed unit bias direction
    RngStream& run_stream = streams_.back();
    bias_dir_.resize(n);
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
        bias_dir_[i].resize(seq.action_set(i).dim());
        for (double& v : bias_dir_[i]) {
            v = run_stream.normal();
            norm += v * v;
        }
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) norm = 1.0;
    for (Vec& v : bias_dir_)
        for (double& c : v) c /= norm;
}

FeedbackSignal SfoOracle::feedback(int n, const Profile& x) {
    FeedbackSignal f;
    f.vtrue = seq_.gradient(n, x);
    f.vhat = f.vtrue;

    const double b = sched_.bias_magnitude(n);
    if (b > 0.0) {
        for (std::size_t i = 0; i < f.vhat.size(); ++i)
            for (std::size_t j = 0; j < f.vhat[i].size(); ++j)
                f.vhat[i][j] += b * bias_dir_[i][j];
        f.bias_norm = b;
    }

    const double sig = sched_.sigma(n);
    if (sig > 0.0) {
        int total_dim = 0;
        for (const Vec& v : f.vhat) total_dim += static_cast<int>(v.size());
        const double scale = sig / std::sqrt(static_cast<double>(total_dim));
        double nn = 0.0;
        for (std::size_t i = 0; i < f.vhat.size(); ++i)
            for (std::size_t j = 0; j < f.vhat[i].size(); ++j) {
                const double z = scale * streams_[i].normal();
                f.vhat[i][j] += z;
                nn += z * z;
            }
        f.noise_norm = std::sqrt(nn);
    }
    return f;
}

SpsaConfig::SpsaConfig(const std::vector<ActionSet>& sets, double delta0,
                       double q)
    : delta0_(delta0), q_(q) {
    if (!(delta0 > 0.0)) throw std::invalid_argument("SpsaConfig: delta0 must be > 0");
    if (!(q > 0.0 && q <= 1.0))
        throw std::invalid_argument("SpsaConfig: q must lie in (0, 1]");
    for (const ActionSet& s : sets) {
        if (s.affine_dim() < 1)
            throw std::invalid_argument("SpsaConfig: degenerate action set");
        base_.push_back(s.barycenter());
        radius_.push_back(s.inradius());
    }
    validate(1);
}

double SpsaConfig::delta(int n) const {
    return delta0_ * std::pow(static_cast<double>(n), -q_);
}

void SpsaConfig::validate(int horizon) const {
    // delta_n is nonincreasing, so the first stage is the binding one
    (void)horizon;
    for (double r : radius_)
        if (!(delta(1) < r))
            throw std::invalid_argument(
                "SpsaConfig: delta_1 >= safety radius; shrink delta0");
}

SpsaOracle::SpsaOracle(const GameSequence& seq, SpsaConfig cfg,
                       std::uint64_t seed)
    : seq_(seq), cfg_(std::move(cfg)) {
    for (int i = 0; i < seq.players(); ++i) streams_.emplace_back(seed, i);
}

SpsaOutcome SpsaOracle::feedback(int n, const Profile& x) {
    const int players = seq_.players();
    const double dl = cfg_.delta(n);

    SpsaOutcome out;
    out.realized.resize(players);
    out.vhat.resize(players);
    out.payoffs.resize(players);

    std::vector<Vec> dirs(players);
    for (int i = 0; i < players; ++i) {
        const ActionSet& set = seq_.action_set(i);
        const int ad = set.affine_dim();
        const auto draw = streams_[i].uniform_below(2ULL * ad);
        const int k = static_cast<int>(draw >> 1);
        const bool positive = (draw & 1ULL) != 0;
        Vec z = set.tangent_basis(k);
        if (!positive)
            for (double& c : z) c = -c;
        dirs[i] = std::move(z);

        const double lam = dl / cfg_.safety_radius(i);
        const Vec& p = cfg_.base_point(i);
        Vec q(x[i].size());
        for (std::size_t j = 0; j < q.size(); ++j)
            q[j] = (1.0 - lam) * x[i][j] +
                   lam * (p[j] + cfg_.safety_radius(i) * dirs[i][j]);
        out.realized[i] = std::move(q);
    }

    for (int i = 0; i < players; ++i) {
        out.payoffs[i] = seq_.payoff(n, i, out.realized);
        const double scale =
            static_cast<double>(seq_.action_set(i).affine_dim()) / dl;
        Vec v(dirs[i].size());
        for (std::size_t j = 0; j < v.size(); ++j)
            v[j] = scale * out.payoffs[i] * dirs[i][j];
        out.vhat[i] = std::move(v);
    }
    out.vtrue = seq_.gradient(n, x);
    return out;
}

}  // namespace tvg
