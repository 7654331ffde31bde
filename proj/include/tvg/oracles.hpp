#ifndef TVG_ORACLES_HPP
#define TVG_ORACLES_HPP

#include <cstdint>
#include <vector>

#include "tvg/games.hpp"
#include "tvg/rng.hpp"

namespace tvg {

// First-order feedback v = V_n(x) + bias + noise.  The bookkeeping fields
// are diagnostics only; the learner consumes v alone.
struct FeedbackSignal {
    Profile vhat;
    Profile vtrue;
    double bias_norm = 0.0;
    double noise_norm = 0.0;
};

// Bias/noise schedule of the stochastic first-order oracle:
//   bias_n  = b0 n^{-lb} * uhat  (fixed unit dual direction, drawn per run)
//   noise_n = sigma0 n^{s} * z / sqrt(D), z iid standard normal,
// so E||noise_n||^2 = sigma_n^2 exactly.  b0 = 0 gives an unbiased oracle;
// b0 = sigma0 = 0 gives a perfect one.
class NoiseSchedule {
public:
    NoiseSchedule(double b0, double lb, double sigma0, double s)
        : b0_(b0), lb_(lb), sigma0_(sigma0), s_(s) {}

    double bias_magnitude(int n) const;
    double sigma(int n) const;
    bool unbiased() const { return b0_ == 0.0; }
    bool perfect() const { return b0_ == 0.0 && sigma0_ == 0.0; }

    double b0() const { return b0_; }
    double lb() const { return lb_; }
    double sigma0() const { return sigma0_; }
    double s() const { return s_; }

private:
    double b0_, lb_, sigma0_, s_;
};

// Per-run oracle state: the fixed bias direction and one RNG stream per
// player.  A run owns its streams exclusively.
class SfoOracle {
public:
    SfoOracle(const GameSequence& seq, NoiseSchedule sched, std::uint64_t seed);

    FeedbackSignal feedback(int n, const Profile& x);

    const NoiseSchedule& schedule() const { return sched_; }

private:
    const GameSequence& seq_;
    NoiseSchedule sched_;
    Profile bias_dir_;  // unit dual norm
    std::vector<RngStream> streams_;
};

// Payoff-based (SPSA) estimator configuration.  delta_n = delta0 n^{-q};
// the base point p_i is the barycenter of X_i and r_i its analytic inradius,
// so the query point always stays feasible as long as delta_n < r_i.
class SpsaConfig {
public:
    SpsaConfig(const std::vector<ActionSet>& sets, double delta0, double q);

    double delta(int n) const;
    double safety_radius(int i) const { return radius_[i]; }
    const Vec& base_point(int i) const { return base_[i]; }

    // Validates delta_n / r_i < 1 for all stages n in [1, horizon].
    void validate(int horizon) const;

    double delta0() const { return delta0_; }
    double q() const { return q_; }

private:
    double delta0_, q_;
    std::vector<Vec> base_;
    std::vector<double> radius_;
};

struct SpsaOutcome {
    Profile realized;       // queried action profile
    Vec payoffs;            // realized payoff per player
    Profile vhat;           // one-point gradient estimate
    Profile vtrue;          // V_n at the candidate profile (diagnostics only)
};

// One stage of the payoff-based oracle: draw a signed direction per player
// (basis of the affine hull for simplices), play the homothetically shifted
// query point, and form v_i = (d_i / delta_n) u_i Z_i.
class SpsaOracle {
public:
    SpsaOracle(const GameSequence& seq, SpsaConfig cfg, std::uint64_t seed);

    SpsaOutcome feedback(int n, const Profile& x);

    const SpsaConfig& config() const { return cfg_; }

private:
    const GameSequence& seq_;
    SpsaConfig cfg_;
    std::vector<RngStream> streams_;
};

}  // namespace tvg

#endif
