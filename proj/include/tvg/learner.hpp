#ifndef TVG_LEARNER_HPP
#define TVG_LEARNER_HPP

#include <cstdint>
#include <memory>

#include "tvg/games.hpp"
#include "tvg/geometry.hpp"
#include "tvg/oracles.hpp"

namespace tvg {

// Step-size sequence gamma_n.
//   constant(g)       gamma_n = g
//   power(g0, p)      gamma_n = g0 n^{-p}, p in (0, 1]
//   inverse_log(g0)   gamma_n = g0 / log(n + e), the near-constant policy
class StepSchedule {
public:
    enum class Kind { constant, power, inverse_log };

    static StepSchedule constant(double g);
    static StepSchedule power(double g0, double p);
    static StepSchedule inverse_log(double g0);

    double gamma(int n) const;
    Kind kind() const { return kind_; }
    double gamma0() const { return gamma0_; }
    double exponent() const { return p_; }

private:
    StepSchedule(Kind k, double g0, double p) : kind_(k), gamma0_(g0), p_(p) {}
    Kind kind_;
    double gamma0_, p_;
};

// Per-run time series.  Row n (1-based) holds the candidate profile X_n, the
// realized profile for bandit runs, the step/radius used at stage n, and the
// oracle diagnostics.  V_n(X_n) is cached for the gap/regret metrics.
struct RunTrace {
    std::shared_ptr<const GameSequence> seq;
    int players = 0;
    std::vector<int> dims;
    int total_dim = 0;
    int horizon = 0;
    bool bandit = false;
    bool has_diagnostics = true;

    std::vector<double> actions;    // horizon * total_dim
    std::vector<double> realized;   // bandit only
    std::vector<double> grads;      // V_n(X_n)
    Vec gamma;                      // gamma_n
    Vec delta;                      // delta_n (bandit only)
    Vec bias_norm, noise_norm, vhat_norm;

    Profile profile_at(int n) const { return unpack(actions, n); }
    Profile realized_at(int n) const { return unpack(realized, n); }
    Profile grad_at(int n) const { return unpack(grads, n); }

private:
    Profile unpack(const std::vector<double>& flat, int n) const;
};

// One prox-learning update: X_{i,n+1} = prox_i(X_{i,n}, gamma v_i) for every
// player; the collective map is the product of the per-player prox maps.
Profile prox_learn_step(const Regularizer& reg, const GameSequence& seq,
                        const Profile& x, const Profile& vhat, double gamma);

// Gradient-feedback learning: T stages of the prox-learning loop driven by
// the stochastic first-order oracle.  Deterministic given (config, seed).
RunTrace run_gradient(std::shared_ptr<const GameSequence> seq,
                      const Regularizer& reg, const StepSchedule& sched,
                      const NoiseSchedule& noise, int horizon,
                      std::uint64_t seed, bool with_diagnostics = true);

// Payoff-based learning: candidate actions are updated from the one-point
// SPSA estimate while the realized play is the perturbed query point.
RunTrace run_bandit(std::shared_ptr<const GameSequence> seq,
                    const Regularizer& reg, const StepSchedule& sched,
                    const SpsaConfig& spsa, int horizon, std::uint64_t seed,
                    bool with_diagnostics = true);

}  // namespace tvg

#endif
