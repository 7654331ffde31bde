#ifndef TVG_GAMES_HPP
#define TVG_GAMES_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tvg/geometry.hpp"
#include "tvg/vec.hpp"

namespace tvg {

enum class Monotonicity { monotone, strict, strong };

// One stage game: payoffs u_i, individual gradients V_i, and the regularity
// metadata (gradient bound B, Lipschitz constant L, strong modulus mu) the
// learning analysis relies on.  Immutable and safe to share across threads.
class StageGame {
public:
    virtual ~StageGame() = default;

    virtual int players() const = 0;
    virtual const ActionSet& action_set(int i) const = 0;

    virtual double payoff(int i, const Profile& x) const = 0;
    virtual Vec gradient_i(int i, const Profile& x) const = 0;

    Profile gradient(const Profile& x) const {
        Profile g(players());
        for (int i = 0; i < players(); ++i) g[i] = gradient_i(i, x);
        return g;
    }

    virtual Monotonicity monotonicity() const = 0;
    virtual double grad_bound() const = 0;      // B: sup ||V(x)||_*
    virtual double grad_lipschitz() const = 0;  // L: ||V(x')-V(x)||_* <= L||x'-x||
    virtual double strong_modulus() const { return 0.0; }

    // Exact Nash equilibrium for families that have one.
    virtual std::optional<Profile> closed_form_nash() const { return std::nullopt; }

    double diameter() const {
        double s = 0.0;
        for (int i = 0; i < players(); ++i) {
            const double d = action_set(i).diameter();
            s += d * d;
        }
        return std::sqrt(s);
    }
};

// Two-player zero-sum game on simplices: u_1 = -x1' A x2 = -u_2.
class BilinearZeroSum final : public StageGame {
public:
    explicit BilinearZeroSum(std::vector<Vec> a_rows);

    int players() const override { return 2; }
    const ActionSet& action_set(int i) const override { return i == 0 ? set1_ : set2_; }
    double payoff(int i, const Profile& x) const override;
    Vec gradient_i(int i, const Profile& x) const override;
    Monotonicity monotonicity() const override { return Monotonicity::monotone; }
    double grad_bound() const override { return bound_; }
    double grad_lipschitz() const override { return lips_; }

    // f(x1, x2) = x1' A x2, the convex-concave saddle payoff
    double saddle_value(const Vec& x1, const Vec& x2) const;
    const std::vector<Vec>& matrix() const { return a_; }

private:
    std::vector<Vec> a_;
    ActionSet set1_, set2_;
    double bound_, lips_;
};

// Proportional-allocation (Kelly) auction: u_i = g_i q x_i / (c + sum_j x_j) - x_i
// on boxes [0, b_i].  Requires c > 0 so gradients stay bounded at zero bids.
class KellyAuction final : public StageGame {
public:
    KellyAuction(Vec gains, double capacity, double entry_barrier, Vec budgets);

    int players() const override { return static_cast<int>(gains_.size()); }
    const ActionSet& action_set(int i) const override { return sets_[i]; }
    double payoff(int i, const Profile& x) const override;
    Vec gradient_i(int i, const Profile& x) const override;
    Monotonicity monotonicity() const override { return Monotonicity::monotone; }
    double grad_bound() const override { return bound_; }
    double grad_lipschitz() const override { return lips_; }
    std::optional<Profile> closed_form_nash() const override;

private:
    Vec gains_, budgets_;
    double capacity_, barrier_;
    std::vector<ActionSet> sets_;
    double bound_, lips_;
};

// Strongly monotone test family with analytic equilibria:
//   u_i(x) = -(mu/2)||x_i - theta_i||^2 - beta x_i' sum_{j != i} x_j
// on boxes, with |beta| (N-1) < mu.  The NE solves the linear system
// (mu I + beta (1-I)) x* = mu theta coordinate-wise.
class QuadraticNetwork final : public StageGame {
public:
    QuadraticNetwork(double mu, double beta, std::vector<Vec> theta,
                     std::vector<ActionSet> boxes);

    int players() const override { return static_cast<int>(theta_.size()); }
    const ActionSet& action_set(int i) const override { return sets_[i]; }
    double payoff(int i, const Profile& x) const override;
    Vec gradient_i(int i, const Profile& x) const override;
    Monotonicity monotonicity() const override { return Monotonicity::strong; }
    double grad_bound() const override { return bound_; }
    double grad_lipschitz() const override { return lips_; }
    double strong_modulus() const override;
    std::optional<Profile> closed_form_nash() const override;

    double mu() const { return mu_; }
    double beta() const { return beta_; }
    const std::vector<Vec>& theta() const { return theta_; }

    // solve (mu I + beta (1 - I)) x = mu t, per coordinate
    Profile solve_ne(const std::vector<Vec>& t) const;

private:
    double mu_, beta_;
    std::vector<Vec> theta_;
    std::vector<ActionSet> sets_;
    double bound_, lips_;
};

// Single player, linear payoff u(x) = <c, x> on the simplex; the online
// linear-optimization testbed for the static-regret experiments.
class LinearSimplex final : public StageGame {
public:
    explicit LinearSimplex(Vec c);

    int players() const override { return 1; }
    const ActionSet& action_set(int) const override { return set_; }
    double payoff(int, const Profile& x) const override { return dot(c_, x[0]); }
    Vec gradient_i(int, const Profile&) const override { return c_; }
    Monotonicity monotonicity() const override { return Monotonicity::monotone; }
    double grad_bound() const override { return norm2(c_); }
    double grad_lipschitz() const override { return 0.0; }

    const Vec& coefficients() const { return c_; }

private:
    Vec c_;
    ActionSet set_;
};

enum class DriftKind { static_seq, stabilizing, drifting };

// Time-varying sequence of stage games G_n built around a base family.
//
//   static      G_n = G for all n
//   stabilizing V_n(x) = V(x) + beta0 n^{-v} P(x) with a fixed unit-norm
//               smooth field P (sin profile), so the difference bound
//               beta_n is the configured decay exactly
//   drifting    QuadraticNetwork whose theta(n) moves on a circle with
//               phase wrap_speed * n^v, giving equilibrium variation
//               V(T) = Theta(T^v)
class GameSequence {
public:
    static GameSequence static_sequence(std::shared_ptr<const StageGame> game);
    static GameSequence stabilizing(std::shared_ptr<const StageGame> game,
                                    double beta0, double decay_v);
    static GameSequence drifting(std::shared_ptr<const QuadraticNetwork> game,
                                 double drift_v, double radius,
                                 double wrap_speed);

    DriftKind kind() const { return kind_; }
    const StageGame& limit_game() const { return *base_; }
    std::shared_ptr<const StageGame> limit_game_ptr() const { return base_; }
    int players() const { return base_->players(); }
    const ActionSet& action_set(int i) const { return base_->action_set(i); }

    // Stage evaluators; n >= 1.
    double payoff(int n, int i, const Profile& x) const;
    Vec gradient_i(int n, int i, const Profile& x) const;
    Profile gradient(int n, const Profile& x) const;

    // Materialized stage game (tests and oracles that need a StageGame).
    std::shared_ptr<const StageGame> stage(int n) const;

    // Stabilization bound beta_n = sum_i max_x ||V_{i,n}(x) - V_i(x)||_*.
    double beta_n(int n) const;

    // Per-stage Nash equilibrium (closed form; strongly monotone families).
    std::optional<Profile> nash(int n) const;

    double drift_exponent() const { return v_; }

    // theta profile of stage n for the drifting kind
    std::vector<Vec> theta_at(int n) const;

private:
    GameSequence(DriftKind kind, std::shared_ptr<const StageGame> base)
        : kind_(kind), base_(std::move(base)) {}

    Vec perturbation_i(int i, const Profile& x) const;  // P_i(x), sin profile

    DriftKind kind_;
    std::shared_ptr<const StageGame> base_;
    double beta0_ = 0.0;
    double v_ = 0.0;          // decay / variation exponent
    double radius_ = 0.0;     // drifting circle radius
    double wrap_ = 0.0;       // drifting phase scale: phi(n) = wrap * n^v
    int total_dim_ = 0;
    std::vector<int> offsets_;
};

}  // namespace tvg

#endif
