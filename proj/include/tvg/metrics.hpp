#ifndef TVG_METRICS_HPP
#define TVG_METRICS_HPP

#include <iosfwd>
#include <string>

#include "tvg/learner.hpp"

namespace tvg {

// Inclusive stage window [start, end], 1-based.
struct Window {
    int start = 1;
    int end = 1;
    static Window full(const RunTrace& t) { return {1, t.horizon}; }
    static Window tail(const RunTrace& t) { return {t.horizon / 2, t.horizon}; }
};

// Linearized regret bound Gap_i = max_{x_i} sum_n <V_{i,n}(X_n), x_i - X_{i,n}>,
// computed exactly via support_max on the summed gradient.
double gap(const RunTrace& t, int i, Window w);

// Best fixed action of player i over the window against the realized play of
// the others (closed form per family; projected gradient ascent otherwise).
Vec best_fixed_action(const RunTrace& t, int i, Window w);

// Static regret: cumulative payoff shortfall against the best fixed action.
// Always <= gap(t, i, w) up to solver tolerance.
double static_regret(const RunTrace& t, int i, Window w);

// Best response to the others' stage-n play (closed form per family).
Vec best_response(const GameSequence& seq, int n, int i, const Profile& x);

// Dynamic regret: shortfall against the per-stage best responses.
double dynamic_regret(const RunTrace& t, int i, Window w);

// Cumulative dynamic-regret series over stages 1..horizon (single pass).
Vec dynamic_regret_series(const RunTrace& t, int i);

// Equilibrium tracking error sum_n ||X_n - x*_n||^2 with x*_n from the
// sequence's closed-form oracle; use_realized switches to the bandit's
// realized actions.
double tracking_error(const RunTrace& t, Window w, bool use_realized = false);

// Cumulative series of the above over stages 1..horizon.
Vec tracking_error_series(const RunTrace& t, bool use_realized = false);

// V(T) = sum_{n=1}^{T} ||x*_{n+1} - x*_n||.
double equilibrium_variation(const GameSequence& seq, int horizon);

// Ordinary least squares of log y on log n over a window.
struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};
RateFit fit_rate(const Vec& series, Window w);

// n -> D(x*, X_n) against the (unique) equilibrium of the limit game.
Vec bregman_to_ne(const RunTrace& t, const Regularizer& reg);

// Step-weighted running averages xbar_n = sum_k gamma_k X_k / sum_k gamma_k.
std::vector<Profile> ergodic_average(const RunTrace& t);
Profile ergodic_average_at(const RunTrace& t, int n);

// Versioned per-stage CSV dump (actions, schedules, diagnostics, and the
// tracking/Bregman columns when the sequence supports them).
void write_trace_csv(std::ostream& os, const RunTrace& t, const Regularizer& reg);

}  // namespace tvg

#endif
