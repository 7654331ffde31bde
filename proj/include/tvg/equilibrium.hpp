#ifndef TVG_EQUILIBRIUM_HPP
#define TVG_EQUILIBRIUM_HPP

#include <cstdint>

#include "tvg/games.hpp"

namespace tvg {

// Equilibrium candidate together with its variational residuals.
//   stampacchia_residual = max_{x in X} <V(x*), x - x*>  (exact, via support_max)
//   minty_residual       = max over sampled x of <V(x), x - x*>
struct EquilibriumCertificate {
    Profile point;
    double stampacchia_residual = 0.0;
    double minty_residual = 0.0;
    int iterations = 0;
};

// Exact NE for families with one (QuadraticNetwork interior, Kelly N=1).
// Throws std::invalid_argument for families without a closed form.
Profile nash_closed_form(const StageGame& g);

// max_{x in X} <V(p), x - p>, computed per player with support_max on the
// linearized objective; nonnegative, and ~0 exactly at a Nash equilibrium.
double stampacchia_residual(const StageGame& g, const Profile& p);

// max over nsamples random profiles x of <V(x), x - p>; <= 0 (to tolerance)
// at equilibria of monotone games.
double minty_residual(const StageGame& g, const Profile& p, int nsamples,
                      std::uint64_t seed);

// Reference oracle for monotone games: extragradient iteration with Euclidean
// projections and step 1/(2 L).  For strictly/strongly monotone games the
// last iterate is returned; for plain monotone games (bilinear) the ergodic
// average is returned, since the last iterate may cycle.
// Throws std::runtime_error carrying the last residual if max_iters is hit.
EquilibriumCertificate nash_extragradient(const StageGame& g, double tol,
                                          int max_iters);

// Duality gap of a bilinear zero-sum game on simplices:
//   max_{x2} f(x1, x2) - min_{x1} f(x1, x2) = max(A' x1) - min(A x2),
// nonnegative, zero exactly at saddle points.
double saddle_gap(const BilinearZeroSum& g, const Profile& x);

}  // namespace tvg

#endif
