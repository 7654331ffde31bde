#ifndef TVG_GEOMETRY_HPP
#define TVG_GEOMETRY_HPP

#include <utility>

#include "tvg/vec.hpp"

namespace tvg {

enum class SetKind { simplex, box, ball };

// Compact convex action set: probability simplex, axis-aligned box, or
// Euclidean ball.  Immutable after construction.
class ActionSet {
public:
    static ActionSet simplex(int dim);
    static ActionSet box(Vec lo, Vec hi);
    static ActionSet ball(Vec center, double radius);

    SetKind kind() const { return kind_; }
    int dim() const { return dim_; }

    bool contains(const Vec& x, double tol = 1e-12) const;
    double diameter() const;

    // Euclidean closest-point projection.  Simplex uses the exact sort-based
    // algorithm, box clamps coordinates, ball rescales radially.
    Vec project(const Vec& x) const;

    // argmax_{x in set} <c, x> together with the maximum.  Ties broken
    // toward the lowest index so traces are reproducible.
    std::pair<Vec, double> support_max(const Vec& c) const;

    // Base point for interior sampling (barycenter / midpoint / center).
    Vec barycenter() const;

    // Largest r such that the ball of radius r around the barycenter stays
    // inside the set; measured inside the affine hull for the simplex.
    double inradius() const;

    // Dimension of the affine hull (dim-1 for the simplex).
    int affine_dim() const;

    // k-th unit tangent direction, 0 <= k < affine_dim().  Coordinate
    // directions for box/ball; an orthonormal basis of the zero-sum
    // hyperplane for the simplex.
    Vec tangent_basis(int k) const;

    const Vec& lo() const { return lo_; }
    const Vec& hi() const { return hi_; }
    const Vec& center() const { return center_; }
    double radius() const { return radius_; }

private:
    ActionSet(SetKind kind, int dim) : kind_(kind), dim_(dim) {}

    SetKind kind_;
    int dim_;
    Vec lo_, hi_;     // box
    Vec center_;      // ball
    double radius_ = 0.0;
};

enum class RegKind { euclidean, entropic };

// Distance-generating function with its Bregman divergence and prox-mapping.
//   euclidean: h(x) = ||x||^2 / 2 on any set kind
//   entropic : h(x) = sum_j x_j log x_j on the simplex
// Both are 1-strongly convex w.r.t. the l2 norm on their sets.
class Regularizer {
public:
    explicit Regularizer(RegKind kind) : kind_(kind) {}

    RegKind kind() const { return kind_; }

    // Strong-convexity modulus K.
    double modulus() const { return 1.0; }

    // Depth H = max h - min h over the set.
    double depth(const ActionSet& set) const;

    double value(const Vec& x) const;
    Vec grad(const Vec& x) const;

    bool in_prox_domain(const ActionSet& set, const Vec& x,
                        double tol = 1e-12) const;

    // D(p, x) = h(p) - h(x) - <grad h(x), p - x>; throws std::domain_error
    // if x is outside the prox-domain.
    double bregman(const ActionSet& set, const Vec& p, const Vec& x) const;

    // argmin_{x' in set} { <y, x - x'> + D(x', x) }.  Euclidean kind is the
    // projection of x + y; entropic kind is the exponentiated update,
    // computed in log space with a max shift.
    Vec prox(const ActionSet& set, const Vec& x, const Vec& y) const;

    // argmin_{x in set} h(x); the initial point of the learning dynamics.
    Vec dgf_min(const ActionSet& set) const;

private:
    RegKind kind_;
};

// Residual of the three-point identity
//   |D(a,x) - D(a,x') - D(x',x) - <grad h(x) - grad h(x'), x' - a>|.
double three_point_check(const Regularizer& reg, const ActionSet& set,
                         const Vec& a, const Vec& x, const Vec& xp);

}  // namespace tvg

#endif
