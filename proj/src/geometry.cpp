#include "tvg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tvg {

namespace {
constexpr double kEntropicFloor = 1e-300;
}

ActionSet ActionSet::simplex(int dim) {
    if (dim < 1) throw std::invalid_argument("simplex: dim must be >= 1");
    return ActionSet(SetKind::simplex, dim);
}

ActionSet ActionSet::box(Vec lo, Vec hi) {
    if (lo.empty() || lo.size() != hi.size())
        throw std::invalid_argument("box: lo/hi size mismatch");
    for (std::size_t j = 0; j < lo.size(); ++j)
        if (!(lo[j] < hi[j])) throw std::invalid_argument("box: requires lo < hi");
    ActionSet s(SetKind::box, static_cast<int>(lo.size()));
    s.lo_ = std::move(lo);
    s.hi_ = std::move(hi);
    return s;
}

ActionSet ActionSet::ball(Vec center, double radius) {
    if (center.empty()) throw std::invalid_argument("ball: empty center");
    if (!(radius > 0.0)) throw std::invalid_argument("ball: radius must be > 0");
    ActionSet s(SetKind::ball, static_cast<int>(center.size()));
    s.center_ = std::move(center);
    s.radius_ = radius;
    return s;
}

bool ActionSet::contains(const Vec& x, double tol) const {
    if (static_cast<int>(x.size()) != dim_) return false;
    switch (kind_) {
        case SetKind::simplex: {
            double sum = 0.0;
            for (double v : x) {
                if (v < -tol) return false;
                sum += v;
            }
            return std::abs(sum - 1.0) <= tol * dim_ + tol;
        }
        case SetKind::box:
            for (int j = 0; j < dim_; ++j)
                if (x[j] < lo_[j] - tol || x[j] > hi_[j] + tol) return false;
            return true;
        case SetKind::ball: {
            double d2 = 0.0;
            for (int j = 0; j < dim_; ++j) {
                const double d = x[j] - center_[j];
                d2 += d * d;
            }
            return std::sqrt(d2) <= radius_ + tol;
        }
    }
    return false;
}

double ActionSet::diameter() const {
    switch (kind_) {
        case SetKind::simplex:
            // distance between two vertices, or 0-dim point set
            return dim_ > 1 ? std::sqrt(2.0) : 0.0;
        case SetKind::box: {
            double s = 0.0;
            for (int j = 0; j < dim_; ++j) {
                const double d = hi_[j] - lo_[j];
                s += d * d;
            }
            return std::sqrt(s);
        }
        case SetKind::ball:
            return 2.0 * radius_;
    }
    return 0.0;
}

Vec ActionSet::project(const Vec& x) const {
    switch (kind_) {
        case SetKind::box: {
            Vec p(dim_);
            for (int j = 0; j < dim_; ++j)
                p[j] = std::min(hi_[j], std::max(lo_[j], x[j]));
            return p;
        }
        case SetKind::ball: {
            Vec p(dim_);
            double d2 = 0.0;
            for (int j = 0; j < dim_; ++j) {
                p[j] = x[j] - center_[j];
                d2 += p[j] * p[j];
            }
            const double d = std::sqrt(d2);
            const double scale = d > radius_ ? radius_ / d : 1.0;
            for (int j = 0; j < dim_; ++j) p[j] = center_[j] + scale * p[j];
            return p;
        }
        case SetKind::simplex: {
            // Sort-based projection onto the unit simplex.
            Vec u(x);
            std::sort(u.begin(), u.end(), std::greater<double>());
            double css = 0.0;
            double tau = 0.0;
            for (int j = 0; j < dim_; ++j) {
                css += u[j];
                const double t = (css - 1.0) / (j + 1);
                if (u[j] - t > 0.0) tau = t;
            }
            Vec p(dim_);
            for (int j = 0; j < dim_; ++j) p[j] = std::max(0.0, x[j] - tau);
            return p;
        }
    }
    return x;
}

std::pair<Vec, double> ActionSet::support_max(const Vec& c) const {
    if (!all_finite(c)) throw std::invalid_argument("support_max: non-finite c");
    switch (kind_) {
        case SetKind::simplex: {
            int best = 0;
            for (int j = 1; j < dim_; ++j)
                if (c[j] > c[best]) best = j;
            Vec p(dim_, 0.0);
            p[best] = 1.0;
            return {p, c[best]};
        }
        case SetKind::box: {
            Vec p(dim_);
            double val = 0.0;
            for (int j = 0; j < dim_; ++j) {
                p[j] = c[j] > 0.0 ? hi_[j] : lo_[j];
                val += c[j] * p[j];
            }
            return {p, val};
        }
        case SetKind::ball: {
            const double nc = norm2(c);
            if (nc == 0.0) return {center_, 0.0};
            Vec p(dim_);
            double val = 0.0;
            for (int j = 0; j < dim_; ++j) {
                p[j] = center_[j] + radius_ * c[j] / nc;
                val += c[j] * p[j];
            }
            return {p, val};
        }
    }
    return {Vec(dim_, 0.0), 0.0};
}

Vec ActionSet::barycenter() const {
    switch (kind_) {
        case SetKind::simplex:
            return Vec(dim_, 1.0 / dim_);
        case SetKind::box: {
            Vec p(dim_);
            for (int j = 0; j < dim_; ++j) p[j] = 0.5 * (lo_[j] + hi_[j]);
            return p;
        }
        case SetKind::ball:
            return center_;
    }
    return Vec(dim_, 0.0);
}

double ActionSet::inradius() const {
    switch (kind_) {
        case SetKind::simplex:
            // distance from the barycenter to a face, inside the affine hull
            return dim_ > 1 ? 1.0 / std::sqrt(static_cast<double>(dim_) * (dim_ - 1))
                            : 0.0;
        case SetKind::box: {
            double r = std::numeric_limits<double>::infinity();
            for (int j = 0; j < dim_; ++j) r = std::min(r, 0.5 * (hi_[j] - lo_[j]));
            return r;
        }
        case SetKind::ball:
            return radius_;
    }
    return 0.0;
}

int ActionSet::affine_dim() const {
    return kind_ == SetKind::simplex ? dim_ - 1 : dim_;
}

Vec ActionSet::tangent_basis(int k) const {
    if (k < 0 || k >= affine_dim())
        throw std::invalid_argument("tangent_basis: index out of range");
    if (kind_ != SetKind::simplex) {
        Vec e(dim_, 0.0);
        e[k] = 1.0;
        return e;
    }
    // Helmert basis of the zero-sum hyperplane: orthonormal, sums to zero.
    Vec e(dim_, 0.0);
    const double s = 1.0 / std::sqrt(static_cast<double>(k + 1) * (k + 2));
    for (int j = 0; j <= k; ++j) e[j] = s;
    e[k + 1] = -s * (k + 1);
    return e;
}

double Regularizer::depth(const ActionSet& set) const {
    if (kind_ == RegKind::entropic) {
        if (set.kind() != SetKind::simplex)
            throw std::domain_error("entropic regularizer requires a simplex");
        return std::log(static_cast<double>(set.dim()));
    }
    // h = ||x||^2/2: max over the set minus min over the set.
    double hmax = 0.0;
    double hmin = 0.0;
    switch (set.kind()) {
        case SetKind::simplex:
            hmax = 0.5;                       // at a vertex
            hmin = 0.5 / set.dim();           // at the barycenter
            break;
        case SetKind::box: {
            double mx = 0.0, mn = 0.0;
            for (int j = 0; j < set.dim(); ++j) {
                const double lo = set.lo()[j], hi = set.hi()[j];
                mx += std::max(lo * lo, hi * hi);
                const double c = std::min(hi, std::max(lo, 0.0));
                mn += c * c;
            }
            hmax = 0.5 * mx;
            hmin = 0.5 * mn;
            break;
        }
        case SetKind::ball: {
            const double nc = norm2(set.center());
            const double far = nc + set.radius();
            const double near = std::max(0.0, nc - set.radius());
            hmax = 0.5 * far * far;
            hmin = 0.5 * near * near;
            break;
        }
    }
    return hmax - hmin;
}

double Regularizer::value(const Vec& x) const {
    if (kind_ == RegKind::euclidean) return 0.5 * norm2_sq(x);
    double h = 0.0;
    for (double v : x)
        if (v > 0.0) h += v * std::log(v);
    return h;
}

Vec Regularizer::grad(const Vec& x) const {
    Vec g(x.size());
    if (kind_ == RegKind::euclidean) {
        g = x;
    } else {
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (x[j] < kEntropicFloor)
                throw std::domain_error("entropic grad: zero coordinate");
            g[j] = 1.0 + std::log(x[j]);
        }
    }
    return g;
}

bool Regularizer::in_prox_domain(const ActionSet& set, const Vec& x,
                                 double tol) const {
    if (!set.contains(x, tol)) return false;
    if (kind_ == RegKind::entropic) {
        for (double v : x)
            if (v < kEntropicFloor) return false;
    }
    return true;
}

double Regularizer::bregman(const ActionSet& set, const Vec& p,
                            const Vec& x) const {
    if (!in_prox_domain(set, x))
        throw std::domain_error("bregman: x outside prox-domain");
    if (kind_ == RegKind::euclidean) {
        double s = 0.0;
        for (std::size_t j = 0; j < p.size(); ++j) {
            const double d = p[j] - x[j];
            s += d * d;
        }
        return 0.5 * s;
    }
    // KL divergence with 0 log 0 = 0
    double s = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j] > 0.0) s += p[j] * std::log(p[j] / x[j]);
    }
    return std::max(0.0, s);
}

Vec Regularizer::prox(const ActionSet& set, const Vec& x, const Vec& y) const {
    if (!all_finite(y)) throw std::invalid_argument("prox: non-finite dual step");
    if (kind_ == RegKind::euclidean) {
        Vec z(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) z[j] = x[j] + y[j];
        return set.project(z);
    }
    if (!in_prox_domain(set, x))
        throw std::domain_error("prox: x outside prox-domain");
    // exponentiated update in log space
    Vec l(x.size());
    double lmax = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < x.size(); ++j) {
        l[j] = std::log(x[j]) + y[j];
        lmax = std::max(lmax, l[j]);
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        l[j] = std::exp(l[j] - lmax);
        sum += l[j];
    }
    double renorm = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        l[j] = std::max(kEntropicFloor, l[j] / sum);
        renorm += l[j];
    }
    for (std::size_t j = 0; j < x.size(); ++j) l[j] /= renorm;
    return l;
}

Vec Regularizer::dgf_min(const ActionSet& set) const {
    if (kind_ == RegKind::entropic) {
        if (set.kind() != SetKind::simplex)
            throw std::domain_error("entropic regularizer requires a simplex");
        return set.barycenter();
    }
    return set.project(Vec(set.dim(), 0.0));
}

double three_point_check(const Regularizer& reg, const ActionSet& set,
                         const Vec& a, const Vec& x, const Vec& xp) {
    const double lhs = reg.bregman(set, a, x);
    const double rhs1 = reg.bregman(set, a, xp);
    const double rhs2 = reg.bregman(set, xp, x);
    const Vec gx = reg.grad(x);
    const Vec gxp = reg.grad(xp);
    double cross = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        cross += (gx[j] - gxp[j]) * (xp[j] - a[j]);
    return std::abs(lhs - rhs1 - rhs2 - cross);
}

}  // namespace tvg
