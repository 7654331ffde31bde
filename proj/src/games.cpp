#include "tvg/games.hpp"

#include <cmath>
#include <stdexcept>

namespace tvg {

// ---------------------------------------------------------------- bilinear

BilinearZeroSum::BilinearZeroSum(std::vector<Vec> a_rows)
    : a_(std::move(a_rows)),
      set1_(ActionSet::simplex(static_cast<int>(a_.size()))),
      set2_(ActionSet::simplex(a_.empty() ? 1 : static_cast<int>(a_[0].size()))) {
    if (a_.empty() || a_[0].empty())
        throw std::invalid_argument("BilinearZeroSum: empty matrix");
    for (const Vec& row : a_)
        if (row.size() != a_[0].size())
            throw std::invalid_argument("BilinearZeroSum: ragged matrix");
    // ||A x2|| <= max column norm, ||A' x1|| <= max row norm on simplices
    const int d1 = static_cast<int>(a_.size());
    const int d2 = static_cast<int>(a_[0].size());
    double maxrow = 0.0, maxcol = 0.0, frob = 0.0;
    for (int i = 0; i < d1; ++i) maxrow = std::max(maxrow, norm2(a_[i]));
    for (int j = 0; j < d2; ++j) {
        double c = 0.0;
        for (int i = 0; i < d1; ++i) c += a_[i][j] * a_[i][j];
        maxcol = std::max(maxcol, std::sqrt(c));
        frob += c;
    }
    bound_ = std::sqrt(maxcol * maxcol + maxrow * maxrow);
    lips_ = std::sqrt(frob);
}

double BilinearZeroSum::saddle_value(const Vec& x1, const Vec& x2) const {
    double f = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i) f += x1[i] * dot(a_[i], x2);
    return f;
}

double BilinearZeroSum::payoff(int i, const Profile& x) const {
    const double f = saddle_value(x[0], x[1]);
    return i == 0 ? -f : f;
}

Vec BilinearZeroSum::gradient_i(int i, const Profile& x) const {
    if (i == 0) {
        // V_1 = -A x2
        Vec g(a_.size());
        for (std::size_t r = 0; r < a_.size(); ++r) g[r] = -dot(a_[r], x[1]);
        return g;
    }
    // V_2 = A' x1
    Vec g(a_[0].size(), 0.0);
    for (std::size_t r = 0; r < a_.size(); ++r)
        for (std::size_t c = 0; c < g.size(); ++c) g[c] += a_[r][c] * x[0][r];
    return g;
}

// ------------------------------------------------------------------- kelly

KellyAuction::KellyAuction(Vec gains, double capacity, double entry_barrier,
                           Vec budgets)
    : gains_(std::move(gains)),
      budgets_(std::move(budgets)),
      capacity_(capacity),
      barrier_(entry_barrier) {
    if (gains_.empty() || gains_.size() != budgets_.size())
        throw std::invalid_argument("KellyAuction: gains/budgets size mismatch");
    if (!(barrier_ > 0.0))
        throw std::invalid_argument(
            "KellyAuction: entry barrier c must be > 0 (gradient bound fails at 0)");
    if (!(capacity_ > 0.0))
        throw std::invalid_argument("KellyAuction: capacity must be > 0");
    const int n = static_cast<int>(gains_.size());
    sets_.reserve(n);
    double b2 = 0.0, l2 = 0.0;
    for (int i = 0; i < n; ++i) {
        if (!(budgets_[i] > 0.0))
            throw std::invalid_argument("KellyAuction: budgets must be > 0");
        sets_.push_back(ActionSet::box(Vec{0.0}, Vec{budgets_[i]}));
        const double bi = gains_[i] * capacity_ / barrier_ + 1.0;
        b2 += bi * bi;
        const double li =
            3.0 * gains_[i] * capacity_ / (barrier_ * barrier_) * std::sqrt(double(n));
        l2 += li * li;
    }
    bound_ = std::sqrt(b2);
    lips_ = std::sqrt(l2);
}

double KellyAuction::payoff(int i, const Profile& x) const {
    double s = 0.0;
    for (const Vec& xi : x) s += xi[0];
    return gains_[i] * capacity_ * x[i][0] / (barrier_ + s) - x[i][0];
}

Vec KellyAuction::gradient_i(int i, const Profile& x) const {
    double s = 0.0;
    for (const Vec& xi : x) s += xi[0];
    const double cs = barrier_ + s;
    return Vec{gains_[i] * capacity_ * (cs - x[i][0]) / (cs * cs) - 1.0};
}

std::optional<Profile> KellyAuction::closed_form_nash() const {
    if (players() != 1) return std::nullopt;
    // stationarity: g q c / (c + x)^2 = 1
    const double root = std::sqrt(gains_[0] * capacity_ * barrier_) - barrier_;
    const double x = std::min(budgets_[0], std::max(0.0, root));
    return Profile{Vec{x}};
}

// --------------------------------------------------------------- quadratic

QuadraticNetwork::QuadraticNetwork(double mu, double beta, std::vector<Vec> theta,
                                   std::vector<ActionSet> boxes)
    : mu_(mu), beta_(beta), theta_(std::move(theta)), sets_(std::move(boxes)) {
    const int n = static_cast<int>(theta_.size());
    if (n == 0 || sets_.size() != theta_.size())
        throw std::invalid_argument("QuadraticNetwork: theta/boxes size mismatch");
    for (int i = 0; i < n; ++i) {
        if (sets_[i].kind() != SetKind::box)
            throw std::invalid_argument("QuadraticNetwork: action sets must be boxes");
        if (static_cast<std::size_t>(sets_[i].dim()) != theta_[i].size() ||
            theta_[i].size() != theta_[0].size())
            throw std::invalid_argument("QuadraticNetwork: inconsistent dimensions");
    }
    if (!(mu_ > 0.0) || !(std::abs(beta_) * (n - 1) < mu_))
        throw std::invalid_argument("QuadraticNetwork: requires |beta| (N-1) < mu");
    // conservative bounds over the boxes
    double b2 = 0.0;
    double maxnorm_sum = 0.0;
    std::vector<double> corner(n);
    for (int i = 0; i < n; ++i) {
        double c2 = 0.0;
        for (int j = 0; j < sets_[i].dim(); ++j) {
            const double m = std::max(std::abs(sets_[i].lo()[j]),
                                      std::abs(sets_[i].hi()[j]));
            c2 += m * m;
        }
        corner[i] = std::sqrt(c2);
        maxnorm_sum += corner[i];
    }
    for (int i = 0; i < n; ++i) {
        double dist2max = 0.0;
        for (int j = 0; j < sets_[i].dim(); ++j) {
            const double d = std::max(std::abs(sets_[i].lo()[j] - theta_[i][j]),
                                      std::abs(sets_[i].hi()[j] - theta_[i][j]));
            dist2max += d * d;
        }
        const double bi =
            mu_ * std::sqrt(dist2max) + std::abs(beta_) * (maxnorm_sum - corner[i]);
        b2 += bi * bi;
    }
    bound_ = std::sqrt(b2);
    lips_ = mu_ + std::abs(beta_) * (n - 1);
}

double QuadraticNetwork::strong_modulus() const {
    return mu_ - std::abs(beta_) * (players() - 1);
}

double QuadraticNetwork::payoff(int i, const Profile& x) const {
    double q = 0.0, cross = 0.0;
    for (std::size_t j = 0; j < x[i].size(); ++j) {
        const double d = x[i][j] - theta_[i][j];
        q += d * d;
        double others = 0.0;
        for (int k = 0; k < players(); ++k)
            if (k != i) others += x[k][j];
        cross += x[i][j] * others;
    }
    return -0.5 * mu_ * q - beta_ * cross;
}

Vec QuadraticNetwork::gradient_i(int i, const Profile& x) const {
    Vec g(x[i].size());
    for (std::size_t j = 0; j < x[i].size(); ++j) {
        double others = 0.0;
        for (int k = 0; k < players(); ++k)
            if (k != i) others += x[k][j];
        g[j] = -mu_ * (x[i][j] - theta_[i][j]) - beta_ * others;
    }
    return g;
}

Profile QuadraticNetwork::solve_ne(const std::vector<Vec>& t) const {
    // (mu I + beta (1 - I)) x = mu t, i.e. ((mu-beta) I + beta 1) x = mu t,
    // inverted per coordinate via Sherman-Morrison.
    const int n = players();
    const int d = static_cast<int>(t[0].size());
    const double a = mu_ - beta_;
    const double denom = a + beta_ * n;
    Profile x(n, Vec(d));
    for (int j = 0; j < d; ++j) {
        double colsum = 0.0;
        for (int i = 0; i < n; ++i) colsum += mu_ * t[i][j];
        for (int i = 0; i < n; ++i)
            x[i][j] = (mu_ * t[i][j] - beta_ * colsum / denom) / a;
    }
    return x;
}

std::optional<Profile> QuadraticNetwork::closed_form_nash() const {
    Profile x = solve_ne(theta_);
    for (int i = 0; i < players(); ++i)
        if (!sets_[i].contains(x[i], 1e-9)) return std::nullopt;
    return x;
}

// ------------------------------------------------------------------ linear

LinearSimplex::LinearSimplex(Vec c)
    : c_(std::move(c)), set_(ActionSet::simplex(static_cast<int>(c_.size()))) {
    if (c_.empty()) throw std::invalid_argument("LinearSimplex: empty c");
}

// ---------------------------------------------------------------- sequence

namespace {

// Stage game with gradient field V(x) + eps P(x), where P is the fixed sin
// field with amplitude amp per coordinate, and the matching payoff
// perturbation; used to materialize stabilizing stages.
class PerturbedGame final : public StageGame {
public:
    PerturbedGame(std::shared_ptr<const StageGame> base, double eps, double amp,
                  std::vector<int> offsets)
        : base_(std::move(base)), eps_(eps), amp_(amp), offsets_(std::move(offsets)) {}

    int players() const override { return base_->players(); }
    const ActionSet& action_set(int i) const override { return base_->action_set(i); }
    double payoff(int i, const Profile& x) const override {
        double pot = 0.0;
        for (std::size_t j = 0; j < x[i].size(); ++j)
            pot -= amp_ * std::cos(x[i][j] + 2.0 * (offsets_[i] + static_cast<int>(j)));
        return base_->payoff(i, x) + eps_ * pot;
    }
    Vec gradient_i(int i, const Profile& x) const override {
        Vec g = base_->gradient_i(i, x);
        for (std::size_t j = 0; j < g.size(); ++j)
            g[j] += eps_ * amp_ *
                    std::sin(x[i][j] + 2.0 * (offsets_[i] + static_cast<int>(j)));
        return g;
    }
    Monotonicity monotonicity() const override { return base_->monotonicity(); }
    double grad_bound() const override { return base_->grad_bound() + eps_; }
    double grad_lipschitz() const override {
        return base_->grad_lipschitz() + eps_ * amp_;
    }
    double strong_modulus() const override {
        return std::max(0.0, base_->strong_modulus() - eps_ * amp_);
    }

private:
    std::shared_ptr<const StageGame> base_;
    double eps_, amp_;
    std::vector<int> offsets_;
};

}  // namespace

GameSequence GameSequence::static_sequence(std::shared_ptr<const StageGame> game) {
    GameSequence s(DriftKind::static_seq, std::move(game));
    return s;
}

GameSequence GameSequence::stabilizing(std::shared_ptr<const StageGame> game,
                                       double beta0, double decay_v) {
    if (!(beta0 >= 0.0) || !(decay_v > 0.0))
        throw std::invalid_argument("stabilizing: beta0 >= 0 and v > 0 required");
    GameSequence s(DriftKind::stabilizing, std::move(game));
    s.beta0_ = beta0;
    s.v_ = decay_v;
    s.offsets_.assign(1, 0);
    for (int i = 0; i < s.base_->players(); ++i)
        s.offsets_.push_back(s.offsets_.back() + s.base_->action_set(i).dim());
    s.total_dim_ = s.offsets_.back();
    return s;
}

GameSequence GameSequence::drifting(std::shared_ptr<const QuadraticNetwork> game,
                                    double drift_v, double radius,
                                    double wrap_speed) {
    if (!(drift_v > 0.0 && drift_v < 1.0))
        throw std::invalid_argument("drifting: v must lie in (0,1)");
    GameSequence s(DriftKind::drifting, game);
    s.v_ = drift_v;
    s.radius_ = radius;
    s.wrap_ = wrap_speed;
    s.offsets_.assign(1, 0);
    for (int i = 0; i < s.base_->players(); ++i)
        s.offsets_.push_back(s.offsets_.back() + s.base_->action_set(i).dim());
    s.total_dim_ = s.offsets_.back();
    if (s.total_dim_ < 2)
        throw std::invalid_argument("drifting: needs total dimension >= 2");
    return s;
}

Vec GameSequence::perturbation_i(int i, const Profile& x) const {
    // P_i(x_i)_j = sin(x_ij + 2 * coord) / sum_k sqrt(d_k): the per-player sup
    // norms then sum to at most 1, so the stage difference bound is exactly
    // the configured decay.
    double amp = 0.0;
    for (int k = 0; k < players(); ++k)
        amp += std::sqrt(static_cast<double>(base_->action_set(k).dim()));
    amp = 1.0 / amp;
    Vec p(x[i].size());
    for (std::size_t j = 0; j < x[i].size(); ++j)
        p[j] = amp * std::sin(x[i][j] + 2.0 * (offsets_[i] + static_cast<int>(j)));
    return p;
}

std::vector<Vec> GameSequence::theta_at(int n) const {
    const auto* qn = static_cast<const QuadraticNetwork*>(base_.get());
    std::vector<Vec> t = qn->theta();
    const double phi = wrap_ * std::pow(static_cast<double>(n), v_);
    // circle in the first two flattened coordinates
    double* c0 = nullptr;
    double* c1 = nullptr;
    int seen = 0;
    for (auto& ti : t)
        for (auto& v : ti) {
            if (seen == 0) c0 = &v;
            if (seen == 1) c1 = &v;
            ++seen;
        }
    *c0 += radius_ * std::cos(phi);
    *c1 += radius_ * std::sin(phi);
    return t;
}

double GameSequence::payoff(int n, int i, const Profile& x) const {
    switch (kind_) {
        case DriftKind::static_seq:
            return base_->payoff(i, x);
        case DriftKind::stabilizing: {
            // potential of the sin field: phi_i(x_i) = -sum_j amp cos(x_ij + c_ij)
            double amp = 0.0;
            for (int k = 0; k < players(); ++k)
                amp += std::sqrt(static_cast<double>(base_->action_set(k).dim()));
            amp = 1.0 / amp;
            double pot = 0.0;
            for (std::size_t j = 0; j < x[i].size(); ++j)
                pot -= amp * std::cos(x[i][j] + 2.0 * (offsets_[i] + static_cast<int>(j)));
            return base_->payoff(i, x) + beta_n(n) * pot;
        }
        case DriftKind::drifting: {
            const auto* qn = static_cast<const QuadraticNetwork*>(base_.get());
            const std::vector<Vec> th = theta_at(n);
            double q = 0.0, cross = 0.0;
            for (std::size_t j = 0; j < x[i].size(); ++j) {
                const double d = x[i][j] - th[i][j];
                q += d * d;
                double others = 0.0;
                for (int k = 0; k < players(); ++k)
                    if (k != i) others += x[k][j];
                cross += x[i][j] * others;
            }
            return -0.5 * qn->mu() * q - qn->beta() * cross;
        }
    }
    return 0.0;
}

Vec GameSequence::gradient_i(int n, int i, const Profile& x) const {
    switch (kind_) {
        case DriftKind::static_seq:
            return base_->gradient_i(i, x);
        case DriftKind::stabilizing: {
            Vec g = base_->gradient_i(i, x);
            const Vec p = perturbation_i(i, x);
            const double b = beta_n(n);
            for (std::size_t j = 0; j < g.size(); ++j) g[j] += b * p[j];
            return g;
        }
        case DriftKind::drifting: {
            const auto* qn = static_cast<const QuadraticNetwork*>(base_.get());
            const std::vector<Vec> th = theta_at(n);
            Vec g(x[i].size());
            for (std::size_t j = 0; j < x[i].size(); ++j) {
                double others = 0.0;
                for (int k = 0; k < players(); ++k)
                    if (k != i) others += x[k][j];
                g[j] = -qn->mu() * (x[i][j] - th[i][j]) - qn->beta() * others;
            }
            return g;
        }
    }
    return Vec();
}

Profile GameSequence::gradient(int n, const Profile& x) const {
    Profile g(players());
    for (int i = 0; i < players(); ++i) g[i] = gradient_i(n, i, x);
    return g;
}

std::shared_ptr<const StageGame> GameSequence::stage(int n) const {
    if (n < 1) throw std::invalid_argument("stage: n must be >= 1");
    switch (kind_) {
        case DriftKind::static_seq:
            return base_;
        case DriftKind::stabilizing: {
            double amp = 0.0;
            for (int k = 0; k < players(); ++k)
                amp += std::sqrt(static_cast<double>(base_->action_set(k).dim()));
            amp = 1.0 / amp;
            return std::make_shared<PerturbedGame>(base_, beta_n(n), amp, offsets_);
        }
        case DriftKind::drifting: {
            const auto* qn = static_cast<const QuadraticNetwork*>(base_.get());
            std::vector<ActionSet> boxes;
            for (int i = 0; i < players(); ++i) boxes.push_back(qn->action_set(i));
            return std::make_shared<QuadraticNetwork>(qn->mu(), qn->beta(),
                                                      theta_at(n), std::move(boxes));
        }
    }
    return base_;
}

double GameSequence::beta_n(int n) const {
    if (kind_ != DriftKind::stabilizing) return 0.0;
    return beta0_ * std::pow(static_cast<double>(n), -v_);
}

std::optional<Profile> GameSequence::nash(int n) const {
    switch (kind_) {
        case DriftKind::static_seq:
            return base_->closed_form_nash();
        case DriftKind::stabilizing:
            return std::nullopt;  // stage equilibria of perturbed games are not analytic
        case DriftKind::drifting: {
            const auto* qn = static_cast<const QuadraticNetwork*>(base_.get());
            return qn->solve_ne(theta_at(n));
        }
    }
    return std::nullopt;
}

}  // namespace tvg
