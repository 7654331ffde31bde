#include "tvg/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tvg {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad number for '" + key + "': " + v);
    }
}

long to_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad integer for '" + key + "': " + v);
    }
}

Vec to_vec(const std::string& key, const std::string& v) {
    Vec out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
    if (out.empty()) throw std::invalid_argument("config: empty list for '" + key + "'");
    return out;
}

std::vector<Vec> to_matrix(const std::string& key, const std::string& v) {
    std::vector<Vec> rows;
    std::stringstream ss(v);
    std::string row;
    while (std::getline(ss, row, ';')) rows.push_back(to_vec(key, trim(row)));
    return rows;
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "name",    "game",    "sequence", "learner", "regularizer", "step",
        "T",       "seeds",   "seed_base", "out",    "force",
        "gamma0",  "p",       "b0",       "lb",      "sigma0",      "s",
        "delta0",  "q",       "players",  "dim",     "mu",          "beta",
        "theta",   "box_lo",  "box_hi",   "matrix",  "coeffs",      "gains",
        "budgets", "capacity", "barrier", "v",       "beta0",       "rho",
        "wrap"};
    return keys;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& name) {
    ExperimentConfig cfg;
    cfg.name = name;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!known_keys().count(key))
            throw std::invalid_argument("config: unknown key '" + key + "'");
        if (cfg.raw.count(key))
            throw std::invalid_argument("config: duplicate key '" + key + "'");
        cfg.raw[key] = val;

        if (key == "name") cfg.name = val;
        else if (key == "game") cfg.game = val;
        else if (key == "sequence") cfg.sequence = val;
        else if (key == "learner") cfg.learner = val;
        else if (key == "regularizer") cfg.regularizer = val;
        else if (key == "step") cfg.step = val;
        else if (key == "T") cfg.horizon = static_cast<int>(to_long(key, val));
        else if (key == "seeds") cfg.seeds = static_cast<int>(to_long(key, val));
        else if (key == "seed_base") cfg.seed_base = static_cast<std::uint64_t>(to_long(key, val));
        else if (key == "out") cfg.out_dir = val;
        else if (key == "force") cfg.force = to_long(key, val) != 0;
        else if (key == "gamma0") cfg.gamma0 = to_double(key, val);
        else if (key == "p") cfg.p = to_double(key, val);
        else if (key == "b0") cfg.b0 = to_double(key, val);
        else if (key == "lb") cfg.lb = to_double(key, val);
        else if (key == "sigma0") cfg.sigma0 = to_double(key, val);
        else if (key == "s") cfg.s = to_double(key, val);
        else if (key == "delta0") cfg.delta0 = to_double(key, val);
        else if (key == "q") cfg.q = to_double(key, val);
        else if (key == "players") cfg.players = static_cast<int>(to_long(key, val));
        else if (key == "dim") cfg.dim = static_cast<int>(to_long(key, val));
        else if (key == "mu") cfg.mu = to_double(key, val);
        else if (key == "beta") cfg.beta = to_double(key, val);
        else if (key == "theta") cfg.theta = to_vec(key, val);
        else if (key == "box_lo") cfg.box_lo = to_double(key, val);
        else if (key == "box_hi") cfg.box_hi = to_double(key, val);
        else if (key == "matrix") cfg.matrix = to_matrix(key, val);
        else if (key == "coeffs") cfg.coeffs = to_vec(key, val);
        else if (key == "gains") cfg.gains = to_vec(key, val);
        else if (key == "budgets") cfg.budgets = to_vec(key, val);
        else if (key == "capacity") cfg.capacity = to_double(key, val);
        else if (key == "barrier") cfg.barrier = to_double(key, val);
        else if (key == "v") cfg.v = to_double(key, val);
        else if (key == "beta0") cfg.beta0 = to_double(key, val);
        else if (key == "rho") cfg.rho = to_double(key, val);
        else if (key == "wrap") cfg.wrap = to_double(key, val);
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string stem = path;
    const auto slash = stem.find_last_of("/\\");
    if (slash != std::string::npos) stem = stem.substr(slash + 1);
    const auto dot = stem.find_last_of('.');
    if (dot != std::string::npos) stem = stem.substr(0, dot);
    return parse_config_text(ss.str(), stem);
}

std::shared_ptr<const GameSequence> ExperimentConfig::make_sequence() const {
    std::shared_ptr<const StageGame> base;
    std::shared_ptr<const QuadraticNetwork> quad;

    if (game == "quadratic_network") {
        if (players < 1) throw std::invalid_argument("config: players must be >= 1");
        if (static_cast<int>(theta.size()) != players * dim)
            throw std::invalid_argument("config: theta needs players*dim entries");
        std::vector<Vec> th(players);
        std::vector<ActionSet> boxes;
        for (int i = 0; i < players; ++i) {
            th[i].assign(theta.begin() + i * dim, theta.begin() + (i + 1) * dim);
            boxes.push_back(ActionSet::box(Vec(dim, box_lo), Vec(dim, box_hi)));
        }
        quad = std::make_shared<QuadraticNetwork>(mu, beta, std::move(th),
                                                  std::move(boxes));
        base = quad;
    } else if (game == "bilinear_zero_sum") {
        base = std::make_shared<BilinearZeroSum>(matrix);
    } else if (game == "kelly_auction") {
        base = std::make_shared<KellyAuction>(gains, capacity, barrier, budgets);
    } else if (game == "linear_simplex") {
        base = std::make_shared<LinearSimplex>(coeffs);
    } else {
        throw std::invalid_argument("config: unknown game '" + game + "'");
    }

    if (sequence == "static")
        return std::make_shared<GameSequence>(GameSequence::static_sequence(base));
    if (sequence == "stabilizing")
        return std::make_shared<GameSequence>(
            GameSequence::stabilizing(base, beta0, v));
    if (sequence == "drifting") {
        if (!quad)
            throw std::invalid_argument(
                "config: drifting sequences require the quadratic_network family");
        return std::make_shared<GameSequence>(
            GameSequence::drifting(quad, v, rho, wrap));
    }
    throw std::invalid_argument("config: unknown sequence '" + sequence + "'");
}

Regularizer ExperimentConfig::make_regularizer() const {
    if (regularizer == "euclidean") return Regularizer(RegKind::euclidean);
    if (regularizer == "entropic") return Regularizer(RegKind::entropic);
    throw std::invalid_argument("config: unknown regularizer '" + regularizer + "'");
}

StepSchedule ExperimentConfig::make_step(const GameSequence& seq) const {
    if (step == "constant") return StepSchedule::constant(gamma0);
    if (step == "power") return StepSchedule::power(gamma0, p);
    if (step == "inverse_log") return StepSchedule::inverse_log(gamma0);
    if (step == "tuned_constant") {
        // gamma = (2/sbar) sqrt(K H / T) with sbar^2 = (B + b0)^2 + sigma0^2
        const Regularizer reg = make_regularizer();
        double depth = 0.0;
        for (int i = 0; i < seq.players(); ++i)
            depth += reg.depth(seq.action_set(i));
        const double bound = seq.limit_game().grad_bound() + b0;
        const double sbar = std::sqrt(bound * bound + sigma0 * sigma0);
        const double g =
            (2.0 / sbar) * std::sqrt(reg.modulus() * depth / horizon);
        return StepSchedule::constant(g);
    }
    throw std::invalid_argument("config: unknown step '" + step + "'");
}

NoiseSchedule ExperimentConfig::make_noise() const {
    return NoiseSchedule(b0, lb, sigma0, s);
}

SpsaConfig ExperimentConfig::make_spsa(const GameSequence& seq) const {
    std::vector<ActionSet> sets;
    for (int i = 0; i < seq.players(); ++i) sets.push_back(seq.action_set(i));
    return SpsaConfig(sets, delta0, q);
}

std::vector<std::string> ExperimentConfig::exponent_violations() const {
    std::vector<std::string> bad;
    const double margin = 0.05;
    const bool unbiased = b0 == 0.0;
    const bool noisy = sigma0 > 0.0;
    auto fail = [&](const std::string& msg) { bad.push_back(msg); };

    if (learner == "gradient") {
        if (sequence == "stabilizing") {
            // convergence: p > max{1-v, 1-lb, 1/2+s}
            double lo = std::max(1.0 - v, noisy ? 0.5 + s : 0.0);
            if (!unbiased) lo = std::max(lo, 1.0 - lb);
            if (step != "power" || !(p >= lo + margin))
                fail("stabilizing convergence needs power step with p > max{1-v, 1-lb, 1/2+s} + 0.05");
        } else if (sequence == "drifting") {
            // tracking: 2s < p < (1+2s-v)/2
            if (step != "power" || !(p >= 2 * s + margin) ||
                !(p <= (1.0 + 2 * s - v) / 2.0 - margin))
                fail("tracking needs power step with 2s + 0.05 < p < (1+2s-v)/2 - 0.05");
        } else if (step == "power" && noisy) {
            // square-summability of the noise terms
            if (!(p >= 0.5 + s + margin))
                fail("noisy static runs with power steps need p > 1/2 + s + 0.05");
        }
    } else if (learner == "bandit") {
        if (sequence == "drifting") {
            if (step != "power" || !(p >= 2 * q + margin) ||
                !(2 * p - 2 * q + v <= 1.0 - margin))
                fail("bandit tracking needs 2q + 0.05 < p and 2p - 2q + v < 1 - 0.05");
        } else {
            double lo = std::max(1.0 - q, 0.5 + q);
            if (sequence == "stabilizing") lo = std::max(lo, 1.0 - v);
            if (step != "power" || !(p >= lo + margin))
                fail("bandit convergence needs p > max{1-v, 1-q, 1/2+q} + 0.05");
        }
    }
    return bad;
}

std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
    if (cfg.horizon < 1) throw std::invalid_argument("config: T must be >= 1");
    if (cfg.seeds < 1) throw std::invalid_argument("config: seeds must be >= 1");
    if (cfg.learner != "gradient" && cfg.learner != "bandit")
        throw std::invalid_argument("config: unknown learner '" + cfg.learner + "'");

    const auto seq = cfg.make_sequence();
    const Regularizer reg = cfg.make_regularizer();
    for (int i = 0; i < seq->players(); ++i) {
        if (reg.kind() == RegKind::entropic &&
            seq->action_set(i).kind() != SetKind::simplex)
            throw std::invalid_argument(
                "config: entropic regularizer requires simplex action sets");
    }
    (void)cfg.make_step(*seq);
    if (cfg.learner == "bandit") cfg.make_spsa(*seq).validate(cfg.horizon);

    if (cfg.sequence == "stabilizing" && cfg.game == "quadratic_network") {
        // perturbed payoffs stay individually concave: mu > beta0 * amp
        double amp = 0.0;
        for (int i = 0; i < seq->players(); ++i)
            amp += std::sqrt(static_cast<double>(seq->action_set(i).dim()));
        amp = 1.0 / amp;
        if (!(cfg.mu > cfg.beta0 * amp))
            throw std::invalid_argument(
                "config: stabilizing perturbation breaks concavity (beta0 too large)");
    }
    if (cfg.sequence == "drifting") {
        // the equilibrium path must stay strictly inside the boxes
        for (int k = 0; k <= 64; ++k) {
            // the path parametrization only depends on phi, so a phase grid
            // covers every stage
            const double phi = 2.0 * 3.14159265358979 * k / 64.0;
            const auto* qn = dynamic_cast<const QuadraticNetwork*>(&seq->limit_game());
            std::vector<Vec> th = qn->theta();
            th[0][0] += cfg.rho * std::cos(phi);
            int i1 = 0, j1 = 1;
            if (seq->action_set(0).dim() < 2) { i1 = 1; j1 = 0; }
            th[i1][j1] += cfg.rho * std::sin(phi);
            const Profile ne = qn->solve_ne(th);
            for (int i = 0; i < seq->players(); ++i)
                if (!seq->action_set(i).contains(ne[i], -1e-6))
                    throw std::invalid_argument(
                        "config: drifting equilibrium path leaves the box interior");
        }
    }

    std::vector<std::string> warnings = cfg.exponent_violations();
    if (!warnings.empty() && !cfg.force) {
        std::string msg = "config: exponent conditions violated:";
        for (const auto& w : warnings) msg += "\n  " + w;
        msg += "\nset force = 1 to run anyway";
        throw std::invalid_argument(msg);
    }
    return warnings;
}

namespace {

struct Preset {
    const char* name;
    const char* text;
};

const Preset kPresets[] = {
    {"regret-sqrt",
     "# static regret of online linear optimization on the simplex\n"
     "game = linear_simplex\n"
     "coeffs = 0.45,-0.12,0.31,-0.48,0.05,0.22,-0.35,0.18,-0.05,0.40\n"
     "sequence = static\n"
     "learner = gradient\n"
     "regularizer = entropic\n"
     "step = tuned_constant\n"
     "sigma0 = 1.0\n"
     "T = 100000\n"
     "seeds = 20\n"},
    {"converge-stable",
     "# convergence under stabilization: perturbed strongly monotone network\n"
     "game = quadratic_network\n"
     "players = 3\n"
     "dim = 1\n"
     "mu = 1.0\n"
     "beta = 0.1\n"
     "theta = 0.35,0.55,0.65\n"
     "box_lo = 0.0\n"
     "box_hi = 1.0\n"
     "sequence = stabilizing\n"
     "v = 0.5\n"
     "beta0 = 1.0\n"
     "learner = gradient\n"
     "regularizer = euclidean\n"
     "step = power\n"
     "gamma0 = 1.0\n"
     "p = 0.9\n"
     "sigma0 = 0.5\n"
     "T = 200000\n"
     "seeds = 10\n"},
    {"tracking-v05",
     "# equilibrium tracking with sqrt-T drift\n"
     "game = quadratic_network\n"
     "players = 2\n"
     "dim = 1\n"
     "mu = 1.0\n"
     "beta = 0.1\n"
     "theta = 0.5,0.5\n"
     "box_lo = 0.0\n"
     "box_hi = 1.0\n"
     "sequence = drifting\n"
     "v = 0.5\n"
     "rho = 0.25\n"
     "wrap = 0.6\n"
     "learner = gradient\n"
     "regularizer = euclidean\n"
     "step = power\n"
     "gamma0 = 0.2\n"
     "p = 0.16666666666666666\n"
     "sigma0 = 0.5\n"
     "T = 100000\n"
     "seeds = 10\n"},
    {"dynreg-v05",
     "# single-player dynamic regret against a drifting quadratic target\n"
     "game = quadratic_network\n"
     "players = 1\n"
     "dim = 2\n"
     "mu = 1.0\n"
     "beta = 0.0\n"
     "theta = 0.5,0.5\n"
     "box_lo = 0.0\n"
     "box_hi = 1.0\n"
     "sequence = drifting\n"
     "v = 0.5\n"
     "rho = 0.25\n"
     "wrap = 0.6\n"
     "learner = gradient\n"
     "regularizer = euclidean\n"
     "step = power\n"
     "gamma0 = 0.2\n"
     "p = 0.16666666666666666\n"
     "sigma0 = 0.5\n"
     "T = 100000\n"
     "seeds = 10\n"},
    {"bandit-tracking-v05",
     "# payoff-based tracking with sqrt-T drift\n"
     "game = quadratic_network\n"
     "players = 2\n"
     "dim = 1\n"
     "mu = 1.0\n"
     "beta = 0.1\n"
     "theta = 1.0,1.0\n"
     "box_lo = 0.0\n"
     "box_hi = 2.0\n"
     "sequence = drifting\n"
     "v = 0.5\n"
     "rho = 0.5\n"
     "wrap = 0.6\n"
     "learner = bandit\n"
     "regularizer = euclidean\n"
     "step = power\n"
     "gamma0 = 0.5\n"
     "p = 0.3\n"
     "delta0 = 0.2\n"
     "q = 0.1\n"
     "T = 200000\n"
     "seeds = 10\n"},
    {"bandit-converge",
     "# payoff-based convergence in a static strongly monotone game.\n"
     "# p = 0.75 with q = 0.2 sits below the sufficient condition\n"
     "# p > max{1-q, 1/2+q}; the run converges regardless at desk scale.\n"
     "game = quadratic_network\n"
     "players = 1\n"
     "dim = 1\n"
     "mu = 1.0\n"
     "beta = 0.0\n"
     "theta = 1.3\n"
     "box_lo = 0.0\n"
     "box_hi = 2.0\n"
     "sequence = static\n"
     "learner = bandit\n"
     "regularizer = euclidean\n"
     "step = power\n"
     "gamma0 = 1.0\n"
     "p = 0.75\n"
     "delta0 = 0.3\n"
     "q = 0.2\n"
     "T = 200000\n"
     "seeds = 10\n"
     "force = 1\n"},
    {"zerosum-ergodic",
     "# weighted matching pennies: ergodic average converges, last iterate cycles\n"
     "game = bilinear_zero_sum\n"
     "matrix = 1.0,-0.5;-0.5,0.5\n"
     "sequence = static\n"
     "learner = gradient\n"
     "regularizer = entropic\n"
     "step = power\n"
     "gamma0 = 1.0\n"
     "p = 0.8\n"
     "T = 100000\n"
     "seeds = 1\n"},
    {"kelly-demo",
     "# three-bidder proportional allocation auction, noisy gradients\n"
     "game = kelly_auction\n"
     "gains = 4.0,3.0,2.0\n"
     "capacity = 1.0\n"
     "barrier = 1.0\n"
     "budgets = 2.0,2.0,2.0\n"
     "sequence = static\n"
     "learner = gradient\n"
     "regularizer = euclidean\n"
     "step = power\n"
     "gamma0 = 0.3\n"
     "p = 0.6\n"
     "sigma0 = 0.2\n"
     "T = 20000\n"
     "seeds = 5\n"},
};

int edit_distance(const std::string& a, const std::string& b) {
    std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1,
                               prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& p : kPresets) names.push_back(p.name);
    return names;
}

ExperimentConfig preset_config(const std::string& name) {
    for (const auto& p : kPresets)
        if (name == p.name) return parse_config_text(p.text, p.name);
    std::string nearest;
    int best = std::numeric_limits<int>::max();
    for (const auto& p : kPresets) {
        const int d = edit_distance(name, p.name);
        if (d < best) {
            best = d;
            nearest = p.name;
        }
    }
    throw std::invalid_argument("unknown preset '" + name + "' (did you mean '" +
                                nearest + "'?)");
}

}  // namespace tvg
