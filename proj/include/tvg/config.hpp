#ifndef TVG_CONFIG_HPP
#define TVG_CONFIG_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tvg/games.hpp"
#include "tvg/learner.hpp"

namespace tvg {

// Parsed experiment description.  The raw key/value map is kept verbatim so
// the JSON summary can echo a re-runnable copy of the config.
struct ExperimentConfig {
    std::string name = "experiment";

    std::string game;         // quadratic_network | bilinear_zero_sum |
                              // kelly_auction | linear_simplex
    std::string sequence;     // static | stabilizing | drifting
    std::string learner;      // gradient | bandit
    std::string regularizer;  // euclidean | entropic
    std::string step;         // constant | power | inverse_log | tuned_constant

    int horizon = 0;
    int seeds = 1;
    std::uint64_t seed_base = 1;
    std::string out_dir;
    bool force = false;  // override exponent validation (warn instead of fail)

    double gamma0 = 0.0, p = 0.0;
    double b0 = 0.0, lb = 0.0, sigma0 = 0.0, s = 0.0;
    double delta0 = 0.0, q = 0.0;

    int players = 0, dim = 1;
    double mu = 0.0, beta = 0.0;
    Vec theta;  // flattened players*dim
    double box_lo = 0.0, box_hi = 1.0;
    std::vector<Vec> matrix;
    Vec coeffs;                       // linear simplex
    Vec gains, budgets;               // kelly
    double capacity = 0.0, barrier = 0.0;

    double v = 0.0;        // drift / decay exponent
    double beta0 = 0.0;    // stabilizing magnitude
    double rho = 0.0;      // drifting circle radius
    double wrap = 0.0;     // drifting phase speed

    std::map<std::string, std::string> raw;

    // Build the runtime objects.  Throws std::invalid_argument on bad values.
    std::shared_ptr<const GameSequence> make_sequence() const;
    Regularizer make_regularizer() const;
    StepSchedule make_step(const GameSequence& seq) const;
    NoiseSchedule make_noise() const;
    SpsaConfig make_spsa(const GameSequence& seq) const;

    // Exponent conditions of the targeted theorem, margin 0.05.  Returns a
    // list of violation messages (empty when clean).
    std::vector<std::string> exponent_violations() const;
};

// Parse "key = value" text (# comments, blank lines ignored).  Unknown keys
// are errors so typos in exponent names cannot silently pass.
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& name);
ExperimentConfig parse_config_file(const std::string& path);

// Full validation: field ranges, family coherence, exponent conditions.
// Throws std::invalid_argument unless cfg.force downgrades exponent
// violations to warnings (returned for printing).
std::vector<std::string> validate_config(const ExperimentConfig& cfg);

// Shipped presets, one per headline experiment.
std::vector<std::string> preset_names();
ExperimentConfig preset_config(const std::string& name);

}  // namespace tvg

#endif
