#include "tvg/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

#include <json.hpp>

#include "tvg/equilibrium.hpp"
#include "tvg/metrics.hpp"

namespace tvg {

namespace {

using nlohmann::json;

std::string output_dir(const ExperimentConfig& cfg) {
    if (!cfg.out_dir.empty()) return cfg.out_dir;
    if (const char* env = std::getenv("TVG_OUT")) return env;
    return "runs";
}

void add_series(Vec& mean, const Vec& series, int count) {
    if (mean.empty()) mean.assign(series.size(), 0.0);
    for (std::size_t i = 0; i < series.size(); ++i)
        mean[i] += (series[i] - mean[i]) / count;
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
    const auto warnings = validate_config(cfg);
    for (const auto& w : warnings)
        std::cerr << "warning: " << w << "\n";

    const auto seq = cfg.make_sequence();
    const Regularizer reg = cfg.make_regularizer();
    const StepSchedule sched = cfg.make_step(*seq);
    const NoiseSchedule noise = cfg.make_noise();
    const bool bandit = cfg.learner == "bandit";

    const std::filesystem::path dir = output_dir(cfg);
    std::filesystem::create_directories(dir);

    ExperimentSummary result;
    json summary;
    summary["config"] = json::object();
    for (const auto& [k, v] : cfg.raw) summary["config"][k] = v;
    summary["preset"] = cfg.name;
    summary["seeds"] = json::array();

    const bool has_limit_ne = seq->limit_game().closed_form_nash().has_value();
    const bool has_stage_ne = seq->nash(1).has_value();
    const bool single_player = seq->players() == 1;
    const auto* bilinear = dynamic_cast<const BilinearZeroSum*>(&seq->limit_game());

    Vec mean_track, mean_dynreg, mean_breg;
    double mean_final_dist = 0.0, mean_regret = 0.0;
    double mean_gap_ergodic = 0.0, mean_gap_tail = 0.0;
    int completed = 0;

    for (int k = 0; k < cfg.seeds; ++k) {
        const std::uint64_t seed = cfg.seed_base + static_cast<std::uint64_t>(k);
        json seed_info;
        seed_info["seed"] = seed;
        try {
            RunTrace trace =
                bandit ? run_bandit(seq, reg, sched, cfg.make_spsa(*seq),
                                    cfg.horizon, seed)
                       : run_gradient(seq, reg, sched, noise, cfg.horizon, seed);
            ++completed;

            const std::filesystem::path csv_path =
                dir / (cfg.name + "_seed" + std::to_string(seed) + ".csv");
            {
                std::ofstream os(csv_path);
                write_trace_csv(os, trace, reg);
            }
            result.csv_paths.push_back(csv_path.string());
            seed_info["csv"] = csv_path.string();

            if (has_stage_ne) {
                const Vec series = tracking_error_series(trace, bandit);
                add_series(mean_track, series, completed);
                seed_info["tracking_error"] = series.back();
            }
            if (has_stage_ne && single_player) {
                const Vec series = dynamic_regret_series(trace, 0);
                add_series(mean_dynreg, series, completed);
                seed_info["dynamic_regret"] = series.back();
            }
            if (has_limit_ne) {
                const Profile star = *seq->limit_game().closed_form_nash();
                const Profile last = bandit ? trace.realized_at(cfg.horizon)
                                            : trace.profile_at(cfg.horizon);
                const double dist = dist2(last, star);
                seed_info["final_distance"] = dist;
                mean_final_dist += (dist - mean_final_dist) / completed;
                add_series(mean_breg, bregman_to_ne(trace, reg), completed);
            }
            if (cfg.game == "linear_simplex") {
                const double r = static_regret(trace, 0, Window::full(trace));
                seed_info["static_regret"] = r;
                mean_regret += (r - mean_regret) / completed;
            }
            if (bilinear) {
                const Profile bar = ergodic_average_at(trace, cfg.horizon);
                const double ge = saddle_gap(*bilinear, bar);
                double gt = 0.0;
                for (int n = cfg.horizon / 2; n <= cfg.horizon; ++n)
                    gt = std::max(gt, saddle_gap(*bilinear, trace.profile_at(n)));
                seed_info["ergodic_saddle_gap"] = ge;
                seed_info["max_tail_saddle_gap"] = gt;
                mean_gap_ergodic += (ge - mean_gap_ergodic) / completed;
                mean_gap_tail += (gt - mean_gap_tail) / completed;
            }
        } catch (const std::exception& e) {
            seed_info["error"] = e.what();
            result.partial = true;
        }
        summary["seeds"].push_back(seed_info);
    }

    json metrics = json::object();
    const Window tail{cfg.horizon / 2, cfg.horizon};
    if (!mean_track.empty()) {
        const RateFit f = fit_rate(mean_track, tail);
        metrics["tracking_error_final_mean"] = mean_track.back();
        metrics["tracking_error_slope"] = f.slope;
        metrics["tracking_error_r2"] = f.r_squared;
    }
    if (!mean_dynreg.empty()) {
        bool positive = true;
        for (int n = tail.start; n <= tail.end; ++n)
            positive = positive && mean_dynreg[n - 1] > 0.0;
        if (positive) {
            const RateFit f = fit_rate(mean_dynreg, tail);
            metrics["dynamic_regret_slope"] = f.slope;
            metrics["dynamic_regret_r2"] = f.r_squared;
        }
        metrics["dynamic_regret_final_mean"] = mean_dynreg.back();
    }
    if (has_limit_ne) {
        metrics["final_distance_mean"] = mean_final_dist;
        double bmax = 0.0, bmin = std::numeric_limits<double>::infinity();
        for (int n = tail.start; n <= tail.end; ++n) {
            bmax = std::max(bmax, mean_breg[n - 1]);
            bmin = std::min(bmin, mean_breg[n - 1]);
        }
        metrics["bregman_tail_spread"] = bmax - bmin;
        metrics["diameter"] = seq->limit_game().diameter();
    }
    if (cfg.game == "linear_simplex") {
        const Regularizer r = cfg.make_regularizer();
        double depth = 0.0;
        for (int i = 0; i < seq->players(); ++i) depth += r.depth(seq->action_set(i));
        const double bound = seq->limit_game().grad_bound();
        const double sbar = std::sqrt(bound * bound + cfg.sigma0 * cfg.sigma0);
        metrics["static_regret_mean"] = mean_regret;
        metrics["static_regret_bound"] =
            2.0 * sbar * std::sqrt(depth / r.modulus() * cfg.horizon);
    }
    if (bilinear) {
        metrics["ergodic_saddle_gap_mean"] = mean_gap_ergodic;
        metrics["max_tail_saddle_gap_mean"] = mean_gap_tail;
    }
    summary["metrics"] = metrics;
    summary["partial"] = result.partial;

    const std::filesystem::path spath = dir / (cfg.name + "_summary.json");
    result.summary_path = spath.string();
    result.json = summary.dump(2);
    std::ofstream os(spath);
    os << result.json << "\n";
    return result;
}

}  // namespace tvg
