#ifndef TVG_RUNNER_HPP
#define TVG_RUNNER_HPP

#include <string>

#include "tvg/config.hpp"

namespace tvg {

struct ExperimentSummary {
    std::string json;         // serialized summary (also written to disk)
    std::string summary_path;
    std::vector<std::string> csv_paths;
    bool partial = false;     // some seed failed
};

// Runs every seed of the experiment, writes one CSV trace per seed plus an
// aggregated JSON summary (mean series, rate fits, config echo), and returns
// the summary.  Output goes to cfg.out_dir, the TVG_OUT environment variable,
// or ./runs, in that order.
ExperimentSummary run_experiment(const ExperimentConfig& cfg);

}  // namespace tvg

#endif
