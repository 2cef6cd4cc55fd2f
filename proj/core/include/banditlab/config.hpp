#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "banditlab/rls.hpp"

namespace banditlab {

/// One learner entry of an experiment. `rep` is required for the
/// single-representation kinds (linucb, glr_bai) and ignored otherwise.
struct AlgorithmSpec {
    enum class Kind { linucb, leader, eleader, exp4ix, regbal, glr_bai };

    Kind kind = Kind::linucb;
    int rep = -1;
    /// eleader: evaluate the elimination statistic at the norm-constrained
    /// minimizer (false: plain ridge estimate).
    bool constrained_mse = true;
    /// regbal: feed every base with every sample instead of only the
    /// playing base.
    bool shared_updates = false;
};

/// Keys of the JSON experiment file. Unknown keys are rejected so a config
/// always means what it says.
struct ExperimentConfig {
    /// Preset name (see preset_names()) or path to a problem file.
    std::string problem;
    std::uint64_t seed = 1;
    long horizon = 50000;
    int runs = 20;
    double delta = 0.01;
    double lambda = 1.0;
    /// Optional noise override applied to the problem.
    std::optional<double> sigma;
    std::string out_dir = "results";
    ConfidenceSchedule schedule = ConfidenceSchedule::fixed;
    /// CSV stride: a trace row is written when t is a multiple of this (the
    /// final step is always written). 1 keeps full fidelity.
    long trace_every = 1;
    /// Draw the regret plot with a logarithmic time axis.
    bool plot_log_x = false;
    std::vector<AlgorithmSpec> algorithms;
};

/// Parses the JSON text of an experiment config. Unknown keys, wrong
/// types, and out-of-range values throw std::invalid_argument naming the
/// offending key.
ExperimentConfig parse_config(const std::string& json_text);

ExperimentConfig load_config_file(const std::string& path);

/// Canonical spelling of an algorithm kind ("linucb", "leader", ...).
std::string algorithm_kind_name(AlgorithmSpec::Kind kind);

}  // namespace banditlab
