#include "banditlab/config.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>
#include <stdexcept>

namespace banditlab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
    throw std::invalid_argument("config: " + message);
}

void check_keys(const json& object, const std::string& where,
                const std::set<std::string>& allowed) {
    for (auto it = object.begin(); it != object.end(); ++it) {
        if (!allowed.count(it.key())) {
            fail("unknown key \"" + it.key() + "\" in " + where);
        }
    }
}

const json* find(const json& object, const std::string& key) {
    auto it = object.find(key);
    return it == object.end() ? nullptr : &*it;
}

std::string as_string(const json& value, const std::string& key) {
    if (!value.is_string()) fail("\"" + key + "\" must be a string");
    return value.get<std::string>();
}

bool as_bool(const json& value, const std::string& key) {
    if (!value.is_boolean()) fail("\"" + key + "\" must be a boolean");
    return value.get<bool>();
}

double as_number(const json& value, const std::string& key) {
    if (!value.is_number()) fail("\"" + key + "\" must be a number");
    return value.get<double>();
}

long as_integer(const json& value, const std::string& key) {
    if (!value.is_number_integer()) fail("\"" + key + "\" must be an integer");
    return value.get<long>();
}

AlgorithmSpec::Kind parse_kind(const std::string& name) {
    if (name == "linucb") return AlgorithmSpec::Kind::linucb;
    if (name == "leader") return AlgorithmSpec::Kind::leader;
    if (name == "eleader") return AlgorithmSpec::Kind::eleader;
    if (name == "exp4ix") return AlgorithmSpec::Kind::exp4ix;
    if (name == "regbal") return AlgorithmSpec::Kind::regbal;
    if (name == "glr_bai") return AlgorithmSpec::Kind::glr_bai;
    fail("unknown algorithm type \"" + name + "\"");
}

AlgorithmSpec parse_algorithm(const json& entry, size_t index) {
    const std::string where = "algorithms[" + std::to_string(index) + "]";
    if (!entry.is_object()) fail(where + " must be an object");
    check_keys(entry, where, {"type", "rep", "constrained_mse", "shared_updates"});

    AlgorithmSpec spec;
    const json* type = find(entry, "type");
    if (!type) fail(where + " is missing \"type\"");
    spec.kind = parse_kind(as_string(*type, "type"));

    if (const json* rep = find(entry, "rep")) {
        spec.rep = static_cast<int>(as_integer(*rep, "rep"));
        if (spec.rep < 0) fail("\"rep\" must be non-negative");
    }
    const bool needs_rep = spec.kind == AlgorithmSpec::Kind::linucb ||
                           spec.kind == AlgorithmSpec::Kind::glr_bai;
    if (needs_rep && spec.rep < 0) {
        fail(where + " (" + algorithm_kind_name(spec.kind) + ") requires \"rep\"");
    }
    if (const json* c = find(entry, "constrained_mse")) {
        spec.constrained_mse = as_bool(*c, "constrained_mse");
    }
    if (const json* s = find(entry, "shared_updates")) {
        spec.shared_updates = as_bool(*s, "shared_updates");
    }
    return spec;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& err) {
        fail(std::string("invalid JSON: ") + err.what());
    }
    if (!root.is_object()) fail("top level must be an object");
    check_keys(root, "config",
               {"problem", "seed", "horizon", "runs", "delta", "lambda", "sigma", "out_dir",
                "confidence_schedule", "trace_every", "plot_log_x", "algorithms"});

    ExperimentConfig config;
    const json* problem = find(root, "problem");
    if (!problem) fail("missing \"problem\"");
    config.problem = as_string(*problem, "problem");
    if (config.problem.empty()) fail("\"problem\" must be non-empty");

    if (const json* seed = find(root, "seed")) {
        const long value = as_integer(*seed, "seed");
        if (value < 0) fail("\"seed\" must be non-negative");
        config.seed = static_cast<std::uint64_t>(value);
    }
    if (const json* horizon = find(root, "horizon")) {
        config.horizon = as_integer(*horizon, "horizon");
        if (config.horizon < 1) fail("\"horizon\" must be positive");
    }
    if (const json* runs = find(root, "runs")) {
        const long value = as_integer(*runs, "runs");
        if (value < 1) fail("\"runs\" must be positive");
        config.runs = static_cast<int>(value);
    }
    if (const json* delta = find(root, "delta")) {
        config.delta = as_number(*delta, "delta");
        if (!(config.delta > 0.0) || !(config.delta < 1.0)) {
            fail("\"delta\" must lie in (0, 1)");
        }
    }
    if (const json* lambda = find(root, "lambda")) {
        config.lambda = as_number(*lambda, "lambda");
        if (!(config.lambda > 0.0)) fail("\"lambda\" must be positive");
    }
    if (const json* sigma = find(root, "sigma")) {
        const double value = as_number(*sigma, "sigma");
        if (value < 0.0) fail("\"sigma\" must be non-negative");
        config.sigma = value;
    }
    if (const json* out_dir = find(root, "out_dir")) {
        config.out_dir = as_string(*out_dir, "out_dir");
        if (config.out_dir.empty()) fail("\"out_dir\" must be non-empty");
    }
    if (const json* schedule = find(root, "confidence_schedule")) {
        const std::string name = as_string(*schedule, "confidence_schedule");
        if (name == "fixed") {
            config.schedule = ConfidenceSchedule::fixed;
        } else if (name == "cubic") {
            config.schedule = ConfidenceSchedule::cubic;
        } else {
            fail("\"confidence_schedule\" must be \"fixed\" or \"cubic\"");
        }
    }
    if (const json* stride = find(root, "trace_every")) {
        config.trace_every = as_integer(*stride, "trace_every");
        if (config.trace_every < 1) fail("\"trace_every\" must be positive");
    }
    if (const json* log_x = find(root, "plot_log_x")) {
        config.plot_log_x = as_bool(*log_x, "plot_log_x");
    }

    const json* algorithms = find(root, "algorithms");
    if (!algorithms) fail("missing \"algorithms\"");
    if (!algorithms->is_array()) fail("\"algorithms\" must be an array");
    if (algorithms->empty()) fail("\"algorithms\" must be non-empty");
    for (size_t i = 0; i < algorithms->size(); ++i) {
        config.algorithms.push_back(parse_algorithm((*algorithms)[i], i));
    }
    return config;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string algorithm_kind_name(AlgorithmSpec::Kind kind) {
    switch (kind) {
        case AlgorithmSpec::Kind::linucb: return "linucb";
        case AlgorithmSpec::Kind::leader: return "leader";
        case AlgorithmSpec::Kind::eleader: return "eleader";
        case AlgorithmSpec::Kind::exp4ix: return "exp4ix";
        case AlgorithmSpec::Kind::regbal: return "regbal";
        case AlgorithmSpec::Kind::glr_bai: return "glr_bai";
    }
    throw std::invalid_argument("config: unknown algorithm kind");
}

}  // namespace banditlab
