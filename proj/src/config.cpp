#include "bornuq/config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bornuq/textio.hpp"

namespace bornuq::harness {

std::string experiment_name(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::variance_scaling: return "variance-scaling";
    case ExperimentKind::coverage: return "coverage";
    case ExperimentKind::calibration: return "calibration";
    case ExperimentKind::intervals: return "intervals";
    case ExperimentKind::constrained: return "constrained";
    case ExperimentKind::info_efficiency: return "info-efficiency";
    }
    throw std::logic_error("experiment_name: unknown kind");
}

ExperimentKind experiment_from_name(const std::string& name) {
    for (ExperimentKind kind : all_experiments())
        if (experiment_name(kind) == name)
            return kind;
    throw std::invalid_argument("unknown experiment '" + name + "'");
}

std::vector<ExperimentKind> all_experiments() {
    return {ExperimentKind::variance_scaling, ExperimentKind::coverage,
            ExperimentKind::calibration,      ExperimentKind::intervals,
            ExperimentKind::constrained,      ExperimentKind::info_efficiency};
}

namespace {

// defaults that differ by experiment
void apply_experiment_defaults(ExperimentConfig& cfg) {
    switch (cfg.experiment) {
    case ExperimentKind::variance_scaling:
        cfg.repetitions = 10000;
        cfg.shots = {10, 100, 1000, 10000};
        break;
    case ExperimentKind::coverage:
        cfg.repetitions = 100;
        cfg.shots = {1000, 5000, 10000};
        break;
    case ExperimentKind::intervals:
        cfg.repetitions = 100;
        cfg.shots = {1000, 5000, 10000};
        cfg.levels = {0.90};
        break;
    case ExperimentKind::calibration:
        cfg.repetitions = 20; // training seeds
        cfg.shots = {100, 500, 1000, 5000, 10000};
        cfg.qubit_sizes = {4};
        cfg.readout = "mean";
        cfg.quantum_truth = "heldout";
        cfg.lambda = 1.0;
        break;
    case ExperimentKind::constrained:
        cfg.repetitions = 20;
        cfg.shots = {1000};
        cfg.qubit_sizes = {4};
        cfg.readout = "mean";
        cfg.quantum_truth = "heldout";
        cfg.lambda = 1.0;
        break;
    case ExperimentKind::info_efficiency:
        cfg.repetitions = 1;
        break;
    }
}

std::vector<int> parse_int_list_or_range(const std::string& value) {
    // "4..8" or "4,5,6"
    if (std::size_t dots = value.find(".."); dots != std::string::npos) {
        const long lo = textio::parse_long(value.substr(0, dots));
        const long hi = textio::parse_long(value.substr(dots + 2));
        if (hi < lo)
            throw std::invalid_argument("range '" + value + "' is reversed");
        std::vector<int> out;
        for (long v = lo; v <= hi; ++v)
            out.push_back(static_cast<int>(v));
        return out;
    }
    std::vector<int> out;
    for (long v : textio::parse_long_list(value, ','))
        out.push_back(static_cast<int>(v));
    return out;
}

physics::PdeKind task_from_name(const std::string& name) {
    if (name == "heat")
        return physics::PdeKind::heat;
    if (name == "burgers")
        return physics::PdeKind::burgers;
    throw std::invalid_argument("unknown task '" + name + "' (expected heat or burgers)");
}

std::string task_name(physics::PdeKind kind) {
    return kind == physics::PdeKind::heat ? "heat" : "burgers";
}

} // namespace

void ExperimentConfig::validate() const {
    if (repetitions < 1)
        throw std::invalid_argument("config: repetitions must be >= 1");
    if (shots.empty() || std::any_of(shots.begin(), shots.end(), [](long n) { return n < 1; }))
        throw std::invalid_argument("config: shot counts must all be >= 1");
    if (qubit_sizes.empty() ||
        std::any_of(qubit_sizes.begin(), qubit_sizes.end(), [](int n) { return n < 1 || n > 12; }))
        throw std::invalid_argument("config: n_qubits must lie in 1..12");
    for (double q : levels)
        if (!(q > 0.0 && q < 1.0))
            throw std::invalid_argument("config: levels must lie in (0, 1)");
    if (levels.empty())
        throw std::invalid_argument("config: need at least one level");
    if (readout != "single" && readout != "mean")
        throw std::invalid_argument("config: readout must be single or mean");
    if (quantum_truth != "expectation" && quantum_truth != "heldout")
        throw std::invalid_argument("config: quantum_truth must be expectation or heldout");
    if (!(lambda >= 0.0))
        throw std::invalid_argument("config: lambda must be >= 0");
    if (expectations.empty() ||
        std::any_of(expectations.begin(), expectations.end(),
                    [](double z) { return !(std::abs(z) <= 1.0); }))
        throw std::invalid_argument("config: expectations must lie in [-1, 1]");
    if (!(noise >= 0.0))
        throw std::invalid_argument("config: noise must be >= 0");
    if (!(dropout_rate >= 0.0 && dropout_rate < 1.0))
        throw std::invalid_argument("config: dropout_rate must be in [0, 1)");
    if (passes < 2)
        throw std::invalid_argument("config: passes must be >= 2");
    for (int m : ensemble_members)
        if (m < 2)
            throw std::invalid_argument("config: ensemble members must be >= 2");
    if (epochs < 1 || net_epochs < 1)
        throw std::invalid_argument("config: epochs must be >= 1");
    if (train_points < 1 || eval_points < 1)
        throw std::invalid_argument("config: point counts must be >= 1");
    if (budgets.empty() ||
        std::any_of(budgets.begin(), budgets.end(), [](long b) { return b < 1; }))
        throw std::invalid_argument("config: budgets must all be >= 1");
    if (info_qubits < 1)
        throw std::invalid_argument("config: info_qubits must be >= 1");
    if (out_dir.empty())
        throw std::invalid_argument("config: out directory must not be empty");
}

std::string ExperimentConfig::canonical_text() const {
    using textio::format_double;
    std::ostringstream out;
    auto list_i = [](const std::vector<int>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + std::to_string(v[i]);
        return s;
    };
    auto list_l = [](const std::vector<long>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + std::to_string(v[i]);
        return s;
    };
    auto list_d = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + textio::format_double(v[i]);
        return s;
    };
    // alphabetical by key; the seed is provenance, not configuration
    out << "budgets=" << list_l(budgets) << '\n';
    out << "dropout_rate=" << format_double(dropout_rate) << '\n';
    out << "ensemble_members=" << list_i(ensemble_members) << '\n';
    out << "epochs=" << epochs << '\n';
    out << "eval_points=" << eval_points << '\n';
    out << "expectations=" << list_d(expectations) << '\n';
    out << "experiment=" << experiment_name(experiment) << '\n';
    out << "info_qubits=" << info_qubits << '\n';
    out << "lambda=" << format_double(lambda) << '\n';
    out << "levels=" << list_d(levels) << '\n';
    out << "momentum=" << format_double(momentum) << '\n';
    out << "n_layers=" << n_layers << '\n';
    out << "n_qubits=" << list_i(qubit_sizes) << '\n';
    out << "net_epochs=" << net_epochs << '\n';
    out << "net_hidden=" << list_i(net_hidden) << '\n';
    out << "net_step=" << format_double(net_step) << '\n';
    out << "noise=" << format_double(noise) << '\n';
    out << "passes=" << passes << '\n';
    out << "quantum_truth=" << quantum_truth << '\n';
    out << "readout=" << readout << '\n';
    out << "repetitions=" << repetitions << '\n';
    out << "shots=" << list_l(shots) << '\n';
    out << "step=" << format_double(step) << '\n';
    out << "task=" << task_name(task) << '\n';
    out << "train_points=" << train_points << '\n';
    return out.str();
}

ExperimentConfig parse_config_text(std::string_view text) {
    const auto kv = textio::KvFile::parse(text);

    ExperimentConfig cfg;
    cfg.experiment = experiment_from_name(kv.require("experiment"));
    apply_experiment_defaults(cfg);

    for (const auto& [key, value] : kv.entries) {
        if (key == "experiment") {
            // already handled
        } else if (key == "seed") {
            cfg.seed = textio::parse_u64(value);
        } else if (key == "repetitions") {
            cfg.repetitions = static_cast<int>(textio::parse_long(value));
        } else if (key == "out") {
            cfg.out_dir = value;
        } else if (key == "n_qubits") {
            cfg.qubit_sizes = parse_int_list_or_range(value);
        } else if (key == "n_layers") {
            cfg.n_layers = static_cast<int>(textio::parse_long(value));
        } else if (key == "shots") {
            cfg.shots = textio::parse_long_list(value, ',');
        } else if (key == "levels") {
            cfg.levels = textio::parse_double_list(value, ',');
        } else if (key == "readout") {
            cfg.readout = value;
        } else if (key == "task") {
            cfg.task = task_from_name(value);
        } else if (key == "lambda") {
            cfg.lambda = textio::parse_double(value);
        } else if (key == "epochs") {
            cfg.epochs = static_cast<int>(textio::parse_long(value));
        } else if (key == "step") {
            cfg.step = textio::parse_double(value);
        } else if (key == "momentum") {
            cfg.momentum = textio::parse_double(value);
        } else if (key == "noise") {
            cfg.noise = textio::parse_double(value);
        } else if (key == "quantum_truth") {
            cfg.quantum_truth = value;
        } else if (key == "expectations") {
            cfg.expectations = textio::parse_double_list(value, ',');
        } else if (key == "dropout_rate") {
            cfg.dropout_rate = textio::parse_double(value);
        } else if (key == "passes") {
            cfg.passes = static_cast<int>(textio::parse_long(value));
        } else if (key == "ensemble_members") {
            cfg.ensemble_members = parse_int_list_or_range(value);
        } else if (key == "net_hidden") {
            cfg.net_hidden = parse_int_list_or_range(value);
        } else if (key == "net_epochs") {
            cfg.net_epochs = static_cast<int>(textio::parse_long(value));
        } else if (key == "net_step") {
            cfg.net_step = textio::parse_double(value);
        } else if (key == "train_points") {
            cfg.train_points = static_cast<int>(textio::parse_long(value));
        } else if (key == "eval_points") {
            cfg.eval_points = static_cast<int>(textio::parse_long(value));
        } else if (key == "budgets") {
            cfg.budgets = textio::parse_long_list(value, ',');
        } else if (key == "info_qubits") {
            cfg.info_qubits = static_cast<int>(textio::parse_long(value));
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }

    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    try {
        return parse_config_text(textio::read_file(path));
    } catch (const std::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

} // namespace bornuq::harness
