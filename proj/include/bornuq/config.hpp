#ifndef BORNUQ_CONFIG_HPP
#define BORNUQ_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bornuq/physics.hpp"

namespace bornuq::harness {

enum class ExperimentKind {
    variance_scaling,
    coverage,
    calibration,
    intervals,
    constrained,
    info_efficiency,
};

std::string experiment_name(ExperimentKind kind);
ExperimentKind experiment_from_name(const std::string& name);
std::vector<ExperimentKind> all_experiments();

/*
 * Flat key=value experiment configuration. Every knob has a documented
 * per-experiment default; unknown keys are rejected so typos fail loudly.
 * See configs/*.cfg for the shipped defaults of each experiment.
 */
struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::variance_scaling;
    std::uint64_t seed = 42;
    int repetitions = 100; // shot/mask resampling reps, or training seeds
                           // for calibration/constrained
    std::string out_dir = "out";

    // quantum system
    std::vector<int> qubit_sizes = {4, 5, 6, 7, 8};
    int n_layers = 3;
    std::vector<long> shots = {1000, 5000, 10000};
    std::vector<double> levels = {0.90, 0.95};
    std::string readout = "single"; // single | mean: observable used for
                                    // shot-based intervals

    // task and circuit training
    physics::PdeKind task = physics::PdeKind::heat;
    double lambda = 0.0;     // residual weight for quantum training
    int epochs = 300;
    double step = 0.05;
    double momentum = 0.9;
    double noise = 0.01;     // held-out truth noise level
    std::string quantum_truth = "expectation"; // expectation | heldout

    // variance-scaling
    std::vector<double> expectations = {0.3, 0.6, 0.9};

    // classical baselines
    double dropout_rate = 0.1;
    int passes = 100; // T
    std::vector<int> ensemble_members = {5, 10};
    std::vector<int> net_hidden = {64, 64};
    int net_epochs = 1500;
    double net_step = 0.02;
    int train_points = 128; // baseline training samples over the domain
    int eval_points = 64;   // held-out evaluation grid size

    // info-efficiency
    std::vector<long> budgets = {10, 100, 1000};
    int info_qubits = 1;

    void validate() const;

    // canonical text: every knob, sorted by key; hashed into provenance
    std::string canonical_text() const;
};

ExperimentConfig parse_config_text(std::string_view text);
ExperimentConfig parse_config_file(const std::string& path);

} // namespace bornuq::harness

#endif
