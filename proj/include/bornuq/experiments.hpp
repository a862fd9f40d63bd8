#ifndef BORNUQ_EXPERIMENTS_HPP
#define BORNUQ_EXPERIMENTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "bornuq/config.hpp"
#include "bornuq/svg.hpp"
#include "bornuq/table.hpp"

namespace bornuq::harness {

struct RunOptions {
    int jobs = 1;
};

// Per-item seeds: item_seed(master, tag, index) =
//   derive_seed(derive_seed(master, hash_tag(tag)), index)
// so any work item can be recomputed in isolation.
std::uint64_t item_seed(std::uint64_t master, std::string_view tag, std::uint64_t index);

// One CSV (and optionally one figure) produced by an experiment.
struct OutputItem {
    std::string name; // file basename without extension
    ResultTable table;
    std::optional<svg::PlotSpec> plot;
};

// Full experiment recipes; the first item is the primary table.
std::vector<OutputItem> build_experiment(const ExperimentConfig& config,
                                         const RunOptions& options);

// Primary-table entry points, one per experiment.
ResultTable run_variance_scaling(const ExperimentConfig& config, const RunOptions& options = {});
ResultTable run_coverage(const ExperimentConfig& config, const RunOptions& options = {});
ResultTable run_calibration(const ExperimentConfig& config, const RunOptions& options = {});
ResultTable run_intervals(const ExperimentConfig& config, const RunOptions& options = {});
ResultTable run_constrained(const ExperimentConfig& config, const RunOptions& options = {});
ResultTable run_info_efficiency(const ExperimentConfig& config, const RunOptions& options = {});

struct EmitFormats {
    bool csv = true;
    bool svg = true;
};

// Writes table (and plot, when present and the table is non-empty) under
// out_dir; returns the paths written. Creates out_dir if needed.
std::vector<std::string> emit_outputs(const OutputItem& item, const EmitFormats& formats,
                                      const std::string& out_dir);

// Runs the configured experiment and writes all of its outputs; returns
// the written file paths.
std::vector<std::string> run_and_emit(const ExperimentConfig& config, const RunOptions& options,
                                      const EmitFormats& formats);

} // namespace bornuq::harness

#endif
