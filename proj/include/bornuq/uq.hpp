#ifndef BORNUQ_UQ_HPP
#define BORNUQ_UQ_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bornuq::uq {

// Inverse standard normal CDF (Acklam's rational approximation plus one
// Halley step; see uq.cpp for the constant set). p in (0, 1).
double normal_quantile(double p);

// Two-sided z for a central interval at the given confidence level,
// i.e. normal_quantile((1 + level) / 2).
double z_for_level(double level);

struct PredictionInterval {
    double center;
    double half_width; // >= 0
    double level;      // nominal confidence in (0, 1)

    bool contains(double y) const { return std::abs(y - center) <= half_width; }
    double width() const { return 2.0 * half_width; }
};

// center o_hat, half-width z * sqrt((1 - o_hat^2) / N): the shot-noise
// confidence interval for an N-shot +-1 observable estimate
PredictionInterval quantum_interval(double o_hat, long n_shots, double level);

// mean +- z * sqrt(variance)
PredictionInterval gaussian_interval(double mean, double variance, double level);

// fraction of truths inside their interval; throws on length mismatch or
// empty input
double coverage(std::span<const PredictionInterval> intervals, std::span<const double> truths);

// mean of full (2 * half_width) interval widths
double mean_width(std::span<const PredictionInterval> intervals);

/*
 * A predictive distribution reduced to what interval construction needs:
 * either a Gaussian (center, sigma) or a shot record (o_hat, N). Used by
 * calibration_report so one code path scores every method.
 */
struct PredictiveSource {
    enum class Kind { gaussian, quantum };

    Kind kind;
    double center;
    double sigma;  // gaussian only
    long n_shots;  // quantum only

    static PredictiveSource gaussian(double mean, double sigma);
    static PredictiveSource shots(double o_hat, long n_shots);

    PredictionInterval interval(double level) const;
};

struct CalibrationReport {
    std::vector<double> levels;    // nominal confidence levels, strictly increasing
    std::vector<double> empirical; // observed coverage per level
    std::vector<long> counts;      // evaluation points per level
    double ece;

    // Sum_b (n_b / N) |empirical_b - level_b| with N = sum of counts;
    // must reproduce the stored ece bit-for-bit aside from rounding.
    double recompute_ece() const;
};

// Symmetric central intervals at each level, equal weight per level.
CalibrationReport calibration_report(std::span<const PredictiveSource> predictive,
                                     std::span<const double> truths,
                                     std::span<const double> levels);

// the (nominal, empirical) pairs for plotting against the diagonal
std::vector<std::pair<double, double>> reliability_curve(const CalibrationReport& report);

// 0.05, 0.10, ..., 0.95
std::vector<double> default_levels();

struct InfoBudget {
    enum class Method { quantum, mc_dropout, ensemble };

    Method method;
    int n_qubits = 0;      // quantum
    long n_shots = 0;      // quantum
    long passes = 0;       // mc_dropout (T)
    long members = 0;      // ensemble (M)
    long evaluations = 1;

    static InfoBudget quantum(int n_qubits, long n_shots, long evaluations = 1);
    static InfoBudget mc_dropout(long passes, long evaluations = 1);
    static InfoBudget ensemble(long members, long evaluations = 1);
};

// bits of information about the prediction per evaluation:
// quantum n*log2(N+1), dropout log2(T), ensemble log2(M)
double info_bits(const InfoBudget& budget);

// CSV serialization: one row per level, header "level,empirical,count"
std::string report_to_csv(const CalibrationReport& report);
CalibrationReport report_from_csv(std::string_view csv);

} // namespace bornuq::uq

#endif
