#ifndef BORNUQ_VQC_HPP
#define BORNUQ_VQC_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bornuq/qsim.hpp"
#include "bornuq/rng.hpp"

namespace bornuq::vqc {

/*
 * Hardware-efficient ansatz: per layer, one RY and one RZ rotation on
 * every qubit followed by a nearest-neighbor CNOT chain (control q,
 * target q+1). Parameter layout, fixed for save/load and gradients:
 *   theta[(layer * n_qubits + qubit) * 2 + 0] -> RY angle
 *   theta[(layer * n_qubits + qubit) * 2 + 1] -> RZ angle
 */

enum class Entangler { cnot_chain };

struct AnsatzSpec {
    int n_qubits = 4;
    int n_layers = 3;
    Entangler entangler = Entangler::cnot_chain;

    int parameter_count() const { return 2 * n_qubits * n_layers; }
    void validate() const; // throws std::invalid_argument
};

// Prediction = scale * mean(<Z_q> over qubits) + offset. An empty qubit
// list means "all qubits".
struct Readout {
    std::vector<int> qubits;
    double scale = 1.0;
    double offset = 0.0;
};

struct VqcModel {
    AnsatzSpec spec;
    std::vector<double> theta;
    double encoding_scale = M_PI; // inputs are expected pre-normalized to [-1, 1]
    Readout readout;

    void validate() const;
    std::vector<int> readout_qubits() const; // resolves the empty-means-all default
};

// theta ~ uniform(-init_range, init_range)
VqcModel random_model(const AnsatzSpec& spec, rng::Stream& rng, double init_range = 0.4,
                      double encoding_scale = M_PI);

// Angle encoding: one RY(encoding_scale * x[i mod x.size()]) per qubit i.
// Throws on empty or non-finite input.
std::vector<qsim::Gate> encode(const AnsatzSpec& spec, double encoding_scale,
                               std::span<const double> x);

// |0..0> with the encoding applied; reusable across theta values
qsim::StateVector encode_state(const VqcModel& model, std::span<const double> x);

// copies `encoded` into `work` and applies the ansatz with the given theta
void apply_ansatz(const AnsatzSpec& spec, std::span<const double> theta,
                  const qsim::StateVector& encoded, qsim::StateVector& work);

double readout_value(const VqcModel& model, const qsim::StateVector& prepared);

struct Prediction {
    double mean;
    double variance;             // 0 in exact mode
    std::optional<long> n_shots; // absent in exact mode
};

Prediction predict_exact(const VqcModel& model, std::span<const double> x);

// Samples each readout qubit's Z marginal with n_shots Born-rule draws,
// averages the per-qubit shot means, and attaches the shot-noise variance
// (1 - m^2)/N of the clamped aggregate m.
Prediction predict_shots(const VqcModel& model, std::span<const double> x, long n_shots,
                         rng::Stream& rng);

// d(exact prediction)/d(theta_k) for every parameter, by the two-point
// rotation shift rule f(theta_k + pi/2) - f(theta_k - pi/2)) / 2
std::vector<double> prediction_grad(const VqcModel& model, std::span<const double> x);

// chain rule into a scalar loss: grad_k = dloss_dmean(y) * dy/dtheta_k
// where y is the exact prediction at x
std::vector<double> parameter_shift_grad(const VqcModel& model, std::span<const double> x,
                                         const std::function<double(double)>& dloss_dmean);

// Plain-text key-value model files (decimal floats, exact round-trip).
std::string model_to_text(const VqcModel& model);
VqcModel model_from_text(std::string_view text);
void save_model(const VqcModel& model, const std::string& path);
VqcModel load_model(const std::string& path);

} // namespace bornuq::vqc

#endif
