#ifndef BORNUQ_BASELINES_HPP
#define BORNUQ_BASELINES_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bornuq/dataset.hpp"
#include "bornuq/rng.hpp"

namespace bornuq::baselines {

/*
 * Small dense feedforward networks, trained with hand-rolled full-batch
 * backprop. Hidden layers are tanh, the output layer is linear. Two
 * output heads are used by ensemble members: (mu, s) with predictive
 * variance softplus(s) + variance floor.
 */

inline constexpr double variance_floor = 1e-6;

struct DenseNet {
    std::vector<int> widths;                    // {in, hidden..., out}
    std::vector<std::vector<double>> weights;   // [layer][out * in], row-major
    std::vector<std::vector<double>> biases;    // [layer][out]

    int input_dim() const { return widths.front(); }
    int output_dim() const { return widths.back(); }
    int layer_count() const { return static_cast<int>(widths.size()) - 1; }
    std::size_t parameter_count() const;
    void validate() const;
};

// weights ~ normal(0, 1/sqrt(fan_in)), biases 0
DenseNet make_net(const std::vector<int>& widths, rng::Stream& rng);

// deterministic forward pass (dropout off)
std::vector<double> forward(const DenseNet& net, std::span<const double> x);

// Dropout masks on hidden activations, one Bernoulli(keep) decision per
// unit, inverted scaling by 1/keep. Masks are stored flat per hidden
// layer; empty mask vector means "no dropout".
using DropoutMasks = std::vector<std::vector<double>>;
DropoutMasks sample_masks(const DenseNet& net, double dropout_rate, rng::Stream& rng);
std::vector<double> forward_masked(const DenseNet& net, std::span<const double> x,
                                   const DropoutMasks& masks);

enum class LossKind { mse, gaussian_nll };

struct NetGrads {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;
};

// Loss for one sample plus parameter gradients, dropout masks honored.
// MSE nets use output 0 only; NLL nets read (mu, s) from a 2-unit head.
double backprop(const DenseNet& net, std::span<const double> x, double target, LossKind loss,
                const DropoutMasks& masks, NetGrads& grads);

struct NetTrainConfig {
    double step = 0.02;
    double momentum = 0.9;
    int epochs = 2000;
    LossKind loss = LossKind::mse;
    double dropout_rate = 0.0; // masks resampled per sample per epoch
};

class NetTrainingError : public std::runtime_error {
public:
    NetTrainingError(const std::string& what, int epoch)
        : std::runtime_error(what + " at epoch " + std::to_string(epoch)), epoch_(epoch) {}
    int epoch() const { return epoch_; }

private:
    int epoch_;
};

DenseNet train_net(DenseNet net, const Dataset& data, const NetTrainConfig& config,
                   rng::Stream& rng);

struct McDropoutResult {
    double mean;
    double variance; // unbiased, 1/(T-1)
    std::vector<double> samples;
};

// T stochastic forward passes with dropout active at inference
McDropoutResult mc_dropout_predict(const DenseNet& net, std::span<const double> x, int passes,
                                   double dropout_rate, rng::Stream& rng);

struct MeanVar {
    double mean;
    double variance;
};

// (mu, sigma^2) from a two-output head
MeanVar member_predict(const DenseNet& net, std::span<const double> x);

struct EnsembleModel {
    std::vector<DenseNet> members; // >= 2, two-output heads
    void validate() const;
};

// M members differing only in initialization stream, trained with the
// Gaussian NLL loss
EnsembleModel train_ensemble(int members, const std::vector<int>& hidden_widths, int input_dim,
                             const Dataset& data, const NetTrainConfig& config, rng::Stream& rng);

// moment matching: mu* = mean(mu_m), sigma*^2 = mean(sigma_m^2 + mu_m^2) - mu*^2
MeanVar ensemble_predict(const EnsembleModel& ensemble, std::span<const double> x);

// plain-text save/load, same key-value family as the circuit models
std::string net_to_text(const DenseNet& net);
DenseNet net_from_text(std::string_view text);
std::string ensemble_to_text(const EnsembleModel& ensemble);
EnsembleModel ensemble_from_text(std::string_view text);

} // namespace bornuq::baselines

#endif
