#ifndef BORNUQ_TRAIN_HPP
#define BORNUQ_TRAIN_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "bornuq/dataset.hpp"
#include "bornuq/physics.hpp"
#include "bornuq/vqc.hpp"

namespace bornuq::vqc {

struct OptimizerConfig {
    double step = 0.05;
    double momentum = 0.9;
    int epochs = 500;
};

struct TrainResult {
    VqcModel model;
    // loss_trace[0] is the initial loss, loss_trace[e] the loss after e
    // updates; epochs + 1 entries in total
    std::vector<double> loss_trace;
};

class TrainingError : public std::runtime_error {
public:
    TrainingError(const std::string& what, int epoch)
        : std::runtime_error(what + " at epoch " + std::to_string(epoch)), epoch_(epoch) {}
    int epoch() const { return epoch_; }

private:
    int epoch_;
};

/*
 * Full-batch gradient descent with momentum on exact-mode predictions.
 * The gradient of every prediction is computed with the two-point
 * rotation shift rule; residual terms chain through the same
 * finite-difference stencils physics_loss uses. With
 * loss.lambda_physics == 0 the task is never touched and the run is
 * bit-identical to a plain data fit.
 *
 * `dataset` inputs are in model space. When lambda_physics > 0 a task is
 * required; its collocation points are normalized internally.
 */
TrainResult train(const VqcModel& initial, const Dataset& dataset, const physics::LossSpec& loss,
                  const physics::PdeTask* task, const OptimizerConfig& optimizer,
                  double stencil_h = physics::default_h);

// data-only convenience overload
TrainResult train(const VqcModel& initial, const Dataset& dataset,
                  const OptimizerConfig& optimizer);

} // namespace bornuq::vqc

#endif
