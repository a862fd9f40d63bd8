#include "bornuq/train.hpp"

#include <cmath>

namespace bornuq::vqc {

namespace {

// Evaluation points (data + residual stencils) are fixed for the whole
// run, so their encoded states are prepared once and the per-epoch work
// is ansatz applications only.
class LossEvaluator {
public:
    LossEvaluator(const VqcModel& model, const Dataset& dataset, const physics::LossSpec& loss,
                  const physics::PdeTask* task, double h)
        : model_(model), loss_(loss), h_(h), work_(model.spec.n_qubits) {
        dataset.validate();
        if (dataset.empty())
            throw std::invalid_argument("train: empty dataset");
        loss_.validate();

        use_physics_ = loss_.lambda_physics > 0.0;
        if (use_physics_) {
            if (task == nullptr)
                throw std::invalid_argument("train: lambda_physics > 0 requires a task");
            task->validate();
            if (task->collocation.empty())
                throw std::invalid_argument("train: task has no collocation points");
            kind_ = task->kind;
            diffusivity_ = task->diffusivity;
        }

        targets_ = dataset.targets;
        for (const auto& x : dataset.inputs)
            encoded_.push_back(encode_state(model_, x));
        n_data_ = encoded_.size();

        if (use_physics_) {
            const physics::Domain& dom = task->domain;
            for (const physics::Point& p : task->collocation) {
                if (!dom.contains(p.x - h, p.t) || !dom.contains(p.x + h, p.t) ||
                    !dom.contains(p.x, p.t - h) || !dom.contains(p.x, p.t + h))
                    throw std::invalid_argument("train: residual stencil leaves the domain");
                // stencil order: center, x+h, x-h, t+h, t-h
                for (const physics::Point q : {physics::Point{p.x, p.t},
                                               physics::Point{p.x + h, p.t},
                                               physics::Point{p.x - h, p.t},
                                               physics::Point{p.x, p.t + h},
                                               physics::Point{p.x, p.t - h}})
                    encoded_.push_back(
                        encode_state(model_, physics::normalized_input(dom, q.x, q.t)));
            }
            n_colloc_ = task->collocation.size();
        }

        readout_qubits_ = model_.readout_qubits();
        values_.resize(encoded_.size());
        shift_plus_.assign(encoded_.size(), 0.0);
        shift_minus_.assign(encoded_.size(), 0.0);
        point_grads_.resize(encoded_.size());
    }

    std::size_t parameter_count() const { return model_.theta.size(); }

    // loss value only
    double loss_at(std::span<const double> theta) {
        evaluate_all(theta, values_);
        return assemble(values_);
    }

    // loss value and dloss/dtheta
    double loss_and_grad(std::span<const double> theta, std::vector<double>& grad) {
        evaluate_all(theta, values_);

        const std::size_t n_params = theta.size();
        std::vector<double> shifted(theta.begin(), theta.end());
        grad.assign(n_params, 0.0);
        for (std::size_t k = 0; k < n_params; ++k) {
            const double original = shifted[k];
            shifted[k] = original + M_PI_2;
            evaluate_all(shifted, shift_plus_);
            shifted[k] = original - M_PI_2;
            evaluate_all(shifted, shift_minus_);
            shifted[k] = original;
            for (std::size_t i = 0; i < point_grads_.size(); ++i)
                point_grads_[i] = 0.5 * (shift_plus_[i] - shift_minus_[i]);
            grad[k] = grad_component(values_, point_grads_);
        }
        return assemble(values_);
    }

private:
    void evaluate_all(std::span<const double> theta, std::vector<double>& out) {
        const double inv_count = 1.0 / static_cast<double>(readout_qubits_.size());
        for (std::size_t i = 0; i < encoded_.size(); ++i) {
            apply_ansatz(model_.spec, theta, encoded_[i], work_);
            double sum = 0.0;
            for (int q : readout_qubits_)
                sum += qsim::expectation_z(work_, q);
            out[i] = model_.readout.scale * sum * inv_count + model_.readout.offset;
        }
    }

    // residual of collocation block j from a vector of per-point values
    double residual(const std::vector<double>& v, std::size_t j, double& u_c, double& u_x) const {
        const std::size_t base = n_data_ + 5 * j;
        u_c = v[base];
        const double u_xp = v[base + 1], u_xm = v[base + 2];
        const double u_tp = v[base + 3], u_tm = v[base + 4];
        const double u_t = (u_tp - u_tm) / (2.0 * h_);
        const double u_xx = (u_xp - 2.0 * u_c + u_xm) / (h_ * h_);
        u_x = (u_xp - u_xm) / (2.0 * h_);
        if (kind_ == physics::PdeKind::heat)
            return u_t - diffusivity_ * u_xx;
        return u_t + u_c * u_x - diffusivity_ * u_xx;
    }

    double assemble(const std::vector<double>& v) const {
        double mse = 0.0;
        for (std::size_t i = 0; i < n_data_; ++i) {
            const double err = v[i] - targets_[i];
            mse += err * err;
        }
        mse /= static_cast<double>(n_data_);
        double total = loss_.data_weight * mse;

        if (use_physics_) {
            double penalty = 0.0;
            for (std::size_t j = 0; j < n_colloc_; ++j) {
                double u_c, u_x;
                const double r = residual(v, j, u_c, u_x);
                penalty += r * r;
            }
            total += loss_.lambda_physics * penalty / static_cast<double>(n_colloc_);
        }
        return total;
    }

    // dloss/dtheta_k given per-point values and per-point dvalue/dtheta_k
    double grad_component(const std::vector<double>& v, const std::vector<double>& g) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < n_data_; ++i)
            acc += loss_.data_weight * 2.0 * (v[i] - targets_[i]) * g[i] /
                   static_cast<double>(n_data_);

        if (use_physics_) {
            double pen = 0.0;
            for (std::size_t j = 0; j < n_colloc_; ++j) {
                double u_c, u_x;
                const double r = residual(v, j, u_c, u_x);

                const std::size_t base = n_data_ + 5 * j;
                const double g_c = g[base];
                const double g_xp = g[base + 1], g_xm = g[base + 2];
                const double g_tp = g[base + 3], g_tm = g[base + 4];
                const double g_t = (g_tp - g_tm) / (2.0 * h_);
                const double g_xx = (g_xp - 2.0 * g_c + g_xm) / (h_ * h_);
                double dr = g_t - diffusivity_ * g_xx;
                if (kind_ == physics::PdeKind::burgers)
                    dr += g_c * u_x + u_c * (g_xp - g_xm) / (2.0 * h_);
                pen += 2.0 * r * dr;
            }
            acc += loss_.lambda_physics * pen / static_cast<double>(n_colloc_);
        }
        return acc;
    }

    const VqcModel& model_;
    physics::LossSpec loss_;
    double h_;
    bool use_physics_ = false;
    physics::PdeKind kind_ = physics::PdeKind::heat;
    double diffusivity_ = 0.0;

    std::vector<qsim::StateVector> encoded_;
    std::vector<double> targets_;
    std::size_t n_data_ = 0;
    std::size_t n_colloc_ = 0;
    std::vector<int> readout_qubits_;

    qsim::StateVector work_;
    std::vector<double> values_, shift_plus_, shift_minus_, point_grads_;
};

} // namespace

TrainResult train(const VqcModel& initial, const Dataset& dataset, const physics::LossSpec& loss,
                  const physics::PdeTask* task, const OptimizerConfig& optimizer,
                  double stencil_h) {
    initial.validate();
    if (optimizer.epochs < 0)
        throw std::invalid_argument("train: epochs must be >= 0");
    if (!(optimizer.step > 0.0))
        throw std::invalid_argument("train: step must be > 0");

    LossEvaluator eval(initial, dataset, loss, task, stencil_h);

    TrainResult result;
    result.model = initial;
    result.loss_trace.reserve(optimizer.epochs + 1);

    std::vector<double> grad;
    std::vector<double> velocity(eval.parameter_count(), 0.0);
    for (int epoch = 0; epoch < optimizer.epochs; ++epoch) {
        const double value = eval.loss_and_grad(result.model.theta, grad);
        if (!std::isfinite(value))
            throw TrainingError("train: non-finite loss", epoch);
        result.loss_trace.push_back(value);
        for (std::size_t k = 0; k < velocity.size(); ++k) {
            velocity[k] = optimizer.momentum * velocity[k] - optimizer.step * grad[k];
            result.model.theta[k] += velocity[k];
        }
    }

    const double final_value = eval.loss_at(result.model.theta);
    if (!std::isfinite(final_value))
        throw TrainingError("train: non-finite loss", optimizer.epochs);
    result.loss_trace.push_back(final_value);
    return result;
}

TrainResult train(const VqcModel& initial, const Dataset& dataset,
                  const OptimizerConfig& optimizer) {
    physics::LossSpec data_only;
    data_only.lambda_physics = 0.0;
    return train(initial, dataset, data_only, nullptr, optimizer);
}

} // namespace bornuq::vqc
