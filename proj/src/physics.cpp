#include "bornuq/physics.hpp"

#include <cmath>
#include <stdexcept>

namespace bornuq::physics {

std::vector<double> normalized_input(const Domain& domain, double x, double t) {
    return {2.0 * (x - domain.x_min) / (domain.x_max - domain.x_min) - 1.0,
            2.0 * (t - domain.t_min) / (domain.t_max - domain.t_min) - 1.0};
}

void PdeTask::validate() const {
    if (!(diffusivity > 0.0))
        throw std::invalid_argument("PdeTask: diffusivity must be > 0");
    if (!(domain.x_max > domain.x_min) || !(domain.t_max > domain.t_min))
        throw std::invalid_argument("PdeTask: empty domain");
    for (const Point& p : collocation)
        if (!domain.strictly_inside(p.x, p.t))
            throw std::invalid_argument("PdeTask: collocation point on or outside the boundary");
    for (const Sample& s : samples)
        if (!domain.contains(s.x, s.t))
            throw std::invalid_argument("PdeTask: labeled sample outside the domain");
}

void LossSpec::validate() const {
    if (!(lambda_physics >= 0.0))
        throw std::invalid_argument("LossSpec: lambda_physics must be >= 0");
    if (!(data_weight > 0.0))
        throw std::invalid_argument("LossSpec: data_weight must be > 0");
}

namespace {

PdeTask make_task(PdeKind kind, double diffusivity, double initial_sign) {
    PdeTask task;
    task.kind = kind;
    task.diffusivity = diffusivity;
    task.domain = Domain{};

    // 8x8 uniform interior grid, margins well clear of the stencil step
    const int grid = 8;
    for (int i = 1; i <= grid; ++i) {
        const double x = task.domain.x_min +
                         (task.domain.x_max - task.domain.x_min) * i / (grid + 1.0);
        for (int j = 1; j <= grid; ++j) {
            const double t = task.domain.t_min +
                             (task.domain.t_max - task.domain.t_min) * j / (grid + 1.0);
            task.collocation.push_back({x, t});
        }
    }

    // 16 initial samples u(x, 0), 8 per boundary at u(+-1, t) = 0
    for (int i = 0; i < 16; ++i) {
        const double x = -1.0 + 2.0 * i / 15.0;
        task.samples.push_back({x, 0.0, initial_sign * std::sin(M_PI * x)});
    }
    for (int j = 0; j < 8; ++j) {
        const double t = j / 7.0;
        task.samples.push_back({-1.0, t, 0.0});
        task.samples.push_back({1.0, t, 0.0});
    }

    task.validate();
    return task;
}

} // namespace

PdeTask make_heat_task(double alpha) {
    return make_task(PdeKind::heat, alpha, +1.0);
}

PdeTask make_burgers_task(double nu) {
    return make_task(PdeKind::burgers, nu, -1.0);
}

Surface make_surface(const vqc::VqcModel& model, const Domain& domain) {
    model.validate();
    return [model, domain](double x, double t) {
        return vqc::predict_exact(model, normalized_input(domain, x, t)).mean;
    };
}

SurrogateDerivs surrogate_derivs(const Surface& u, const Domain& domain, Point p, double h) {
    if (!(h > 0.0))
        throw std::invalid_argument("surrogate_derivs: h must be > 0");
    if (!domain.contains(p.x - h, p.t) || !domain.contains(p.x + h, p.t) ||
        !domain.contains(p.x, p.t - h) || !domain.contains(p.x, p.t + h))
        throw std::invalid_argument("surrogate_derivs: stencil leaves the domain");

    const double uc = u(p.x, p.t);
    const double uxp = u(p.x + h, p.t);
    const double uxm = u(p.x - h, p.t);
    const double utp = u(p.x, p.t + h);
    const double utm = u(p.x, p.t - h);

    SurrogateDerivs d;
    d.u = uc;
    d.u_t = (utp - utm) / (2.0 * h);
    d.u_x = (uxp - uxm) / (2.0 * h);
    d.u_xx = (uxp - 2.0 * uc + uxm) / (h * h);
    return d;
}

SurrogateDerivs surrogate_derivs(const vqc::VqcModel& model, const Domain& domain, Point p,
                                 double h) {
    return surrogate_derivs(make_surface(model, domain), domain, p, h);
}

namespace {

double residual_from_derivs(const PdeTask& task, const SurrogateDerivs& d) {
    switch (task.kind) {
    case PdeKind::heat:
        return d.u_t - task.diffusivity * d.u_xx;
    case PdeKind::burgers:
        return d.u_t + d.u * d.u_x - task.diffusivity * d.u_xx;
    }
    throw std::logic_error("pde_residual: unknown kind");
}

} // namespace

double pde_residual(const Surface& u, const PdeTask& task, Point p, double h) {
    return residual_from_derivs(task, surrogate_derivs(u, task.domain, p, h));
}

double pde_residual(const vqc::VqcModel& model, const PdeTask& task, Point p, double h) {
    return pde_residual(make_surface(model, task.domain), task, p, h);
}

Dataset task_dataset(const PdeTask& task) {
    Dataset data;
    for (const Sample& s : task.samples)
        data.add(normalized_input(task.domain, s.x, s.t), s.u);
    return data;
}

double physics_loss(const vqc::VqcModel& model, const PdeTask& task, const LossSpec& spec,
                    const Dataset& dataset, double h) {
    spec.validate();
    task.validate();
    dataset.validate();
    if (dataset.empty())
        throw std::invalid_argument("physics_loss: empty dataset");

    double mse = 0.0;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const double err = vqc::predict_exact(model, dataset.inputs[i]).mean - dataset.targets[i];
        mse += err * err;
    }
    mse /= static_cast<double>(dataset.size());

    double penalty = 0.0;
    if (spec.lambda_physics > 0.0) {
        if (task.collocation.empty())
            throw std::invalid_argument("physics_loss: no collocation points");
        const Surface u = make_surface(model, task.domain);
        for (const Point& p : task.collocation) {
            const double r = pde_residual(u, task, p, h);
            penalty += r * r;
        }
        penalty /= static_cast<double>(task.collocation.size());
    }

    return spec.data_weight * mse + spec.lambda_physics * penalty;
}

ReferenceSolution::ReferenceSolution(const PdeTask& task)
    : kind_(task.kind), diffusivity_(task.diffusivity), domain_(task.domain) {
    if (kind_ == PdeKind::heat)
        return;

    // Burgers: explicit FTCS integration of u_t = -u u_x + nu u_xx on a
    // fine grid, storing every k-th slice for linear interpolation in t.
    nx_ = 513;
    const double dx = (domain_.x_max - domain_.x_min) / (nx_ - 1);
    const double dt_limit = 0.4 * dx * dx / (2.0 * diffusivity_);
    const double span = domain_.t_max - domain_.t_min;
    long n_steps = static_cast<long>(std::ceil(span / std::min(dt_limit, 0.25 * dx)));
    const double dt = span / static_cast<double>(n_steps);
    const long store_every = std::max(1L, n_steps / 1000);

    std::vector<double> u(nx_), next(nx_);
    for (int i = 0; i < nx_; ++i)
        u[i] = -std::sin(M_PI * (domain_.x_min + i * dx));
    u.front() = u.back() = 0.0;

    dt_store_ = dt * static_cast<double>(store_every);
    slices_.push_back(u);
    for (long s = 1; s <= n_steps; ++s) {
        for (int i = 1; i + 1 < nx_; ++i) {
            const double adv = u[i] * (u[i + 1] - u[i - 1]) / (2.0 * dx);
            const double diff = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (dx * dx);
            next[i] = u[i] + dt * (diffusivity_ * diff - adv);
        }
        next.front() = next.back() = 0.0;
        u.swap(next);
        if (s % store_every == 0)
            slices_.push_back(u);
    }
    // make sure the final time is covered even when n_steps is not a
    // multiple of store_every
    if ((n_steps % store_every) != 0)
        slices_.push_back(u);
}

double ReferenceSolution::value(double x, double t) const {
    if (!domain_.contains(x, t))
        throw std::invalid_argument("ReferenceSolution: point outside the domain");
    if (kind_ == PdeKind::heat)
        return std::exp(-diffusivity_ * M_PI * M_PI * (t - domain_.t_min)) * std::sin(M_PI * x);

    const double dx = (domain_.x_max - domain_.x_min) / (nx_ - 1);
    const double fx = (x - domain_.x_min) / dx;
    int ix = static_cast<int>(fx);
    if (ix >= nx_ - 1)
        ix = nx_ - 2;
    const double wx = fx - ix;

    const double ft = (t - domain_.t_min) / dt_store_;
    int it = static_cast<int>(ft);
    const int last = static_cast<int>(slices_.size()) - 1;
    if (it >= last)
        it = last - 1;
    const double wt = std::min(ft - it, 1.0);

    const auto& s0 = slices_[it];
    const auto& s1 = slices_[it + 1];
    const double v0 = (1.0 - wx) * s0[ix] + wx * s0[ix + 1];
    const double v1 = (1.0 - wx) * s1[ix] + wx * s1[ix + 1];
    return (1.0 - wt) * v0 + wt * v1;
}

} // namespace bornuq::physics
