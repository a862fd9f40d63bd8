#ifndef BORNUQ_PHYSICS_HPP
#define BORNUQ_PHYSICS_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bornuq/dataset.hpp"
#include "bornuq/vqc.hpp"

namespace bornuq::physics {

inline constexpr double default_h = 1e-2; // finite-difference step

struct Point {
    double x;
    double t;
};

struct Sample {
    double x;
    double t;
    double u;
};

struct Domain {
    double x_min = -1.0;
    double x_max = 1.0;
    double t_min = 0.0;
    double t_max = 1.0;

    bool contains(double x, double t) const {
        return x >= x_min && x <= x_max && t >= t_min && t <= t_max;
    }
    bool strictly_inside(double x, double t) const {
        return x > x_min && x < x_max && t > t_min && t < t_max;
    }
};

// maps physical (x, t) to the model input vector, components in [-1, 1]
std::vector<double> normalized_input(const Domain& domain, double x, double t);

enum class PdeKind { heat, burgers };

/*
 * One PDE benchmark instance:
 *   heat:    u_t = alpha u_xx,          u(x,0) = sin(pi x),  u(+-1,t) = 0
 *   burgers: u_t + u u_x = nu u_xx,     u(x,0) = -sin(pi x), u(+-1,t) = 0
 * `samples` hold the labeled boundary/initial data, `collocation` the
 * interior points where the residual penalty is evaluated.
 */
struct PdeTask {
    PdeKind kind = PdeKind::heat;
    double diffusivity = 0.1; // alpha (heat) or nu (burgers)
    Domain domain;
    std::vector<Point> collocation;
    std::vector<Sample> samples;

    void validate() const; // diffusivity > 0, collocation strictly inside
};

struct LossSpec {
    double lambda_physics = 1.0; // 0 recovers the plain data fit exactly
    double data_weight = 1.0;

    void validate() const;
};

// Standard desk-scale tasks: 64 collocation points on a uniform 8x8
// interior grid, 16 initial + 16 boundary labeled samples.
PdeTask make_heat_task(double alpha = 0.1);
PdeTask make_burgers_task(double nu = 0.05);

// Test seam: anything that maps physical (x, t) to a value can stand in
// for the trained surrogate.
using Surface = std::function<double(double x, double t)>;

// exact-mode model predictions through the domain normalization
Surface make_surface(const vqc::VqcModel& model, const Domain& domain);

struct SurrogateDerivs {
    double u;
    double u_t;
    double u_x;
    double u_xx;
};

// Central finite differences in physical coordinates:
//   u_t  = [u(x,t+h) - u(x,t-h)] / 2h
//   u_x  = [u(x+h,t) - u(x-h,t)] / 2h
//   u_xx = [u(x+h,t) - 2u + u(x-h,t)] / h^2
// Throws std::invalid_argument when the stencil leaves the domain.
SurrogateDerivs surrogate_derivs(const Surface& u, const Domain& domain, Point p, double h);
SurrogateDerivs surrogate_derivs(const vqc::VqcModel& model, const Domain& domain, Point p,
                                 double h = default_h);

// heat: u_t - alpha u_xx;  burgers: u_t + u u_x - nu u_xx
double pde_residual(const Surface& u, const PdeTask& task, Point p, double h);
double pde_residual(const vqc::VqcModel& model, const PdeTask& task, Point p,
                    double h = default_h);

// the task's labeled samples as a model-space dataset
Dataset task_dataset(const PdeTask& task);

// data_weight * MSE(dataset) + lambda_physics * mean collocation residual^2
double physics_loss(const vqc::VqcModel& model, const PdeTask& task, const LossSpec& spec,
                    const Dataset& dataset, double h = default_h);

/*
 * Ground truth for evaluation. Heat uses the closed-form decaying sine
 * mode; Burgers integrates a fine explicit finite-difference grid once at
 * construction and interpolates bilinearly.
 */
class ReferenceSolution {
public:
    explicit ReferenceSolution(const PdeTask& task);

    double value(double x, double t) const;

private:
    PdeKind kind_;
    double diffusivity_;
    Domain domain_;
    // burgers grid
    int nx_ = 0;
    double dt_store_ = 0.0;
    std::vector<std::vector<double>> slices_;
};

} // namespace bornuq::physics

#endif
