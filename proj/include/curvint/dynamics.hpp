#pragma once

#include <span>
#include <string>
#include <vector>

#include "curvint/observable.hpp"

namespace curvint {

enum class IntegratorMethod { ImplicitMidpoint, RK4 };

struct IntegratorConfig {
    IntegratorMethod method = IntegratorMethod::ImplicitMidpoint;
    double dt = 1e-3;
    long steps = 1000;
    double newton_tol = 1e-13;   // >= 1e-14
    int newton_max_iter = 25;
    long stride = 1;             // record every stride-th step
    double guard_delta = 1e-4;   // abort distance to chart singularities
};

enum class TrajectoryStatus { Completed, SingularityApproach, NewtonDivergence };

const char* to_string(TrajectoryStatus status);

/// Integration result: samples at stride boundaries plus per-monitor series.
/// On abort the prefix up to the last good step is retained.
struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states; // flattened phase points
    std::vector<std::string> monitor_names;
    std::vector<std::vector<double>> monitor_values; // [sample][monitor]
    TrajectoryStatus status = TrajectoryStatus::Completed;
    long steps_completed = 0;
};

/// (qdot, pdot) = (dH/dp, -dH/dq) from the exact dual-number gradient.
std::vector<double> hamiltonian_vector_field(const Observable& h, std::span<const double> s);

/// Second derivative matrix of an observable by nested dual passes.
void hessian(const Observable& h, std::span<const double> s, std::span<double> out_rowmajor);

/// Integrates Hamilton's equations for H from s0. The implicit midpoint rule
/// solves its stage equation by Newton iteration with the exact dual-number
/// Jacobian; RK4 is the classical four-stage scheme. Steps that approach a
/// chart singularity closer than guard_delta abort the run with the partial
/// trajectory.
Trajectory integrate(const SpaceSpec& spec, const Observable& h, const PhasePoint& s0,
                     const IntegratorConfig& cfg, std::span<const Observable> monitors = {});

} // namespace curvint
