#pragma once

#include <vector>

#include "spde/heat_kernel.hpp"
#include "spde/solver.hpp"

namespace spde {

/// eta(t,x) = int_0^t int_0^1 G_{t-s}(x,y) sigma(s,y,u(s,y)) W(dyds) along a
/// trajectory, evaluated at the trajectory's sample times, plus the running
/// sup eta* = sup_{(s,x), s<=t} |eta(s,x)|.
struct StochasticConvolution {
    std::vector<TimedField> eta;
    std::vector<double> eta_star_series; // aligned with eta; nondecreasing
    double eta_star = 0.0;
};

/// Recompute eta by replaying the trajectory's noise stream and coefficient
/// evaluations; nothing is read from stored panels. The kernel's mode count
/// must fit the trajectory grid (n_modes <= n_cells/2).
StochasticConvolution stochastic_convolution(const Trajectory& traj,
                                             const GreenKernel& kernel);

/// Max over sample times of |u(t) - (G_t f + J(kappa b) - J_dy(kappa g) + eta)|_H,
/// the defect in the integral (Duhamel) form of the equation. The drift terms
/// use the same gated, possibly mollified evaluations the solver used.
double mild_residual(const Trajectory& traj, const GreenKernel& kernel);

/// Per-sample energy split u = v + eta with eta from the replayed convolution.
EnergyRecord energy_record(const Trajectory& traj, const GreenKernel& kernel);

} // namespace spde
