#pragma once

#include <span>
#include <vector>

#include "spde/field.hpp"
#include "spde/grid.hpp"

namespace spde {

/// Truncated eigen-expansion of the Dirichlet heat kernel on [0,1]:
///
///   G_t(x,y) = sum_{n<=N} 2 sin(n pi x) sin(n pi y) exp(-n^2 pi^2 t)
///
/// with eigenpairs lambda_n = n^2 pi^2, e_n(x) = sqrt(2) sin(n pi x).
/// The expansion diverges pointwise at t = 0, so evaluations require t > 0.
class GreenKernel {
public:
    explicit GreenKernel(int n_modes);

    /// Default mode count for a grid: n_cells / 2 keeps every retained mode
    /// resolvable (discretely orthonormal, alias-free).
    static GreenKernel for_grid(const SpatialGrid& grid);

    int n_modes() const { return n_modes_; }
    double eigenvalue(int n) const;           // lambda_n, 1-based
    double eigenfunction(int n, double x) const;

    /// G_t(x,y); throws std::domain_error for t <= 0.
    double value(double t, double x, double y) const;
    /// dG_t(x,y)/dy = sum_n 2 n pi sin(n pi x) cos(n pi y) exp(-lambda_n t).
    double dy(double t, double x, double y) const;
    /// dG_t/dt = A G evaluated spectrally (the heat identity's right side).
    double time_derivative(double t, double x, double y) const;

private:
    void require_positive(double t) const;
    int n_modes_;
};

/// Which kernel the convolution operator J integrates against.
enum class KernelKind { Gauss, GaussDy };

/// J(v)(t,x) = int_0^t int_0^1 H(r,t;x,y) v(r,y) dy dr with H = G_{t-r}
/// (Gauss) or d_y G_{t-r} (GaussDy).
///
/// v is a time-indexed sequence of fields, treated as piecewise constant in
/// time on its sample intervals. The computation runs in mode space where the
/// time factor exp(-lambda_n (t-r)) integrates in closed form per interval, so
/// the kernel's integrable singularity at r = t never has to be quadratured.
/// In space the pairing is the interior-node trapezoid rule (boundary rows
/// extend by zero, consistent with Dirichlet data).
Field apply_J(std::span<const TimedField> v, KernelKind kind, double t,
              const GreenKernel& kernel, const SpatialGrid& grid);

/// Incremental mode-space accumulator for kernel convolutions along a
/// trajectory. Maintains coefficients c_n(t) and supports exact decay
/// c_n -> c_n * exp(-lambda_n dt) plus per-step source terms. Used by the
/// stochastic convolution, the mild-form residual and the steering
/// diagnostics, all of which need J-type integrals at every sample time.
class ModeAccumulator {
public:
    ModeAccumulator(const GreenKernel& kernel, const SpatialGrid& grid, KernelKind kind);

    /// c_n += weight * <pairing_n, values>; pairing is e_n for Gauss and the
    /// cosine profile for GaussDy (the sin/cos split of the two kernels).
    void add_projected(std::span<const double> values, double weight);
    /// c_n += coeffs_n directly (already in mode space).
    void add_coefficients(std::span<const double> coeffs);
    /// Exact semigroup decay over a time step.
    void decay(double dt);
    /// Drift-style source over [s, s+dt] for piecewise-constant v:
    /// c_n += <pairing_n, v> * (1 - exp(-lambda_n dt)) / lambda_n,
    /// applied together with the decay of the existing coefficients.
    void step_with_source(std::span<const double> v, double dt);

    /// Render the field sum_n c_n * (mode weight) * sin(n pi x_i).
    Field render(double t_label) const;
    const std::vector<double>& coefficients() const { return coef_; }
    void reset();

private:
    const GreenKernel* kernel_;
    SpatialGrid grid_;
    KernelKind kind_;
    std::vector<double> coef_;
    std::vector<double> pairing_; // n_modes x interior pairing table
    std::vector<double> render_;  // n_modes x interior synthesis table
};

} // namespace spde
