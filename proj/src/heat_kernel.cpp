#include "spde/heat_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spde {

namespace {
constexpr double kPi = std::numbers::pi;
}

GreenKernel::GreenKernel(int n_modes) : n_modes_(n_modes) {
    if (n_modes < 1) {
        throw std::invalid_argument("GreenKernel: need at least one mode");
    }
}

GreenKernel GreenKernel::for_grid(const SpatialGrid& grid) {
    return GreenKernel(grid.n_cells / 2);
}

double GreenKernel::eigenvalue(int n) const {
    const double w = static_cast<double>(n) * kPi;
    return w * w;
}

double GreenKernel::eigenfunction(int n, double x) const {
    return std::sqrt(2.0) * std::sin(static_cast<double>(n) * kPi * x);
}

void GreenKernel::require_positive(double t) const {
    if (!(t > 0.0)) {
        throw std::domain_error("GreenKernel: kernel is singular at t <= 0");
    }
}

double GreenKernel::value(double t, double x, double y) const {
    require_positive(t);
    double acc = 0.0;
    for (int n = 1; n <= n_modes_; ++n) {
        const double w = static_cast<double>(n) * kPi;
        acc += 2.0 * std::sin(w * x) * std::sin(w * y) * std::exp(-w * w * t);
    }
    return acc;
}

double GreenKernel::dy(double t, double x, double y) const {
    require_positive(t);
    double acc = 0.0;
    for (int n = 1; n <= n_modes_; ++n) {
        const double w = static_cast<double>(n) * kPi;
        acc += 2.0 * w * std::sin(w * x) * std::cos(w * y) * std::exp(-w * w * t);
    }
    return acc;
}

double GreenKernel::time_derivative(double t, double x, double y) const {
    require_positive(t);
    double acc = 0.0;
    for (int n = 1; n <= n_modes_; ++n) {
        const double w = static_cast<double>(n) * kPi;
        acc += -w * w * 2.0 * std::sin(w * x) * std::sin(w * y) * std::exp(-w * w * t);
    }
    return acc;
}

ModeAccumulator::ModeAccumulator(const GreenKernel& kernel, const SpatialGrid& grid,
                                 KernelKind kind)
    : kernel_(&kernel), grid_(grid), kind_(kind) {
    const int N = kernel.n_modes();
    const int m = grid.interior();
    coef_.assign(static_cast<std::size_t>(N), 0.0);
    pairing_.resize(static_cast<std::size_t>(N) * static_cast<std::size_t>(m));
    render_.resize(static_cast<std::size_t>(N) * static_cast<std::size_t>(m));
    for (int n = 1; n <= N; ++n) {
        const double w = static_cast<double>(n) * kPi;
        for (int i = 1; i <= m; ++i) {
            const double xi = grid.x(i);
            const std::size_t idx =
                static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(m) +
                static_cast<std::size_t>(i - 1);
            if (kind_ == KernelKind::Gauss) {
                // G = sum_n [sqrt2 sin(n pi x)] [sqrt2 sin(n pi y)] e^{-lambda t}
                pairing_[idx] = std::sqrt(2.0) * std::sin(w * xi);
                render_[idx] = std::sqrt(2.0) * std::sin(w * xi);
            } else {
                // d_y G = sum_n [2 n pi sin(n pi x)] [cos(n pi y)] e^{-lambda t}
                pairing_[idx] = std::cos(w * xi);
                render_[idx] = 2.0 * w * std::sin(w * xi);
            }
        }
    }
}

void ModeAccumulator::reset() {
    std::fill(coef_.begin(), coef_.end(), 0.0);
}

void ModeAccumulator::add_projected(std::span<const double> values, double weight) {
    const int N = kernel_->n_modes();
    const int m = grid_.interior();
    const double dx = grid_.dx();
    for (int n = 0; n < N; ++n) {
        const double* row = &pairing_[static_cast<std::size_t>(n) * static_cast<std::size_t>(m)];
        double acc = 0.0;
        for (int i = 0; i < m; ++i) acc += row[i] * values[static_cast<std::size_t>(i)];
        coef_[static_cast<std::size_t>(n)] += weight * dx * acc;
    }
}

void ModeAccumulator::add_coefficients(std::span<const double> coeffs) {
    for (std::size_t n = 0; n < coef_.size() && n < coeffs.size(); ++n) {
        coef_[n] += coeffs[n];
    }
}

void ModeAccumulator::decay(double dt) {
    const int N = kernel_->n_modes();
    for (int n = 1; n <= N; ++n) {
        coef_[static_cast<std::size_t>(n - 1)] *= std::exp(-kernel_->eigenvalue(n) * dt);
    }
}

void ModeAccumulator::step_with_source(std::span<const double> v, double dt) {
    const int N = kernel_->n_modes();
    const int m = grid_.interior();
    const double dx = grid_.dx();
    for (int n = 1; n <= N; ++n) {
        const double lambda = kernel_->eigenvalue(n);
        const double decay = std::exp(-lambda * dt);
        const double* row =
            &pairing_[static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(m)];
        double acc = 0.0;
        for (int i = 0; i < m; ++i) acc += row[i] * v[static_cast<std::size_t>(i)];
        const std::size_t k = static_cast<std::size_t>(n - 1);
        coef_[k] = coef_[k] * decay + dx * acc * (1.0 - decay) / lambda;
    }
}

Field ModeAccumulator::render(double t_label) const {
    const int N = kernel_->n_modes();
    const int m = grid_.interior();
    Field out(grid_, t_label);
    for (int n = 0; n < N; ++n) {
        const double c = coef_[static_cast<std::size_t>(n)];
        if (c == 0.0) continue;
        const double* row = &render_[static_cast<std::size_t>(n) * static_cast<std::size_t>(m)];
        for (int i = 0; i < m; ++i) out[i] += c * row[i];
    }
    return out;
}

Field apply_J(std::span<const TimedField> v, KernelKind kind, double t,
              const GreenKernel& kernel, const SpatialGrid& grid) {
    if (v.empty()) {
        throw std::domain_error("apply_J: empty input path");
    }
    for (const TimedField& s : v) {
        if (s.u.grid != grid) throw std::invalid_argument("apply_J: grid mismatch");
    }
    ModeAccumulator acc(kernel, grid, kind);
    const int N = kernel.n_modes();
    const int m = grid.interior();
    const double dx = grid.dx();
    std::vector<double> coeffs(static_cast<std::size_t>(N), 0.0);

    // Exact product integration: for v constant on [a,b] the mode-n time
    // factor contributes (e^{-lambda (t-b)} - e^{-lambda (t-a)}) / lambda.
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double a = v[j].t;
        double b = (j + 1 < v.size()) ? v[j + 1].t : t;
        if (a >= t) break;
        b = std::min(b, t);
        if (!(b > a)) continue;
        for (int n = 1; n <= N; ++n) {
            const double lambda = kernel.eigenvalue(n);
            const double tint = (std::exp(-lambda * (t - b)) - std::exp(-lambda * (t - a))) / lambda;
            double proj = 0.0;
            const double w = static_cast<double>(n) * kPi;
            for (int i = 1; i <= m; ++i) {
                const double basis = (kind == KernelKind::Gauss)
                                         ? std::sqrt(2.0) * std::sin(w * grid.x(i))
                                         : std::cos(w * grid.x(i));
                proj += basis * v[j].u[i - 1];
            }
            coeffs[static_cast<std::size_t>(n - 1)] += dx * proj * tint;
        }
    }
    acc.add_coefficients(coeffs);
    return acc.render(t);
}

} // namespace spde
