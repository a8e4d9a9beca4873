#include "spde/field.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace spde {

double h_inner(const Field& a, const Field& b) {
    if (a.grid != b.grid) {
        throw std::invalid_argument("h_inner: mismatched grids");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.v.size(); ++i) acc += a.v[i] * b.v[i];
    return a.grid.dx() * acc;
}

double h_norm_sq(const Field& u) {
    double acc = 0.0;
    for (double x : u.v) acc += x * x;
    return u.grid.dx() * acc;
}

double h_norm(const Field& u) { return std::sqrt(h_norm_sq(u)); }

double sup_abs(const Field& u) {
    double m = 0.0;
    for (double x : u.v) m = std::max(m, std::abs(x));
    return m;
}

bool has_nonfinite(const Field& u) {
    for (double x : u.v) {
        if (!std::isfinite(x)) return true;
    }
    return false;
}

Field operator+(const Field& a, const Field& b) {
    Field r = a;
    for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] += b.v[i];
    return r;
}

Field operator-(const Field& a, const Field& b) {
    Field r = a;
    for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] -= b.v[i];
    return r;
}

Field operator*(double s, const Field& a) {
    Field r = a;
    for (double& x : r.v) x *= s;
    return r;
}

double h_distance(const Field& a, const Field& b) {
    if (a.grid != b.grid) {
        throw std::invalid_argument("h_distance: mismatched grids");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.v.size(); ++i) {
        const double d = a.v[i] - b.v[i];
        acc += d * d;
    }
    return std::sqrt(a.grid.dx() * acc);
}

double sine_mode(int n, double x) {
    return std::sqrt(2.0) * std::sin(static_cast<double>(n) * std::numbers::pi * x);
}

Field sine_mode_field(const SpatialGrid& grid, int n, double amplitude) {
    Field f(grid);
    for (int i = 1; i < grid.n_cells; ++i) f[i - 1] = amplitude * sine_mode(n, grid.x(i));
    return f;
}

double mode_coefficient(const Field& u, int n) {
    const SpatialGrid& g = u.grid;
    double acc = 0.0;
    for (int i = 1; i < g.n_cells; ++i) acc += sine_mode(n, g.x(i)) * u[i - 1];
    return g.dx() * acc;
}

Field field_from_modes(const SpatialGrid& grid, const std::vector<double>& coeffs) {
    Field f(grid);
    for (int n = 1; n <= static_cast<int>(coeffs.size()); ++n) {
        const double c = coeffs[static_cast<std::size_t>(n - 1)];
        if (c == 0.0) continue;
        for (int i = 1; i < grid.n_cells; ++i) f[i - 1] += c * sine_mode(n, grid.x(i));
    }
    return f;
}

} // namespace spde
