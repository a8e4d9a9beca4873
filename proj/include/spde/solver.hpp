#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spde/coefficients.hpp"
#include "spde/field.hpp"
#include "spde/grid.hpp"
#include "spde/rng.hpp"

namespace spde {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical blow-up is a first-class outcome, not a crash: the error carries
/// the last finite state and the time it was reached.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(Field last_state, double t)
        : std::runtime_error("solution left the floating-point range at t = " +
                             std::to_string(t)),
          last_finite_state(std::move(last_state)),
          t_blowup(t) {}

    Field last_finite_state;
    double t_blowup;
};

/// External forcing hook: fills `add` (interior nodes) with a drift that is
/// added to the explicit part of the step at time s. Used by the steering
/// controller.
using DriftHook = std::function<void(double s, std::vector<double>& add)>;

/// Everything a run needs. Deterministic: a trajectory is a pure function of
/// this struct.
struct SimConfig {
    SpatialGrid grid{64};
    double dt = 1e-3;
    double horizon = 1.0;
    int save_every = 1;

    std::shared_ptr<const CoefficientSet> coeffs;
    std::optional<double> trunc_R;    // truncation gate level (squared H-norm)
    std::optional<int> mollify_n;     // evolve with mollified coefficients
    double mollify_table_halfwidth = 64.0;

    Field initial; // empty -> zero initial condition

    std::uint64_t seed = 0;
    std::uint32_t stream_id = 0;

    bool drift_b_enabled = true; // steering's free phase switches b off

    std::vector<double> exit_levels; // record tau_R at step resolution

    DriftHook drift_hook;    // active on (hook_start, hook_end]
    double hook_start = 0.0;
    double hook_end = 0.0;

    /// Hard validation errors throw ConfigError; advisory findings (e.g. the
    /// convective CFL suggestion dt <= c_cfl dx^2 for the burgers preset) are
    /// returned as warnings.
    std::vector<std::string> validate() const;

    int steps() const;
    static constexpr double kCflDefault = 0.25;
};

/// A simulated path: thinned samples, observable time series aligned with
/// them, exit times at the requested levels, and the provenance needed to
/// replay the noise bit-for-bit.
struct Trajectory {
    SimConfig cfg; // snapshot used to produce the run (hooks included)
    std::vector<TimedField> samples;
    std::map<std::string, std::vector<double>> observables;
    std::map<double, double> exit_times; // level -> first crossing (inf if none)

    const SpatialGrid& grid() const { return cfg.grid; }
    const std::vector<double>& observable(const std::string& name) const;
    double final_time() const { return samples.empty() ? 0.0 : samples.back().t; }
};

/// Per-sample energy bookkeeping for u and v = u - eta.
struct EnergyRecord {
    std::vector<double> t;
    std::vector<double> u_norm_sq;
    std::vector<double> v_norm_sq;
    std::vector<double> eta_star; // running sup of |eta|
};

/// One semi-implicit Euler-Maruyama step: implicit diffusion (tridiagonal
/// solve of I - dt*A_h), explicit gated reaction dt*kappa*b, explicit
/// conservative flux difference of kappa*g, noise sigma(u) dW/dx. The gate
/// value is evaluated by the caller from the state at the start of the step.
Field step(const Field& state, const SimConfig& cfg, const NoiseIncrement& noise,
           double gate_value);

/// Run the full trajectory described by cfg. Throws BlowUpError if the state
/// leaves the floating range, ConfigError on invalid configuration.
Trajectory simulate(const SimConfig& cfg);

/// First sample time with |u|^2_H >= R, or +infinity. Works on the sampled
/// series (step-resolution crossings are recorded via cfg.exit_levels).
double exit_time(const Trajectory& traj, double R);

/// Low-level stepping engine shared by the solver, the replay machinery and
/// the tangent process. Exposed so diagnostics can re-run a trajectory step
/// by step without paying the sampling overhead.
class Stepper {
public:
    explicit Stepper(const SimConfig& cfg);

    void set_state(const Field& f);
    const std::vector<double>& state() const { return u_; }
    double time() const { return t_; }
    std::uint64_t step_index() const { return k_; }
    double state_norm_sq() const;

    /// Advance one step; samples its own noise from the configured stream.
    /// Returns the gate value that was applied.
    double advance();

    /// The noise panel consumed by the last advance() (raw increments).
    const std::vector<double>& last_noise() const { return dW_; }
    double gate_value(double norm_sq) const;
    double gate_slope(double norm_sq) const;

    // Coefficient evaluations routed through the mollifier when configured.
    double eval_b(double t, double x, double r) const;
    double eval_g(double t, double x, double r) const;
    double eval_sigma(double t, double x, double r) const;
    const MollifiedCoefficients* mollified() const { return moll_.get(); }

    const SimConfig& config() const { return cfg_; }

private:
    void solve_diffusion(std::vector<double>& w);

    SimConfig cfg_;
    TruncationGate gate_;
    std::shared_ptr<const MollifiedCoefficients> moll_;
    std::vector<double> u_, w_, dW_, flux_, hook_buf_;
    double t_ = 0.0;
    std::uint64_t k_ = 0;
    double mu_ = 0.0;
};

} // namespace spde
