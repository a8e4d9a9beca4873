#include "spde/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spde {

namespace {

// Thomas algorithm for (I - dt A_h) w = rhs with the constant stencil
// (-mu, 1+2mu, -mu); rhs is overwritten with the solution.
void thomas_solve(double mu, std::vector<double>& rhs) {
    const int m = static_cast<int>(rhs.size());
    const double diag = 1.0 + 2.0 * mu;
    static thread_local std::vector<double> c;
    c.resize(static_cast<std::size_t>(m));
    double denom = diag;
    c[0] = -mu / denom;
    rhs[0] /= denom;
    for (int i = 1; i < m; ++i) {
        denom = diag + mu * c[static_cast<std::size_t>(i - 1)];
        c[static_cast<std::size_t>(i)] = -mu / denom;
        rhs[static_cast<std::size_t>(i)] =
            (rhs[static_cast<std::size_t>(i)] + mu * rhs[static_cast<std::size_t>(i - 1)]) / denom;
    }
    for (int i = m - 2; i >= 0; --i) {
        rhs[static_cast<std::size_t>(i)] -=
            c[static_cast<std::size_t>(i)] * rhs[static_cast<std::size_t>(i + 1)];
    }
}

} // namespace

std::vector<std::string> SimConfig::validate() const {
    std::vector<std::string> warnings;
    if (!(dt > 0.0)) throw ConfigError("time.dt must be positive");
    if (!(horizon >= dt)) throw ConfigError("time.T must be at least dt");
    if (grid.n_cells < 4) throw ConfigError("grid.n_cells must be >= 4");
    if (save_every < 1) throw ConfigError("time.save_every must be >= 1");
    if (!coeffs) throw ConfigError("coefficients are required");
    if (trunc_R && !(*trunc_R > 0.0)) throw ConfigError("truncation.R must be positive");
    if (mollify_n && *mollify_n < 1) throw ConfigError("truncation.mollify_n must be >= 1");
    if (!initial.v.empty() && initial.grid != grid) {
        throw ConfigError("initial condition grid does not match grid.n_cells");
    }
    if (coeffs->name() == "burgers") {
        const double dx = grid.dx();
        const double limit = kCflDefault * dx * dx;
        if (dt > limit) {
            warnings.push_back("burgers flux resolution: dt = " + std::to_string(dt) +
                               " exceeds c_cfl*dx^2 = " + std::to_string(limit));
        }
    }
    return warnings;
}

int SimConfig::steps() const {
    return static_cast<int>(std::llround(horizon / dt));
}

const std::vector<double>& Trajectory::observable(const std::string& name) const {
    auto it = observables.find(name);
    if (it == observables.end()) {
        throw std::out_of_range("Trajectory: unknown observable '" + name + "'");
    }
    return it->second;
}

Stepper::Stepper(const SimConfig& cfg)
    : cfg_(cfg),
      gate_(cfg.trunc_R ? TruncationGate(*cfg.trunc_R) : TruncationGate::disabled()) {
    cfg_.validate();
    if (cfg_.mollify_n) {
        moll_ = std::make_shared<MollifiedCoefficients>(cfg_.coeffs, *cfg_.mollify_n,
                                                        cfg_.mollify_table_halfwidth);
    }
    const int m = cfg_.grid.interior();
    u_.assign(static_cast<std::size_t>(m), 0.0);
    if (!cfg_.initial.v.empty()) u_ = cfg_.initial.v;
    w_.resize(static_cast<std::size_t>(m));
    dW_.resize(static_cast<std::size_t>(m));
    flux_.resize(static_cast<std::size_t>(m) + 1);
    hook_buf_.resize(static_cast<std::size_t>(m));
    const double dx = cfg_.grid.dx();
    mu_ = cfg_.dt / (dx * dx);
}

void Stepper::set_state(const Field& f) {
    if (f.grid != cfg_.grid) throw ConfigError("Stepper: state grid mismatch");
    u_ = f.v;
    t_ = f.t;
    k_ = static_cast<std::uint64_t>(std::llround(f.t / cfg_.dt));
}

double Stepper::state_norm_sq() const {
    double acc = 0.0;
    for (double x : u_) acc += x * x;
    return cfg_.grid.dx() * acc;
}

double Stepper::gate_value(double norm_sq) const { return gate_.value(norm_sq); }
double Stepper::gate_slope(double norm_sq) const { return gate_.slope(norm_sq); }

double Stepper::eval_b(double t, double x, double r) const {
    return moll_ ? moll_->b(t, x, r) : cfg_.coeffs->b(t, x, r);
}
double Stepper::eval_g(double t, double x, double r) const {
    return moll_ ? moll_->g(t, x, r) : cfg_.coeffs->g(t, x, r);
}
double Stepper::eval_sigma(double t, double x, double r) const {
    return moll_ ? moll_->sigma(t, x, r) : cfg_.coeffs->sigma(t, x, r);
}

void Stepper::solve_diffusion(std::vector<double>& w) { thomas_solve(mu_, w); }

double Stepper::advance() {
    const int m = cfg_.grid.interior();
    const double dx = cfg_.grid.dx();
    const double dt = cfg_.dt;
    const double nsq = state_norm_sq();
    const double kappa = gate_.value(nsq);

    fill_noise(cfg_.grid, dt, cfg_.seed, cfg_.stream_id, k_, dW_);

    // Gated node fluxes; F_0 uses the Dirichlet boundary value u = 0. The
    // backward difference at node i consumes F_i - F_{i-1}, so the flux at the
    // right boundary never enters.
    flux_[0] = kappa * eval_g(t_, 0.0, 0.0);
    for (int i = 1; i <= m; ++i) {
        flux_[static_cast<std::size_t>(i)] =
            kappa * eval_g(t_, cfg_.grid.x(i), u_[static_cast<std::size_t>(i - 1)]);
    }

    const bool hook_active = cfg_.drift_hook && t_ >= cfg_.hook_start - 1e-12 &&
                             t_ < cfg_.hook_end - 1e-12;
    if (hook_active) {
        std::fill(hook_buf_.begin(), hook_buf_.end(), 0.0);
        cfg_.drift_hook(t_, hook_buf_);
    }

    for (int i = 1; i <= m; ++i) {
        const double xi = cfg_.grid.x(i);
        const double ui = u_[static_cast<std::size_t>(i - 1)];
        double w = ui;
        if (cfg_.drift_b_enabled) w += dt * kappa * eval_b(t_, xi, ui);
        w += dt * (flux_[static_cast<std::size_t>(i)] - flux_[static_cast<std::size_t>(i - 1)]) / dx;
        if (hook_active) w += dt * hook_buf_[static_cast<std::size_t>(i - 1)];
        w += eval_sigma(t_, xi, ui) * dW_[static_cast<std::size_t>(i - 1)] / dx;
        w_[static_cast<std::size_t>(i - 1)] = w;
    }

    solve_diffusion(w_);
    std::swap(u_, w_); // w_ now holds the previous state
    ++k_;
    t_ = static_cast<double>(k_) * dt;

    for (double x : u_) {
        if (!std::isfinite(x)) {
            Field last(cfg_.grid, t_ - dt);
            last.v = w_;
            throw BlowUpError(std::move(last), t_ - dt);
        }
    }
    return kappa;
}

Field step(const Field& state, const SimConfig& cfg, const NoiseIncrement& noise,
           double gate_value) {
    if (noise.grid != cfg.grid ||
        noise.dW.size() != static_cast<std::size_t>(cfg.grid.interior())) {
        throw ConfigError("step: noise panel does not match the grid");
    }
    if (std::abs(noise.dt - cfg.dt) > 1e-12 * std::max(1.0, cfg.dt)) {
        throw ConfigError("step: noise panel dt does not match cfg.dt");
    }
    Stepper engine(cfg);
    const Field& cur = state;
    const int m = cfg.grid.interior();
    const double dx = cfg.grid.dx();
    const double dt = cfg.dt;

    std::vector<double> flux(static_cast<std::size_t>(m) + 1);
    flux[0] = gate_value * engine.eval_g(cur.t, 0.0, 0.0);
    for (int i = 1; i <= m; ++i) {
        flux[static_cast<std::size_t>(i)] =
            gate_value * engine.eval_g(cur.t, cfg.grid.x(i), cur[i - 1]);
    }
    std::vector<double> w(static_cast<std::size_t>(m));
    for (int i = 1; i <= m; ++i) {
        const double xi = cfg.grid.x(i);
        const double ui = cur[i - 1];
        double acc = ui;
        if (cfg.drift_b_enabled) acc += dt * gate_value * engine.eval_b(cur.t, xi, ui);
        acc += dt * (flux[static_cast<std::size_t>(i)] - flux[static_cast<std::size_t>(i - 1)]) / dx;
        acc += engine.eval_sigma(cur.t, xi, ui) * noise.dW[static_cast<std::size_t>(i - 1)] / dx;
        w[static_cast<std::size_t>(i - 1)] = acc;
    }
    thomas_solve(dt / (dx * dx), w);

    Field next(cfg.grid, cur.t + dt);
    next.v = std::move(w);
    if (has_nonfinite(next)) {
        throw BlowUpError(cur, cur.t);
    }
    return next;
}

namespace {

void record_observables(std::map<std::string, std::vector<double>>& obs, const Field& u) {
    obs["h_norm_sq"].push_back(h_norm_sq(u));
    obs["mode_1"].push_back(mode_coefficient(u, 1));
    const int mid = std::max(1, u.grid.n_cells / 2);
    obs["point"].push_back(u[mid - 1]);
    obs["sup_abs"].push_back(sup_abs(u));
}

} // namespace

Trajectory simulate(const SimConfig& cfg) {
    Trajectory traj;
    traj.cfg = cfg;
    Stepper engine(cfg);

    const int K = cfg.steps();
    std::vector<double> levels = cfg.exit_levels;
    std::sort(levels.begin(), levels.end());
    for (double R : levels) {
        traj.exit_times[R] = std::numeric_limits<double>::infinity();
    }

    auto check_exits = [&](double t, double nsq) {
        for (double R : levels) {
            auto& tau = traj.exit_times[R];
            if (std::isinf(tau) && nsq >= R) tau = t;
        }
    };

    auto snapshot = [&](double t) {
        Field u(cfg.grid, t);
        u.v = engine.state();
        record_observables(traj.observables, u);
        traj.samples.push_back(TimedField{t, std::move(u)});
    };

    check_exits(0.0, engine.state_norm_sq());
    snapshot(0.0);
    for (int k = 1; k <= K; ++k) {
        engine.advance();
        const double t = engine.time();
        check_exits(t, engine.state_norm_sq());
        if (k % cfg.save_every == 0 || k == K) snapshot(t);
    }
    return traj;
}

double exit_time(const Trajectory& traj, double R) {
    const auto& nsq = traj.observable("h_norm_sq");
    for (std::size_t i = 0; i < nsq.size(); ++i) {
        if (nsq[i] >= R) return traj.samples[i].t;
    }
    return std::numeric_limits<double>::infinity();
}

} // namespace spde
