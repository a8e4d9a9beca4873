#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spde {

/// Raised when a coefficient set fails one of the structural hypotheses
/// (linear growth on b, linear+quadratic split on g, Lipschitz bounded sigma,
/// nondegeneracy bounds on sigma). The message names the hypothesis and a
/// witness point.
class HypothesisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scalar coefficient of (t, x, r).
using CoefficientFn = std::function<double(double t, double x, double r)>;

/// How sigma is specified in configs and presets.
struct SigmaSpec {
    enum class Kind { Constant, Sinusoid }; // sinusoid: c0 + c1 * sin(r)
    Kind kind = Kind::Constant;
    double c0 = 1.0;
    double c1 = 0.0;

    static SigmaSpec constant(double c) { return {Kind::Constant, c, 0.0}; }
    static SigmaSpec sinusoid(double c0, double c1) { return {Kind::Sinusoid, c0, c1}; }
};

/// The coefficient triple (b, g = g1 + g2, sigma) together with its declared
/// constants. Construction validates the growth/Lipschitz hypotheses on a
/// sampling lattice (coefficients are opaque closures, so the check is
/// numerical, not symbolic):
///   |b|  <= K (1 + |r|)
///   |g1| <= K (1 + |r|),  |g2| <= K (1 + |r|^2)
///   |sigma(p) - sigma(q)| <= L |p - q|,  |sigma| <= k2
///   and, when k1 is declared, k1 <= |sigma| <= k2.
class CoefficientSet {
public:
    struct Spec {
        std::string name = "custom";
        CoefficientFn b;
        CoefficientFn g1;
        CoefficientFn g2;
        CoefficientFn sigma;
        double K = 1.0;
        double L = 1.0;
        std::optional<double> k1; // lower sigma bound; required by the gradient machinery
        double k2 = 1.0;
        bool autonomous = true; // no (t,x) dependence; enables table-backed mollification
    };

    static CoefficientSet validated(Spec spec);

    const std::string& name() const { return spec_.name; }
    double b(double t, double x, double r) const { return spec_.b(t, x, r); }
    double g1(double t, double x, double r) const { return spec_.g1(t, x, r); }
    double g2(double t, double x, double r) const { return spec_.g2(t, x, r); }
    double g(double t, double x, double r) const { return spec_.g1(t, x, r) + spec_.g2(t, x, r); }
    double sigma(double t, double x, double r) const { return spec_.sigma(t, x, r); }

    double K() const { return spec_.K; }
    double L() const { return spec_.L; }
    std::optional<double> k1() const { return spec_.k1; }
    double k2() const { return spec_.k2; }
    bool autonomous() const { return spec_.autonomous; }

    /// The r-values every hypothesis is sampled at (log-spaced up to 100).
    static std::vector<double> validation_lattice();

private:
    explicit CoefficientSet(Spec spec) : spec_(std::move(spec)) {}
    Spec spec_;
};

/// Built-in presets.
///
/// burgers:            b = 0, g1 = 0, g2 = r^2/2 (the convective flux).
/// reaction_diffusion: b = -beta r, g = 0.
/// linear_additive:    b = g = 0, sigma constant; the exactly solvable case.
CoefficientSet make_burgers(const SigmaSpec& sigma);
CoefficientSet make_reaction_diffusion(double beta, const SigmaSpec& sigma);
CoefficientSet make_linear_additive(double sigma_const);
CoefficientSet make_preset(const std::string& name, const SigmaSpec& sigma,
                           double beta = 1.0);

/// Smooth cutoff in the squared H-norm: 1 on [0,R], 0 above R+1, quintic
/// smoothstep in between (max slope 15/8, within the required bound of 2).
/// Freezes nonlinearities once the solution is large.
class TruncationGate {
public:
    explicit TruncationGate(double R);
    /// Gate disabled: identically 1 (R = +infinity).
    static TruncationGate disabled();

    double R() const { return R_; }
    bool enabled() const { return enabled_; }
    double value(double r) const;
    double slope(double r) const; // analytic derivative of the smoothstep

private:
    TruncationGate() : R_(0.0), enabled_(false) {}
    double R_;
    bool enabled_ = true;
};

/// Mollification in the state variable r: convolution with the scaled bump
/// phi(z) = c * exp(-1/(1-z^2)) on (-1,1), unit mass. For index n the kernel
/// has support 1/n, so f_n(r) = int phi(z) f(r - z/n) dz, and derivatives act
/// on phi, which keeps non-differentiable inputs (|r|, etc.) legal.
class Mollifier {
public:
    explicit Mollifier(int n);

    int index() const { return n_; }
    static double bump(double z);        // normalized phi
    static double bump_derivative(double z);
    static double bump_mass_raw();       // int exp(-1/(1-z^2)) dz, cached

    /// f_n(r) for a scalar function of r.
    double smooth(const std::function<double(double)>& f, double r) const;
    /// f_n'(r), by differentiating the kernel.
    double smooth_derivative(const std::function<double(double)>& f, double r) const;

private:
    int n_;
};

/// A coefficient set pushed through the mollifier, exposing both values and
/// r-derivatives of b_n, g_n, sigma_n. For autonomous sets the evaluations are
/// backed by lookup tables over a configurable r-range (the time steppers call
/// these in the innermost loop); outside the table, or for (t,x)-dependent
/// sets, evaluation falls back to direct quadrature.
class MollifiedCoefficients {
public:
    MollifiedCoefficients(std::shared_ptr<const CoefficientSet> base, int n,
                          double table_halfwidth = 64.0);

    int index() const { return n_; }
    const CoefficientSet& base() const { return *base_; }

    double b(double t, double x, double r) const;
    double db(double t, double x, double r) const;   // d b_n / dr
    double g(double t, double x, double r) const;
    double dg(double t, double x, double r) const;
    double sigma(double t, double x, double r) const;
    double dsigma(double t, double x, double r) const;

    /// Measured sup over the validation lattice of |sigma_n'|; the derivative
    /// bound constant for this set.
    double derivative_bound() const { return deriv_bound_; }

private:
    double table_eval(int which, double t, double x, double r) const;
    double direct(int which, double t, double x, double r) const;

    std::shared_ptr<const CoefficientSet> base_;
    Mollifier moll_;
    int n_;
    bool tabulated_ = false;
    double r_lo_ = 0.0, r_hi_ = 0.0, dr_ = 0.0;
    // tables: [b, db, g, dg, sigma, dsigma]
    std::vector<std::vector<double>> tables_;
    double deriv_bound_ = 0.0;
};

} // namespace spde
