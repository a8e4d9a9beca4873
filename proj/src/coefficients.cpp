#include "spde/coefficients.hpp"

#include <cmath>
#include <sstream>

namespace spde {

namespace {

const std::vector<double>& t_lattice() {
    static const std::vector<double> ts = {0.0, 0.5, 1.0};
    return ts;
}

const std::vector<double>& x_lattice() {
    static const std::vector<double> xs = {0.0, 0.25, 0.5, 0.75, 1.0};
    return xs;
}

std::string witness(double t, double x, double r, double got, double allowed) {
    std::ostringstream os;
    os << " at (t=" << t << ", x=" << x << ", r=" << r << "): |value|=" << got
       << " exceeds " << allowed;
    return os.str();
}

// 32-point Gauss-Legendre nodes/weights on (-1,1), enough for the C-infinity
// bump: values generated once by Newton iteration on Legendre polynomials.
struct GaussLegendre {
    std::vector<double> x, w;
    explicit GaussLegendre(int n) {
        x.resize(static_cast<std::size_t>(n));
        w.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            double xi = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                                 (static_cast<double>(n) + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = xi;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
                const double dxi = p1 / dp;
                xi -= dxi;
                if (std::abs(dxi) < 1e-15) break;
            }
            double p0 = 1.0, p1 = xi;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
            x[static_cast<std::size_t>(i)] = xi;
            w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - xi * xi) * dp * dp);
        }
    }
};

const GaussLegendre& gl64() {
    static const GaussLegendre g(64);
    return g;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

} // namespace

std::vector<double> CoefficientSet::validation_lattice() {
    std::vector<double> rs = {0.0};
    // Half-decade spacing from 1e-2 to 1e2, both signs; includes r = 10,
    // which is the canonical witness for cubic-growth rejections.
    for (int k = -4; k <= 4; ++k) {
        const double r = std::pow(10.0, 0.5 * static_cast<double>(k));
        rs.push_back(r);
        rs.push_back(-r);
    }
    return rs;
}

CoefficientSet CoefficientSet::validated(Spec spec) {
    if (!spec.b || !spec.g1 || !spec.g2 || !spec.sigma) {
        throw std::invalid_argument("CoefficientSet: all four coefficient closures required");
    }
    if (!(spec.K > 0.0) || !(spec.L > 0.0) || !(spec.k2 > 0.0)) {
        throw std::invalid_argument("CoefficientSet: constants K, L, k2 must be positive");
    }
    const std::vector<double> rs = validation_lattice();
    for (double t : t_lattice()) {
        for (double x : x_lattice()) {
            for (double r : rs) {
                const double ab = std::abs(spec.b(t, x, r));
                if (ab > spec.K * (1.0 + std::abs(r)) * (1.0 + 1e-12)) {
                    throw HypothesisError("(H1) violated: |b| > K(1+|r|)" +
                                          witness(t, x, r, ab, spec.K * (1.0 + std::abs(r))));
                }
                const double a1 = std::abs(spec.g1(t, x, r));
                if (a1 > spec.K * (1.0 + std::abs(r)) * (1.0 + 1e-12)) {
                    throw HypothesisError("(H2) violated: |g1| > K(1+|r|)" +
                                          witness(t, x, r, a1, spec.K * (1.0 + std::abs(r))));
                }
                const double a2 = std::abs(spec.g2(t, x, r));
                if (a2 > spec.K * (1.0 + r * r) * (1.0 + 1e-12)) {
                    throw HypothesisError("(H2) violated: |g2| > K(1+|r|^2)" +
                                          witness(t, x, r, a2, spec.K * (1.0 + r * r)));
                }
                const double as = std::abs(spec.sigma(t, x, r));
                if (as > spec.k2 * (1.0 + 1e-12)) {
                    throw HypothesisError("(H3) violated: |sigma| > k2" +
                                          witness(t, x, r, as, spec.k2));
                }
                if (spec.k1 && as < *spec.k1 * (1.0 - 1e-12)) {
                    throw HypothesisError("(H4) violated: |sigma| < k1" +
                                          witness(t, x, r, as, *spec.k1));
                }
            }
            // Lipschitz check on consecutive lattice pairs plus a fine local probe.
            for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
                const double p = rs[i], q = rs[i + 1];
                if (p == q) continue;
                const double ds = std::abs(spec.sigma(t, x, p) - spec.sigma(t, x, q));
                if (ds > spec.L * std::abs(p - q) * (1.0 + 1e-9)) {
                    throw HypothesisError("(H3) violated: sigma not L-Lipschitz between r=" +
                                          std::to_string(p) + " and r=" + std::to_string(q));
                }
            }
            for (double r : rs) {
                const double h = 1e-4 * (1.0 + std::abs(r));
                const double ds = std::abs(spec.sigma(t, x, r + h) - spec.sigma(t, x, r - h));
                if (ds > spec.L * 2.0 * h * (1.0 + 1e-6)) {
                    throw HypothesisError(
                        "(H3) violated: sigma local Lipschitz constant exceeds L near r=" +
                        std::to_string(r));
                }
            }
        }
    }
    return CoefficientSet(std::move(spec));
}

CoefficientSet make_burgers(const SigmaSpec& sigma) {
    CoefficientSet::Spec s;
    s.name = "burgers";
    s.b = [](double, double, double) { return 0.0; };
    s.g1 = [](double, double, double) { return 0.0; };
    s.g2 = [](double, double, double r) { return 0.5 * r * r; };
    s.K = 1.0;
    switch (sigma.kind) {
        case SigmaSpec::Kind::Constant: {
            const double c = sigma.c0;
            s.sigma = [c](double, double, double) { return c; };
            s.L = 1.0;
            s.k2 = std::abs(c);
            if (c != 0.0) s.k1 = std::abs(c);
            break;
        }
        case SigmaSpec::Kind::Sinusoid: {
            const double c0 = sigma.c0, c1 = sigma.c1;
            s.sigma = [c0, c1](double, double, double r) { return c0 + c1 * std::sin(r); };
            s.L = std::max(std::abs(c1), 1e-12);
            s.k2 = std::abs(c0) + std::abs(c1);
            if (std::abs(c0) > std::abs(c1)) s.k1 = std::abs(c0) - std::abs(c1);
            break;
        }
    }
    return CoefficientSet::validated(std::move(s));
}

CoefficientSet make_reaction_diffusion(double beta, const SigmaSpec& sigma) {
    CoefficientSet::Spec s;
    s.name = "reaction_diffusion";
    s.b = [beta](double, double, double r) { return -beta * r; };
    s.g1 = [](double, double, double) { return 0.0; };
    s.g2 = [](double, double, double) { return 0.0; };
    s.K = std::max(std::abs(beta), 1.0);
    switch (sigma.kind) {
        case SigmaSpec::Kind::Constant: {
            const double c = sigma.c0;
            s.sigma = [c](double, double, double) { return c; };
            s.L = 1.0;
            s.k2 = std::abs(c);
            if (c != 0.0) s.k1 = std::abs(c);
            break;
        }
        case SigmaSpec::Kind::Sinusoid: {
            const double c0 = sigma.c0, c1 = sigma.c1;
            s.sigma = [c0, c1](double, double, double r) { return c0 + c1 * std::sin(r); };
            s.L = std::max(std::abs(c1), 1e-12);
            s.k2 = std::abs(c0) + std::abs(c1);
            if (std::abs(c0) > std::abs(c1)) s.k1 = std::abs(c0) - std::abs(c1);
            break;
        }
    }
    return CoefficientSet::validated(std::move(s));
}

CoefficientSet make_linear_additive(double sigma_const) {
    CoefficientSet::Spec s;
    s.name = "linear_additive";
    s.b = [](double, double, double) { return 0.0; };
    s.g1 = [](double, double, double) { return 0.0; };
    s.g2 = [](double, double, double) { return 0.0; };
    const double c = sigma_const;
    s.sigma = [c](double, double, double) { return c; };
    s.K = 1.0;
    s.L = 1.0;
    s.k2 = std::max(std::abs(c), 1e-12);
    if (c != 0.0) s.k1 = std::abs(c);
    return CoefficientSet::validated(std::move(s));
}

CoefficientSet make_preset(const std::string& name, const SigmaSpec& sigma, double beta) {
    if (name == "burgers") return make_burgers(sigma);
    if (name == "reaction_diffusion") return make_reaction_diffusion(beta, sigma);
    if (name == "linear_additive") return make_linear_additive(sigma.c0);
    throw std::invalid_argument("make_preset: unknown preset '" + name + "'");
}

TruncationGate::TruncationGate(double R) : R_(R) {
    if (!(R > 0.0)) throw std::invalid_argument("TruncationGate: R must be positive");
}

TruncationGate TruncationGate::disabled() { return TruncationGate(); }

double TruncationGate::value(double r) const {
    if (!enabled_) return 1.0;
    const double a = std::abs(r);
    if (a <= R_) return 1.0;
    if (a >= R_ + 1.0) return 0.0;
    const double s = a - R_; // in (0,1)
    // descending quintic smoothstep; max |slope| = 15/8 < 2
    return 1.0 - s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

double TruncationGate::slope(double r) const {
    if (!enabled_) return 0.0;
    const double a = std::abs(r);
    if (a <= R_ || a >= R_ + 1.0) return 0.0;
    const double s = a - R_;
    const double d = -30.0 * s * s * (s - 1.0) * (s - 1.0);
    return r < 0.0 ? -d : d;
}

Mollifier::Mollifier(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("Mollifier: index must be >= 1");
}

double Mollifier::bump_mass_raw() {
    static const double mass = integrate_adaptive(
        [](double z) {
            const double s = 1.0 - z * z;
            return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
        },
        -1.0, 1.0, 1e-13);
    return mass;
}

double Mollifier::bump(double z) {
    const double s = 1.0 - z * z;
    if (s <= 0.0) return 0.0;
    return std::exp(-1.0 / s) / bump_mass_raw();
}

double Mollifier::bump_derivative(double z) {
    const double s = 1.0 - z * z;
    if (s <= 0.0) return 0.0;
    return std::exp(-1.0 / s) * (-2.0 * z / (s * s)) / bump_mass_raw();
}

double Mollifier::smooth(const std::function<double(double)>& f, double r) const {
    const GaussLegendre& gl = gl64();
    double acc = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
        acc += gl.w[i] * bump(gl.x[i]) * f(r - gl.x[i] / static_cast<double>(n_));
    }
    return acc;
}

double Mollifier::smooth_derivative(const std::function<double(double)>& f, double r) const {
    // d/dr int phi(z) f(r - z/n) dz = n int phi'(z) f(r - z/n) dz after moving
    // the derivative onto the kernel (integrating by parts in the original
    // convolution variable).
    const GaussLegendre& gl = gl64();
    double acc = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
        acc += gl.w[i] * bump_derivative(gl.x[i]) * f(r - gl.x[i] / static_cast<double>(n_));
    }
    return static_cast<double>(n_) * acc;
}

MollifiedCoefficients::MollifiedCoefficients(std::shared_ptr<const CoefficientSet> base,
                                             int n, double table_halfwidth)
    : base_(std::move(base)), moll_(n), n_(n) {
    if (base_->autonomous() && table_halfwidth > 0.0) {
        tabulated_ = true;
        r_lo_ = -table_halfwidth;
        r_hi_ = table_halfwidth;
        const int points = std::max(1024, static_cast<int>(table_halfwidth * 512.0));
        dr_ = (r_hi_ - r_lo_) / static_cast<double>(points);
        tables_.assign(6, std::vector<double>(static_cast<std::size_t>(points + 1)));
        for (int i = 0; i <= points; ++i) {
            const double r = r_lo_ + dr_ * static_cast<double>(i);
            for (int which = 0; which < 6; ++which) {
                tables_[static_cast<std::size_t>(which)][static_cast<std::size_t>(i)] =
                    direct(which, 0.0, 0.0, r);
            }
        }
    }
    double m = 0.0;
    for (double r : CoefficientSet::validation_lattice()) {
        m = std::max(m, std::abs(direct(5, 0.0, 0.5, r)));
    }
    deriv_bound_ = m;
}

double MollifiedCoefficients::direct(int which, double t, double x, double r) const {
    const CoefficientSet& c = *base_;
    switch (which) {
        case 0: return moll_.smooth([&](double s) { return c.b(t, x, s); }, r);
        case 1: return moll_.smooth_derivative([&](double s) { return c.b(t, x, s); }, r);
        case 2: return moll_.smooth([&](double s) { return c.g(t, x, s); }, r);
        case 3: return moll_.smooth_derivative([&](double s) { return c.g(t, x, s); }, r);
        case 4: return moll_.smooth([&](double s) { return c.sigma(t, x, s); }, r);
        default: return moll_.smooth_derivative([&](double s) { return c.sigma(t, x, s); }, r);
    }
}

double MollifiedCoefficients::table_eval(int which, double t, double x, double r) const {
    if (!tabulated_ || r < r_lo_ || r > r_hi_) return direct(which, t, x, r);
    const std::vector<double>& tab = tables_[static_cast<std::size_t>(which)];
    const double pos = (r - r_lo_) / dr_;
    std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= tab.size()) i = tab.size() - 2;
    const double w = pos - static_cast<double>(i);
    return (1.0 - w) * tab[i] + w * tab[i + 1];
}

double MollifiedCoefficients::b(double t, double x, double r) const { return table_eval(0, t, x, r); }
double MollifiedCoefficients::db(double t, double x, double r) const { return table_eval(1, t, x, r); }
double MollifiedCoefficients::g(double t, double x, double r) const { return table_eval(2, t, x, r); }
double MollifiedCoefficients::dg(double t, double x, double r) const { return table_eval(3, t, x, r); }
double MollifiedCoefficients::sigma(double t, double x, double r) const { return table_eval(4, t, x, r); }
double MollifiedCoefficients::dsigma(double t, double x, double r) const { return table_eval(5, t, x, r); }

} // namespace spde
