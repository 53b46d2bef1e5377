#include "operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rimax {

std::vector<double> GeometricGrid::points() const {
    if (!(lo > 0.0) || !(hi > lo) || per_decade < 1)
        throw std::invalid_argument("GeometricGrid: need 0 < lo < hi and per_decade >= 1");
    const double decades = std::log10(hi / lo);
    const int count = std::max(1, static_cast<int>(std::lround(decades * per_decade)));
    std::vector<double> pts(count + 1);
    for (int i = 0; i <= count; ++i)
        pts[i] = lo * std::pow(10.0, decades * i / count);
    pts.back() = hi;
    return pts;
}

namespace {

// int_{-1}^{1} (1-u^2)^{(n-3)/2} du = sqrt(pi) Gamma((n-1)/2) / Gamma(n/2).
double angular_full(int n) {
    return std::sqrt(M_PI) * std::tgamma(0.5 * (n - 1)) / std::tgamma(0.5 * n);
}

// Fraction of the unit sphere within the cap u >= u0, u = cos(theta).
double cap_fraction(int n, double u0) {
    if (u0 <= -1.0) return 1.0;
    if (u0 >= 1.0) return 0.0;
    switch (n) {
        case 2: return std::acos(u0) / M_PI;
        case 3: return 0.5 * (1.0 - u0);
        default: break;
    }
    // u = 1 - w^2 removes the endpoint singularity of (1-u^2)^{(n-3)/2}.
    const double k = 0.5 * (n - 3);
    const double w0 = std::sqrt(1.0 - u0);
    const double partial = quad::gauss_legendre([k](double w) {
        return 2.0 * std::pow(w, 2.0 * k + 1.0) * std::pow(2.0 - w * w, k);
    }, 0.0, w0);
    return partial / angular_full(n);
}

// Quadrature panels for the partially covered shell range, split at profile
// kinks (and at t = 1 where the log factor switches on).
double partial_shell(const std::function<double(double)>& g, int n, double rho, double r,
                     const std::vector<double>& kinks, const QuadratureConfig& cfg) {
    const double slo = std::fabs(rho - r);
    const double shi = rho + r;
    std::vector<double> cuts{slo};
    for (double k : kinks)
        if (k > slo && k < shi) cuts.push_back(k);
    cuts.push_back(shi);
    std::sort(cuts.begin(), cuts.end());

    const double nm1 = n - 1.0;
    auto integrand = [&](double s) {
        if (s <= 0.0) return 0.0;
        const double u0 = (s * s + rho * rho - r * r) / (2.0 * s * rho);
        const double psi = cap_fraction(n, u0);
        if (psi <= 0.0) return 0.0;
        return g(s) * std::pow(s, nm1) * psi;
    };

    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        if (cuts[i] < cuts[i + 1])
            sum += quad::adaptive(integrand, cuts[i], cuts[i + 1], cfg);
    return sum;
}

std::vector<double> interior_kinks(const PiecewisePowerLog& g) {
    std::vector<double> ks(g.bounds().begin() + 1, g.bounds().end() - 1);
    ks.push_back(1.0);
    return ks;
}

} // namespace

double ball_average(const RadialProfile& f, double rho, double r, const QuadratureConfig& cfg) {
    if (!(r > 0.0) || !(rho >= 0.0))
        throw std::domain_error("ball_average: need r > 0 and rho >= 0");
    const int n = f.dimension();
    const auto& g = f.radial();
    if (rho < r && !(g.head_exponent() > -static_cast<double>(n) + kExponentTie) &&
        g.head_piece().coef != 0.0)
        throw std::domain_error("ball_average: profile is not integrable over balls "
                                "containing the origin");

    if (n == 1) {
        const double a = rho - r, b = rho + r;
        double mass;
        if (a >= 0.0) mass = g.integrate(a, b, cfg);
        else mass = g.integrate(0.0, -a, cfg) + g.integrate(0.0, b, cfg);
        return mass / (2.0 * r);
    }

    const auto shell = g.multiply(PiecewisePowerLog::single({1.0, n - 1.0, 0.0}));
    if (rho == 0.0)
        return n * shell.integrate(0.0, r, cfg) / std::pow(r, n);

    double full = 0.0;
    if (rho < r) full = shell.integrate(0.0, r - rho, cfg);
    const double part = partial_shell([&g](double s) { return g.eval(s); }, n, rho, r,
                                      interior_kinks(g), cfg);
    return n * (full + part) / std::pow(r, n);
}

double ball_average_fn(const std::function<double(double)>& g, int n,
                       const std::vector<double>& kinks, double rho, double r,
                       const QuadratureConfig& cfg) {
    if (!(r > 0.0) || !(rho >= 0.0) || n < 1)
        throw std::domain_error("ball_average_fn: need r > 0, rho >= 0, n >= 1");
    const double nm1 = n - 1.0;
    auto shell = [&](double s) { return g(s) * std::pow(s, nm1); };

    auto integrate_panels = [&](double a, double b) {
        std::vector<double> cuts{a};
        for (double k : kinks)
            if (k > a && k < b) cuts.push_back(k);
        cuts.push_back(b);
        std::sort(cuts.begin(), cuts.end());
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            if (cuts[i] < cuts[i + 1]) sum += quad::adaptive(shell, cuts[i], cuts[i + 1], cfg);
        return sum;
    };

    if (n == 1) {
        double mass;
        if (rho - r >= 0.0) mass = integrate_panels(rho - r, rho + r);
        else mass = integrate_panels(0.0, r - rho) + integrate_panels(0.0, rho + r);
        return mass / (2.0 * r);
    }
    if (rho == 0.0) return n * integrate_panels(0.0, r) / std::pow(r, n);

    double full = 0.0;
    if (rho < r) full = integrate_panels(0.0, r - rho);
    const double part = partial_shell(g, n, rho, r, kinks, cfg);
    return n * (full + part) / std::pow(r, n);
}

MaximalValue maximal_radial(const RadialProfile& f, double rho, const GeometricGrid& r_grid,
                            const QuadratureConfig& cfg) {
    // The r -> 0 limit is f(rho) at continuity points; the grid supremum can
    // only add to it, so the result is a lower bound of Mf by construction.
    MaximalValue best;
    if (rho > 0.0) {
        best.value = f(rho);
    } else {
        const auto& head = f.radial().head_piece();
        if (head.coef == 0.0 || head.alpha > 0.0) best.value = 0.0;
        else best.value = head.alpha == 0.0 ? head.coef : kInf;
    }
    best.r_at_max = 0.0;
    for (double r : r_grid.points()) {
        const double avg = ball_average(f, rho, r, cfg);
        // Improvements below the quadrature resolution keep the r -> 0 label.
        if (avg > best.value * (1.0 + 1e-9)) {
            best.value = avg;
            best.r_at_max = r;
        }
    }
    return best;
}

double riesz_radial(const RadialProfile& f, double rho, const QuadratureConfig& cfg) {
    const int n = f.dimension();
    if (n < 3)
        throw std::invalid_argument("riesz_radial: the Riesz potential I2 needs n >= 3");
    if (!(rho > 0.0)) throw std::domain_error("riesz_radial: need rho > 0");
    const auto& g = f.radial();

    const auto inner = g.multiply(PiecewisePowerLog::single({1.0, n - 1.0, 0.0}));
    const auto outer = g.multiply(PiecewisePowerLog::single({1.0, 1.0, 0.0}));
    const double near = inner.integrate(0.0, rho, cfg);
    const double far = outer.integrate(rho, kInf, cfg);
    if (near == kInf || far == kInf) return kInf;
    return unit_sphere_area(n) * (std::pow(rho, 2.0 - n) * near + far);
}

RadialFunction riesz_lift(const RadialProfile& f, const QuadratureConfig& cfg) {
    RadialFunction out;
    out.dimension = f.dimension();
    out.kinks.assign(f.radial().bounds().begin() + 1, f.radial().bounds().end() - 1);
    out.value = [f, cfg](double rho) { return riesz_radial(f, rho, cfg); };
    return out;
}

double hardy_operator(const DecreasingProfile& d, double t, int n, const QuadratureConfig& cfg) {
    if (n < 3) throw std::invalid_argument("hardy_operator: need n >= 3");
    if (!(t > 0.0)) throw std::domain_error("hardy_operator: need t > 0");
    const double a = 2.0 / n;
    const auto integrand = d.body().multiply(PiecewisePowerLog::single({1.0, -a, 0.0}));
    if (!integrand.head_piece().head_integrable() && integrand.head_piece().coef != 0.0)
        throw std::domain_error("hardy_operator: integrand not integrable near 0");
    return std::pow(t, a - 1.0) * integrand.integrate(0.0, t, cfg);
}

namespace {

// Closed-form integral over (a, b), 1 <= a < b <= inf, of
// coef * s^g * (1 + log s)^delta with delta in {0, 1}.
double term_integral_above_one(double coef, double g, double delta, double a, double b) {
    if (delta == 0.0) {
        if (exp_eq(g, -1.0)) {
            if (b == kInf) return kInf;
            return coef * std::log(b / a);
        }
        const double e = g + 1.0;
        if (b == kInf) return e > 0.0 ? kInf : -coef * std::pow(a, e) / e;
        return coef * (std::pow(b, e) - std::pow(a, e)) / e;
    }
    // delta == 1: substitute u = 1 + log s; integral coef e^{e(u-1)} u du.
    const double ua = 1.0 + std::log(a);
    if (exp_eq(g, -1.0)) {
        if (b == kInf) return kInf;
        const double ub = 1.0 + std::log(b);
        return coef * 0.5 * (ub * ub - ua * ua);
    }
    const double e = g + 1.0;
    auto anti = [e](double u) { return std::exp(e * (u - 1.0)) * (u / e - 1.0 / (e * e)); };
    if (b == kInf) {
        if (e > 0.0) return kInf;
        return -coef * anti(ua);
    }
    return coef * (anti(1.0 + std::log(b)) - anti(ua));
}

// Closed-form integral over (a, b) inside (0, 1] of coef * s^g * (log s)^k,
// k in {0, 1}.
double term_integral_below_one(double coef, double g, int k, double a, double b) {
    if (k == 0) {
        if (exp_eq(g, -1.0)) return coef * std::log(b / a);
        const double e = g + 1.0;
        if (a == 0.0) return e > 0.0 ? coef * std::pow(b, e) / e : kInf;
        return coef * (std::pow(b, e) - std::pow(a, e)) / e;
    }
    if (exp_eq(g, -1.0)) {
        const double la = std::log(a), lb = std::log(b);
        return coef * 0.5 * (lb * lb - la * la);
    }
    const double e = g + 1.0;
    auto anti = [e](double s) {
        return std::pow(s, e) * (std::log(s) / e - 1.0 / (e * e));
    };
    const double at_a = a == 0.0 ? (e > 0.0 ? 0.0 : kInf) : anti(a);
    if (at_a == kInf) return kInf;
    return coef * (anti(b) - at_a);
}

} // namespace

double riesz_tail(const DecreasingProfile& d, double t, int n, const QuadratureConfig& cfg) {
    (void)cfg;
    if (n < 3) throw std::invalid_argument("riesz_tail: need n >= 3");
    if (!(t > 0.0)) throw std::domain_error("riesz_tail: need t > 0");

    const DoublestarExpansion ex = doublestar_expansion(d);
    const double power = 2.0 / n - 1.0;

    // Divergence is decided by the dominant term of the final interval.
    {
        std::vector<ExpansionTerm> last = ex.terms.back();
        std::sort(last.begin(), last.end(), [](const ExpansionTerm& a, const ExpansionTerm& b) {
            if (!exp_eq(a.gamma, b.gamma)) return a.gamma > b.gamma;
            return a.delta > b.delta;
        });
        for (const auto& term : last) {
            if (term.coef == 0.0) continue;
            if (!exp_lt(term.gamma + power, -1.0)) {
                if (term.coef > 0.0) return kInf;
                continue;
            }
            break; // dominant term integrable, so are the rest
        }
    }

    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < ex.bounds.size(); ++i) {
        const double lo = std::max(t, ex.bounds[i]);
        const double hi = ex.bounds[i + 1];
        if (lo >= hi) continue;
        for (const auto& term : ex.terms[i]) {
            const double g = term.gamma + power;
            double part;
            if (term.raw_log || hi <= 1.0)
                part = term_integral_below_one(term.coef, g, term.raw_log, lo, hi);
            else
                part = term_integral_above_one(term.coef, g, term.delta, lo, hi);
            if (part == kInf) return kInf;
            sum += part;
        }
    }
    return sum;
}

double kernel_sphere_average(int n, double rho, double s, const QuadratureConfig& cfg) {
    if (n < 2) throw std::invalid_argument("kernel_sphere_average: need n >= 2");
    if (!(rho > 0.0) || !(s > 0.0))
        throw std::domain_error("kernel_sphere_average: need rho, s > 0");

    // u = 1 - w^2 regularizes both the angular weight at u = 1 and the
    // kernel when rho == s.
    const double k = 0.5 * (n - 3);
    const double halfpow = 0.5 * (2.0 - n);
    const double d2 = (rho - s) * (rho - s);
    const double ss = 2.0 * rho * s;
    auto integrand = [&](double w) {
        const double w2 = w * w;
        return 2.0 * std::pow(w2, k + 0.5) * std::pow(2.0 - w2, k) *
               std::pow(d2 + ss * w2, halfpow);
    };
    const double sigma = n == 2 ? 2.0 : unit_sphere_area(n - 1);
    return sigma * quad::adaptive(integrand, 0.0, std::sqrt(2.0), cfg);
}

} // namespace rimax
