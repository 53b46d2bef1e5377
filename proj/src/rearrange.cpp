#include "rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rimax {

double unit_ball_volume(int n) {
    if (n < 1) throw std::invalid_argument("unit_ball_volume: need n >= 1");
    return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double unit_sphere_area(int n) {
    return n * unit_ball_volume(n);
}

RadialProfile::RadialProfile(int dimension, PiecewisePowerLog radial)
    : n_(dimension), g_(std::move(radial)) {
    if (n_ < 1) throw std::invalid_argument("RadialProfile: need dimension >= 1");
    if (!g_.nonnegative()) throw std::invalid_argument("RadialProfile: profile must be non-negative");
}

DecreasingProfile::DecreasingProfile(PiecewisePowerLog body) : body_(std::move(body)) {
    if (!body_.non_increasing())
        throw std::invalid_argument("DecreasingProfile: body must be non-increasing on (0, inf)");
}

namespace {

// Monotone sub-piece of the radial profile: the term p on (lo, hi), where the
// term is monotone (pieces are split at t = 1 and at the interior critical
// point of the log factor before this is built).
struct MonotonePart {
    PowerLogPiece p;
    double lo, hi;
    double v_lo, v_hi; // limits of the value at the two ends
};

double piece_limit(const PowerLogPiece& p, double t) {
    if (t == 0.0) {
        if (p.coef == 0.0) return 0.0;
        if (p.alpha < 0.0) return kInf;
        return p.alpha == 0.0 ? p.coef : 0.0;
    }
    if (t == kInf) {
        if (p.coef == 0.0) return 0.0;
        if (p.alpha > 0.0) return kInf;
        if (p.alpha == 0.0) return p.beta > 0.0 ? kInf : (p.beta == 0.0 ? p.coef : 0.0);
        return 0.0;
    }
    return p.eval(t);
}

void split_monotone(const PowerLogPiece& p, double lo, double hi,
                    std::vector<MonotonePart>& out) {
    // Candidate split points: t = 1 (log factor kicks in) and the critical
    // point of e^{alpha(u-1)} u^beta.
    std::vector<double> cuts;
    if (lo < 1.0 && hi > 1.0) cuts.push_back(1.0);
    if (p.coef != 0.0 && p.alpha != 0.0 && p.beta != 0.0) {
        const double ustar = -p.beta / p.alpha;
        if (ustar > 1.0) {
            const double tstar = std::exp(ustar - 1.0);
            if (tstar > std::max(lo, 1.0) && tstar < hi) cuts.push_back(tstar);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    double a = lo;
    for (double c : cuts) {
        out.push_back({p, a, c, piece_limit(p, a), piece_limit(p, c)});
        a = c;
    }
    out.push_back({p, a, hi, piece_limit(p, a), piece_limit(p, hi)});
}

// Solve p(t) = lambda on a monotone part, lambda strictly between the end
// values. Closed form for pure powers, bisection in u otherwise.
double invert_on_part(const MonotonePart& m, double lambda) {
    const PowerLogPiece& p = m.p;
    if (p.beta == 0.0 || m.hi <= 1.0) {
        return std::pow(lambda / p.coef, 1.0 / p.alpha);
    }
    if (p.alpha == 0.0) {
        const double u = std::pow(lambda / p.coef, 1.0 / p.beta);
        return std::exp(u - 1.0);
    }
    // Monotone in u on this part: bisect log(c) + alpha(u-1) + beta log u = log(lambda).
    const double target = std::log(lambda / p.coef);
    auto g = [&](double u) { return p.alpha * (u - 1.0) + p.beta * std::log(u); };
    double ulo = 1.0 + std::log(std::max(m.lo, 1.0));
    double uhi;
    if (m.hi == kInf) {
        uhi = std::max(2.0 * ulo, 2.0);
        while (std::isfinite(g(uhi)) && (g(uhi) - target) * (g(ulo) - target) > 0.0) uhi *= 2.0;
    } else {
        uhi = 1.0 + std::log(m.hi);
    }
    for (int it = 0; it < 200; ++it) {
        const double um = 0.5 * (ulo + uhi);
        if ((g(um) - target) * (g(ulo) - target) <= 0.0) uhi = um; else ulo = um;
    }
    return std::exp(0.5 * (ulo + uhi) - 1.0);
}

} // namespace

double distribution(const RadialProfile& f, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("distribution: need lambda > 0");
    const auto& g = f.radial();
    const double cn = unit_ball_volume(f.dimension());
    const double n = f.dimension();

    std::vector<MonotonePart> parts;
    for (std::size_t i = 0; i < g.piece_count(); ++i)
        split_monotone(g.pieces()[i], g.bounds()[i], g.bounds()[i + 1], parts);

    double volume = 0.0;
    for (const auto& m : parts) {
        // Identify the sub-interval of (m.lo, m.hi) where the value exceeds lambda.
        double a = m.lo, b = m.hi;
        const double vmin = std::min(m.v_lo, m.v_hi);
        const double vmax = std::max(m.v_lo, m.v_hi);
        if (lambda >= vmax) continue;
        if (lambda >= vmin) {
            const double root = invert_on_part(m, lambda);
            if (m.v_lo > m.v_hi) b = root; else a = root;
        }
        if (b == kInf) return kInf;
        volume += cn * (std::pow(b, n) - std::pow(a, n));
    }
    return volume;
}

DecreasingProfile rearrangement(const RadialProfile& f) {
    const auto& g = f.radial();
    if (!g.non_increasing())
        throw std::invalid_argument("rearrangement: exact inversion implemented for "
                                    "non-increasing radial profiles");
    if (!g.all_beta_zero())
        throw std::invalid_argument("rearrangement: exact inversion requires pure power "
                                    "pieces (beta == 0)");
    const auto& tail = g.tail_piece();
    if (tail.coef > 0.0 && tail.alpha >= 0.0)
        throw std::invalid_argument("rearrangement: profile does not vanish at infinity "
                                    "(distribution is identically infinite)");
    const int n = f.dimension();
    const double cn = unit_ball_volume(n);
    // f*(t) = g((t/c_n)^{1/n}), an exact substitution for non-increasing g.
    return DecreasingProfile(g.compose_power(std::pow(cn, -1.0 / n), 1.0 / n));
}

RadialProfile lift_decreasing(const DecreasingProfile& d, int n) {
    const double cn = unit_ball_volume(n);
    return RadialProfile(n, d.body().compose_power(cn, static_cast<double>(n)));
}

double doublestar(const DecreasingProfile& d, double t, const QuadratureConfig& cfg) {
    if (!(t > 0.0)) throw std::domain_error("doublestar: need t > 0");
    if (!d.body().head_piece().head_integrable())
        throw std::domain_error("doublestar: profile is not integrable near 0");
    return d.body().integrate(0.0, t, cfg) / t;
}

double DoublestarExpansion::eval(double t) const {
    const auto it = std::upper_bound(bounds.begin(), bounds.end(), t);
    std::size_t i = static_cast<std::size_t>(it - bounds.begin());
    i = std::min(i == 0 ? 0 : i - 1, terms.size() - 1);
    double v = 0.0;
    for (const auto& term : terms[i]) v += term.eval(t);
    return v;
}

DoublestarExpansion doublestar_expansion(const DecreasingProfile& d) {
    const auto& f = d.body();
    if (!f.all_beta_zero())
        throw std::invalid_argument("doublestar_expansion: closed form requires pure power pieces");
    if (!f.head_piece().head_integrable())
        throw std::domain_error("doublestar_expansion: profile is not integrable near 0");

    DoublestarExpansion out;
    out.bounds = f.bounds();
    if (std::find(out.bounds.begin(), out.bounds.end(), 1.0) == out.bounds.end()) {
        out.bounds.insert(std::upper_bound(out.bounds.begin(), out.bounds.end(), 1.0), 1.0);
    }

    out.terms.resize(out.bounds.size() - 1);
    for (std::size_t i = 0; i + 1 < out.bounds.size(); ++i) {
        const double lo = out.bounds[i];
        const double hi = out.bounds[i + 1];
        double probe;
        if (hi == kInf) probe = lo == 0.0 ? 1.0 : 2.0 * lo;
        else if (lo == 0.0) probe = 0.5 * hi;
        else probe = 0.5 * (lo + hi);
        const std::size_t pi = f.piece_index(probe);
        const auto& p = f.pieces()[pi];
        const double a = f.bounds()[pi];             // start of the source piece
        const double mass = a == 0.0 ? 0.0 : f.integrate(0.0, a);

        auto& sum = out.terms[i];
        if (p.coef == 0.0) {
            sum.push_back({mass, -1.0, 0.0, 0});
            continue;
        }
        if (!exp_eq(p.alpha, -1.0)) {
            // f**(t) = [mass - c a^{alpha+1}/(alpha+1)] / t + c/(alpha+1) t^alpha
            const double e = p.alpha + 1.0;
            const double head = a == 0.0 ? 0.0 : p.coef * std::pow(a, e) / e;
            sum.push_back({mass - head, -1.0, 0.0, 0});
            sum.push_back({p.coef / e, p.alpha, 0.0, 0});
        } else {
            // f**(t) = [mass + c log(t/a)] / t; above t = 1 the logarithm is
            // rewritten through (1 + log t).
            if (lo >= 1.0) {
                sum.push_back({mass - p.coef * std::log(a) - p.coef, -1.0, 0.0, 0});
                sum.push_back({p.coef, -1.0, 1.0, 0});
            } else {
                sum.push_back({mass - p.coef * std::log(a), -1.0, 0.0, 0});
                sum.push_back({p.coef, -1.0, 0.0, 1});
            }
        }
    }
    return out;
}

} // namespace rimax
