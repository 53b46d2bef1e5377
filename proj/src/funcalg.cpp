#include "funcalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rimax {

namespace {

// Antiderivative-based integral of c * t^alpha over (a, b), 0 <= a < b <= inf,
// valid where the log factor is inert or absent.
double power_integral(double c, double alpha, double a, double b) {
    if (c == 0.0) return 0.0;
    if (exp_eq(alpha, -1.0)) {
        if (a == 0.0 || b == kInf) return kInf;
        return c * std::log(b / a);
    }
    const double e = alpha + 1.0;
    if (b == kInf) {
        if (e > 0.0) return kInf;
        return -c * std::pow(a, e) / e;
    }
    if (a == 0.0) {
        if (e < 0.0) return kInf;
        return c * std::pow(b, e) / e;
    }
    return c * (std::pow(b, e) - std::pow(a, e)) / e;
}

// Integral of u^beta over (ua, ub), 1 <= ua < ub <= inf.
double ulog_integral(double beta, double ua, double ub) {
    if (exp_eq(beta, -1.0)) {
        if (ub == kInf) return kInf;
        return std::log(ub / ua);
    }
    const double e = beta + 1.0;
    if (ub == kInf) {
        if (e > 0.0) return kInf;
        return -std::pow(ua, e) / e;
    }
    return (std::pow(ub, e) - std::pow(ua, e)) / e;
}

} // namespace

double integrate_piece(const PowerLogPiece& p, double a, double b,
                       const QuadratureConfig& cfg) {
    if (p.coef == 0.0 || a >= b) return 0.0;

    // Head divergence is a symbolic fact.
    if (a == 0.0 && !p.head_integrable()) return kInf;

    // The antiderivative changes form at t = 1.
    if (a < 1.0 && b > 1.0)
        return integrate_piece(p, a, 1.0, cfg) + integrate_piece(p, 1.0, b, cfg);

    if (b <= 1.0 || p.beta == 0.0)
        return power_integral(p.coef, p.alpha, a, b);

    // Interval inside [1, inf) with an active log factor: substitute
    // u = 1 + log t, so the integrand becomes e^{(alpha+1)(u-1)} u^beta.
    const double ua = 1.0 + std::log(a);
    const double ub = (b == kInf) ? kInf : 1.0 + std::log(b);

    if (exp_eq(p.alpha, -1.0)) return p.coef * ulog_integral(p.beta, ua, ub);

    if (b == kInf) {
        if (!p.tail_integrable()) return kInf;
        // alpha < -1 strictly: exponential decay in u; truncate where the
        // exponential factor is below 1e-40 relative.
        const double rate = -(p.alpha + 1.0);
        const double ucut = ua + 95.0 / rate;
        const double e = p.alpha + 1.0;
        return p.coef * quad::adaptive([e, beta = p.beta](double u) {
            return std::exp(e * (u - 1.0)) * std::pow(u, beta);
        }, ua, ucut, cfg);
    }

    const double e = p.alpha + 1.0;
    return p.coef * quad::adaptive([e, beta = p.beta](double u) {
        return std::exp(e * (u - 1.0)) * std::pow(u, beta);
    }, ua, ub, cfg);
}

double sup_piece(const PowerLogPiece& p, double lo, double hi) {
    if (p.coef == 0.0 || lo >= hi) return 0.0;

    double best = 0.0;
    auto consider = [&](double v) { best = std::max(best, v); };

    // Limit at the left end; exponent ties (arithmetic residues of exact
    // cancellations) count as zero.
    if (lo == 0.0) {
        if (exp_lt(p.alpha, 0.0)) return kInf;
        consider(exp_gt(p.alpha, 0.0) ? 0.0 : p.coef);
    } else {
        consider(p.eval(lo));
    }

    // Limit at the right end.
    if (hi == kInf) {
        if (exp_gt(p.alpha, 0.0)) return kInf;
        if (!exp_lt(p.alpha, 0.0)) {
            if (exp_gt(p.beta, 0.0)) return kInf;
            consider(exp_lt(p.beta, 0.0) ? 0.0 : p.coef);
        }
        // alpha < 0: limit 0.
    } else {
        consider(p.eval(hi));
    }

    // The form changes at t = 1.
    if (lo < 1.0 && hi > 1.0) consider(p.eval(1.0));

    // Interior critical point of e^{alpha(u-1)} u^beta at u* = -beta/alpha,
    // relevant only on the [1, inf) part.
    if (p.alpha != 0.0 && p.beta != 0.0) {
        const double ustar = -p.beta / p.alpha;
        if (ustar > 1.0) {
            const double tstar = std::exp(ustar - 1.0);
            if (tstar > std::max(lo, 1.0) && tstar < hi) consider(p.eval(tstar));
        }
    }
    return best;
}

PiecewisePowerLog::PiecewisePowerLog(std::vector<double> bounds,
                                     std::vector<PowerLogPiece> pieces)
    : bounds_(std::move(bounds)), pieces_(std::move(pieces)) {
    if (bounds_.size() < 2 || bounds_.size() != pieces_.size() + 1)
        throw std::invalid_argument("PiecewisePowerLog: bounds/pieces size mismatch");
    if (bounds_.front() != 0.0 || bounds_.back() != kInf)
        throw std::invalid_argument("PiecewisePowerLog: bounds must span 0 to inf");
    for (std::size_t i = 0; i + 1 < bounds_.size(); ++i)
        if (!(bounds_[i] < bounds_[i + 1]))
            throw std::invalid_argument("PiecewisePowerLog: breakpoints must increase strictly");
    for (const auto& p : pieces_)
        if (!(p.coef >= 0.0) || !std::isfinite(p.alpha) || !std::isfinite(p.beta))
            throw std::invalid_argument("PiecewisePowerLog: piece coefficients must be finite, coef >= 0");
}

PiecewisePowerLog PiecewisePowerLog::single(PowerLogPiece p) {
    return PiecewisePowerLog({0.0, kInf}, {p});
}

PiecewisePowerLog PiecewisePowerLog::constant(double c) {
    return single({c, 0.0, 0.0});
}

PiecewisePowerLog PiecewisePowerLog::indicator(double s) {
    if (!(s > 0.0) || s == kInf) throw std::invalid_argument("indicator: need 0 < s < inf");
    return PiecewisePowerLog({0.0, s, kInf}, {{1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}});
}

std::size_t PiecewisePowerLog::piece_index(double t) const {
    // First bound strictly greater than t, minus one: piece [t_i, t_{i+1}).
    const auto it = std::upper_bound(bounds_.begin(), bounds_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - bounds_.begin());
    return std::min(i == 0 ? 0 : i - 1, pieces_.size() - 1);
}

double PiecewisePowerLog::eval(double t) const {
    if (!(t > 0.0)) throw std::domain_error("PiecewisePowerLog: evaluation needs t > 0");
    return pieces_[piece_index(t)].eval(t);
}

PiecewisePowerLog PiecewisePowerLog::multiply(const PiecewisePowerLog& other) const {
    std::vector<double> merged;
    merged.reserve(bounds_.size() + other.bounds_.size());
    std::merge(bounds_.begin(), bounds_.end(), other.bounds_.begin(), other.bounds_.end(),
               std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

    std::vector<PowerLogPiece> out;
    out.reserve(merged.size() - 1);
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
        // Any interior point of the interval identifies the active pieces.
        const double probe = merged[i + 1] == kInf ? merged[i] + 1.0
                                                   : 0.5 * (merged[i] + merged[i + 1]);
        const PowerLogPiece& a = pieces_[piece_index(probe)];
        const PowerLogPiece& b = other.pieces_[other.piece_index(probe)];
        out.push_back({a.coef * b.coef, a.alpha + b.alpha, a.beta + b.beta});
    }
    return PiecewisePowerLog(std::move(merged), std::move(out));
}

PiecewisePowerLog PiecewisePowerLog::pow(double r) const {
    std::vector<PowerLogPiece> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_)
        out.push_back({std::pow(p.coef, r), p.alpha * r, p.beta * r});
    return PiecewisePowerLog(bounds_, std::move(out));
}

PiecewisePowerLog PiecewisePowerLog::scale(double c) const {
    if (!(c >= 0.0)) throw std::invalid_argument("scale: need c >= 0");
    std::vector<PowerLogPiece> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) out.push_back({p.coef * c, p.alpha, p.beta});
    return PiecewisePowerLog(bounds_, std::move(out));
}

PiecewisePowerLog PiecewisePowerLog::compose_power(double k, double m) const {
    if (!(k > 0.0) || !(m > 0.0)) throw std::invalid_argument("compose_power: need k, m > 0");
    if (!all_beta_zero())
        throw std::invalid_argument("compose_power: substitution leaves the power-log family "
                                    "unless every piece has beta == 0");
    std::vector<double> bounds(bounds_.size());
    std::vector<PowerLogPiece> pieces(pieces_.size());
    for (std::size_t i = 0; i < bounds_.size(); ++i) {
        const double b = bounds_[i];
        bounds[i] = (b == 0.0) ? 0.0 : (b == kInf ? kInf : std::pow(b / k, 1.0 / m));
    }
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const auto& p = pieces_[i];
        pieces[i] = {p.coef * std::pow(k, p.alpha), p.alpha * m, 0.0};
    }
    return PiecewisePowerLog(std::move(bounds), std::move(pieces));
}

bool PiecewisePowerLog::all_beta_zero() const {
    for (const auto& p : pieces_)
        if (p.coef != 0.0 && p.beta != 0.0) return false;
    return true;
}

bool PiecewisePowerLog::nonnegative() const {
    for (const auto& p : pieces_)
        if (p.coef < 0.0) return false;
    return true;
}

double PiecewisePowerLog::integrate(double a, double b, const QuadratureConfig& cfg) const {
    if (!(a >= 0.0) || !(a < b)) throw std::invalid_argument("integrate: need 0 <= a < b");
    double sum = 0.0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const double lo = std::max(a, bounds_[i]);
        const double hi = std::min(b, bounds_[i + 1]);
        if (lo >= hi) continue;
        const double part = integrate_piece(pieces_[i], lo, hi, cfg);
        if (part == kInf) return kInf;
        sum += part;
    }
    return sum;
}

double PiecewisePowerLog::sup(double lo, double hi) const {
    if (!(lo >= 0.0) || !(lo < hi)) throw std::invalid_argument("sup: need 0 <= lo < hi");
    double best = 0.0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const double a = std::max(lo, bounds_[i]);
        const double b = std::min(hi, bounds_[i + 1]);
        if (a >= b) continue;
        best = std::max(best, sup_piece(pieces_[i], a, b));
        if (best == kInf) return kInf;
    }
    return best;
}

bool PiecewisePowerLog::non_increasing() const {
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const auto& p = pieces_[i];
        if (p.coef == 0.0) {
            // Zero piece: everything after must stay zero.
            for (std::size_t j = i; j < pieces_.size(); ++j)
                if (pieces_[j].coef != 0.0) return false;
            return true;
        }
        const double lo = bounds_[i], hi = bounds_[i + 1];
        if (lo < 1.0 && p.alpha > kExponentTie) return false;
        if (hi > 1.0) {
            // Sign of the log-derivative on [1, inf) is alpha*u + beta.
            const double ulo = 1.0 + std::log(std::max(lo, 1.0));
            if (p.alpha * ulo + p.beta > kExponentTie) return false;
            if (hi == kInf) {
                if (p.alpha > kExponentTie) return false;
                if (std::fabs(p.alpha) <= kExponentTie && p.beta > kExponentTie) return false;
            } else if (p.alpha * (1.0 + std::log(hi)) + p.beta > kExponentTie) {
                return false;
            }
        }
        // Junction with the next piece: no upward jump.
        if (i + 1 < pieces_.size()) {
            const double left = p.eval(bounds_[i + 1]);
            const double right = pieces_[i + 1].eval(bounds_[i + 1]);
            if (right > left * (1.0 + 1e-12) + 1e-300) return false;
        }
    }
    return true;
}

double integrate_truncated(const PiecewisePowerLog& f, double a, double b,
                           const QuadratureConfig& cfg) {
    const double hi = std::min(b, cfg.t_max);
    double sum = 0.0;
    for (std::size_t i = 0; i < f.piece_count(); ++i) {
        double lo = std::max(a, f.bounds()[i]);
        double up = std::min(hi, f.bounds()[i + 1]);
        if (lo == 0.0) lo = std::min(1e-12, up * 1e-12);
        if (lo >= up) continue;
        const auto& p = f.pieces()[i];
        sum += quad::adaptive_log([&p](double t) { return p.eval(t); }, lo, up, cfg);
    }
    return sum;
}

} // namespace rimax
