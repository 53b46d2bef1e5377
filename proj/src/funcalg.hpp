#pragma once

#include <limits>
#include <string>
#include <vector>

#include "quadrature.hpp"

namespace rimax {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Tie tolerance for exponent comparisons. Exponents are produced by
/// arithmetic on user parameters (1/p, 2/n-1, ...), so boundary cases such as
/// q/p + q(2/n-1) == 1 land a few ulps off the exact tie. Any intentional
/// parameter distinction in this domain is >= 1e-2, far above this cutoff.
inline constexpr double kExponentTie = 1e-12;

inline bool exp_eq(double a, double b) { return std::fabs(a - b) <= kExponentTie; }
inline bool exp_lt(double a, double b) { return a < b - kExponentTie; }
inline bool exp_gt(double a, double b) { return a > b + kExponentTie; }

/// One term c * t^alpha * (1+log+ t)^beta, where log+ t = max(0, log t).
/// The log factor is identically 1 on (0,1].
struct PowerLogPiece {
    double coef = 0.0;
    double alpha = 0.0;
    double beta = 0.0;

    double eval(double t) const {
        if (coef == 0.0) return 0.0;
        double v = coef * std::pow(t, alpha);
        if (beta != 0.0 && t > 1.0) v *= std::pow(1.0 + std::log(t), beta);
        return v;
    }

    /// True iff the integral of this piece over (T, inf), T > 0, is finite.
    bool tail_integrable() const {
        if (coef == 0.0) return true;
        if (exp_lt(alpha, -1.0)) return true;
        if (exp_eq(alpha, -1.0)) return exp_lt(beta, -1.0);
        return false;
    }

    /// True iff the integral over (0, T) is finite; near zero the log factor
    /// is inert, so this is the pure power-law criterion.
    bool head_integrable() const {
        return coef == 0.0 || exp_gt(alpha, -1.0);
    }
};

/// Piecewise power-log function on (0, inf): strictly increasing breakpoints
/// 0 = t_0 < t_1 < ... < t_m = inf with one PowerLogPiece per open interval.
/// Evaluation at a breakpoint takes the right-hand piece (right continuity).
class PiecewisePowerLog {
public:
    PiecewisePowerLog() = default;
    /// bounds.front() must be 0, bounds.back() inf, strictly increasing;
    /// pieces.size() + 1 == bounds.size().
    PiecewisePowerLog(std::vector<double> bounds, std::vector<PowerLogPiece> pieces);

    /// Single piece on all of (0, inf).
    static PiecewisePowerLog single(PowerLogPiece p);
    /// Constant c on (0, inf).
    static PiecewisePowerLog constant(double c);
    /// Indicator of (0, s].
    static PiecewisePowerLog indicator(double s);

    std::size_t piece_count() const { return pieces_.size(); }
    const std::vector<double>& bounds() const { return bounds_; }
    const std::vector<PowerLogPiece>& pieces() const { return pieces_; }

    double operator()(double t) const { return eval(t); }
    double eval(double t) const;

    /// Index of the piece whose half-open interval [t_i, t_{i+1}) contains t.
    std::size_t piece_index(double t) const;

    /// Pointwise product; breakpoints are merged, exponents add per piece.
    PiecewisePowerLog multiply(const PiecewisePowerLog& other) const;
    /// Pointwise power f^r (valid because every piece is non-negative).
    PiecewisePowerLog pow(double r) const;
    /// Scalar multiple.
    PiecewisePowerLog scale(double c) const;
    /// f(k * t^m) for k > 0, m > 0; requires beta == 0 on every piece, since
    /// the substitution does not preserve the (1+log+ t) form.
    PiecewisePowerLog compose_power(double k, double m) const;

    bool all_beta_zero() const;
    bool nonnegative() const;

    /// Integral over (a, b) with 0 <= a < b <= inf. Divergence at either end
    /// is detected symbolically and reported as +inf, never as an error.
    double integrate(double a, double b, const QuadratureConfig& cfg = {}) const;

    /// Exact supremum over the open interval (lo, hi) (limits included).
    /// May return +inf.
    double sup(double lo, double hi) const;

    /// True iff the function is non-increasing on (0, inf).
    bool non_increasing() const;

    /// Power exponent governing t -> 0+ (the head piece alpha) and the
    /// (power, log-power) pair governing t -> inf.
    double head_exponent() const { return pieces_.front().alpha; }
    double tail_exponent() const { return pieces_.back().alpha; }
    double tail_log_exponent() const { return pieces_.back().beta; }
    const PowerLogPiece& head_piece() const { return pieces_.front(); }
    const PowerLogPiece& tail_piece() const { return pieces_.back(); }

private:
    std::vector<double> bounds_{0.0, kInf};
    std::vector<PowerLogPiece> pieces_{PowerLogPiece{}};
};

/// Integral of a single power-log term over (a, b), 0 < a <= b, b may be inf.
/// Closed form whenever the antiderivative is elementary (beta == 0, or
/// alpha == -1, or the interval lies in (0,1]); otherwise adaptive quadrature
/// in the variable u = 1 + log t. Divergent tails return +inf.
double integrate_piece(const PowerLogPiece& p, double a, double b,
                       const QuadratureConfig& cfg);

/// Supremum of a single power-log term over (lo, hi), via the closed-form
/// critical point u* = -beta/alpha of e^{alpha(u-1)} u^beta.
double sup_piece(const PowerLogPiece& p, double lo, double hi);

/// Purely numeric truncated integral (no symbolic tails): integrates over
/// (a, min(b, cfg.t_max)) by quadrature only. Test oracle for the symbolic
/// classification.
double integrate_truncated(const PiecewisePowerLog& f, double a, double b,
                           const QuadratureConfig& cfg);

} // namespace rimax
