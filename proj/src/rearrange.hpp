#pragma once

#include "funcalg.hpp"

namespace rimax {

/// Volume of the unit ball of R^n, pi^{n/2} / Gamma(n/2 + 1).
double unit_ball_volume(int n);
/// Surface area of the unit sphere S^{n-1}, n * unit_ball_volume(n).
double unit_sphere_area(int n);

/// A function on R^n depending only on rho = |x|: f(x) = radial(|x|).
class RadialProfile {
public:
    RadialProfile(int dimension, PiecewisePowerLog radial);

    int dimension() const { return n_; }
    const PiecewisePowerLog& radial() const { return g_; }
    double operator()(double rho) const { return g_.eval(rho); }

private:
    int n_;
    PiecewisePowerLog g_;
};

/// Non-increasing, right-continuous function on (0, inf); the home of f*,
/// f**, and the critical profiles.
class DecreasingProfile {
public:
    explicit DecreasingProfile(PiecewisePowerLog body);

    const PiecewisePowerLog& body() const { return body_; }
    double operator()(double t) const { return body_.eval(t); }

private:
    PiecewisePowerLog body_;
};

/// |{x in R^n : f(x) > lambda}|. Super-level sets of piecewise-monotone
/// radial profiles are finite unions of annuli; the volume is summed in
/// closed form per monotone sub-piece, solving the level equation exactly
/// for pure powers and by monotone root-finding otherwise. Returns +inf
/// when the set has infinite volume.
double distribution(const RadialProfile& f, double lambda);

/// Exact decreasing rearrangement of a non-increasing radial profile:
/// f*(t) = radial((t / c_n)^{1/n}). Requires every piece to be a pure power
/// (beta == 0) so the substitution stays inside the algebra, and a profile
/// with distribution(f, lambda) < inf for some lambda.
DecreasingProfile rearrangement(const RadialProfile& f);

/// The lift f0(x) = d(c_n |x|^n), whose rearrangement is d itself.
RadialProfile lift_decreasing(const DecreasingProfile& d, int n);

/// f**(t) = t^{-1} integral_0^t f*(s) ds.
double doublestar(const DecreasingProfile& d, double t, const QuadratureConfig& cfg = {});

/// One signed term coef * t^gamma * (1+log+ t)^delta * (log t)^raw_log.
/// raw_log terms only occur on intervals inside (0,1], where the
/// (1+log+ t) form cannot absorb the logarithm of a cumulative integral.
struct ExpansionTerm {
    double coef = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    int raw_log = 0;

    double eval(double t) const {
        if (coef == 0.0) return 0.0;
        double v = coef * std::pow(t, gamma);
        if (delta != 0.0 && t > 1.0) v *= std::pow(1.0 + std::log(t), delta);
        if (raw_log) v *= std::log(t);
        return v;
    }
};

/// Piecewise closed form of f** for a pure-power DecreasingProfile: on each
/// interval f** is a short signed sum of power-log terms.
struct DoublestarExpansion {
    std::vector<double> bounds;                    // 0 = b_0 < ... < b_k = inf, contains 1
    std::vector<std::vector<ExpansionTerm>> terms; // one sum per interval

    double eval(double t) const;
};

/// Exact expansion; requires beta == 0 on every piece of d and an integrable
/// head.
DoublestarExpansion doublestar_expansion(const DecreasingProfile& d);

} // namespace rimax
