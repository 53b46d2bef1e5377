#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rearrange.hpp"

namespace rimax {

/// Log-spaced evaluation grid.
struct GeometricGrid {
    double lo = 1e-3;
    double hi = 1e3;
    int per_decade = 64;

    std::vector<double> points() const;
};

/// Average of f over the ball B(x, r), |x| = rho, by shell decomposition:
/// the fully covered shells integrate in closed form, the partially covered
/// range [|rho-r|, rho+r] by adaptive quadrature of the spherical-cap angle.
double ball_average(const RadialProfile& f, double rho, double r,
                    const QuadratureConfig& cfg = {});

/// Same for a profile only available as a callable (e.g. a Riesz potential);
/// kinks lists radii where the profile is not smooth so quadrature panels
/// can split there.
double ball_average_fn(const std::function<double(double)>& g, int n,
                       const std::vector<double>& kinks, double rho, double r,
                       const QuadratureConfig& cfg = {});

struct MaximalValue {
    double value = 0.0;
    double r_at_max = 0.0; // 0 marks the r -> 0 limit f(rho)
};

/// Grid supremum of ball averages plus the r -> 0 limit f(rho); a certified
/// lower bound of the maximal function at radius rho.
MaximalValue maximal_radial(const RadialProfile& f, double rho,
                            const GeometricGrid& r_grid = {},
                            const QuadratureConfig& cfg = {});

/// Riesz potential I2 f at radius rho via the Newton shell identity
/// I2 f(rho) = sigma_{n-1} [rho^{2-n} int_0^rho g s^{n-1} ds + int_rho^inf g s ds].
/// Divergent tails yield +inf. Requires n >= 3.
double riesz_radial(const RadialProfile& f, double rho, const QuadratureConfig& cfg = {});

/// A radial function handed around as values: rho -> I2 f(rho) with the
/// radii where it has kinks.
struct RadialFunction {
    int dimension = 3;
    std::function<double(double)> value;
    std::vector<double> kinks;
};

RadialFunction riesz_lift(const RadialProfile& f, const QuadratureConfig& cfg = {});

/// Weighted Hardy operator t^{2/n-1} int_0^t d(s) s^{-2/n} ds.
double hardy_operator(const DecreasingProfile& d, double t, int n,
                      const QuadratureConfig& cfg = {});

/// Tail functional int_t^inf d**(s) s^{2/n-1} ds, exact through the f**
/// expansion; +inf when the tail diverges.
double riesz_tail(const DecreasingProfile& d, double t, int n,
                  const QuadratureConfig& cfg = {});

/// Spherical average of the I2 kernel over the shell |y| = s, by direct
/// angular quadrature. Oracle for the Newton identity
/// sigma_{n-1} * max(rho, s)^{2-n}.
double kernel_sphere_average(int n, double rho, double s,
                             const QuadratureConfig& cfg = {});

} // namespace rimax
