#pragma once

#include <cmath>
#include <functional>

namespace rimax {

/// Tolerances and limits shared by every numeric integration in the library.
struct QuadratureConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-14;
    int max_depth = 40;
    /// Truncation bound for purely numeric improper integrals. Only used when
    /// a symbolic tail classification is unavailable (e.g. test oracles).
    double t_max = 1e8;
};

namespace quad {

/// Gauss 7 / Kronrod 15 panel estimate; err receives the scaled G7-K15 gap.
double gk15(const std::function<double(double)>& f, double a, double b, double& err);

/// Adaptive bisection driven by the G7K15 error estimate.
double adaptive(const std::function<double(double)>& f, double a, double b,
                const QuadratureConfig& cfg);

/// Adaptive integration in the log variable: integral of f over (a,b) with
/// 0 < a < b computed as the integral of f(e^v) e^v dv.
double adaptive_log(const std::function<double(double)>& f, double a, double b,
                    const QuadratureConfig& cfg);

/// Fixed-order Gauss-Legendre on [a,b] (order 48); for smooth kernels.
double gauss_legendre(const std::function<double(double)>& f, double a, double b);

} // namespace quad
} // namespace rimax
