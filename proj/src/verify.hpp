#pragma once

#include <string>
#include <vector>

#include "decide.hpp"

namespace rimax {

/// Outcome of one numerical check: bounded-ratio certification on a finite
/// grid, never a claim of proof. The grid, the worst value and the bound it
/// was held against are always part of the report.
struct CheckReport {
    std::string check;
    int dimension = 0;
    bool pass = false;
    double worst = 0.0; // worst ratio / violation over the grid
    double bound = 0.0; // the value `worst` is compared against
    std::string notes;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Radial candidate paired with the machinery to average it over balls.
struct RadialCandidate {
    std::string name;
    int dimension = 3;
    std::function<double(double)> value;
    std::function<double(double, double)> average; // (rho, r)
    std::vector<double> kinks;
};

/// min(1, rho^{2-n}) through the exact piecewise path.
RadialCandidate candidate_power(int n, const QuadratureConfig& cfg = {});
/// The Riesz potential of the indicator of the unit-volume ball.
RadialCandidate candidate_riesz_ball(int n, const QuadratureConfig& cfg = {});

/// Mean-value inequality sweep: average(rho, r) <= f(rho)(1 + mean_tol) on
/// the product grid, plus convergence of the r -> 0 average at radii away
/// from kinks.
CheckReport check_superharmonic(const RadialCandidate& f, const GeometricGrid& rho_grid,
                                const GeometricGrid& r_grid, double mean_tol = 1e-6,
                                double limit_tol = 1e-4, double limit_r = 1e-3);

/// Rearrangement sandwich around the Riesz potential: the bracket
/// t^{2/n-1} int_0^t f* + int_t^inf f* s^{2/n-1} ds and the tail functional
/// stay within a fixed ratio of (I2 f^0)*(t) over the t grid.
CheckReport check_oneil(const DecreasingProfile& f, int n, const GeometricGrid& t_grid,
                        double ratio_ceiling = 10.0, const QuadratureConfig& cfg = {});

/// Fundamental function of the tail-functional space: compares
/// norm_X(tail_T chi_[0,s]) against s^{2/n} ||P chi_[0,s]||_X on the s grid;
/// the literal s^{n/2} scaling is evaluated alongside and its drift recorded.
CheckReport check_lemma_phi(const Space& X, int n, const std::vector<double>& s_grid,
                            double ratio_ceiling = 10.0, const QuadratureConfig& cfg = {});

/// Embedding of the minimal space: norm_X(d) <= ||W^{-1}||_X ||d||_minimal
/// for every corpus profile.
CheckReport check_embedding(int n, const Space& X,
                            const std::vector<std::pair<std::string, DecreasingProfile>>& corpus,
                            double tol = 1e-9, const QuadratureConfig& cfg = {});

/// Named decreasing profiles exercising every closed form: indicators,
/// steps, the critical profile, its rearranged radial version, a decaying
/// power tail.
std::vector<std::pair<std::string, DecreasingProfile>> corpus_profiles(int n);

/// Subset of the corpus with finite Riesz potentials (for the sandwich check).
std::vector<std::pair<std::string, DecreasingProfile>> corpus_profiles_integrable(int n);

/// The default bundle behind `verify all`.
std::vector<CheckReport> verify_all(int n, const QuadratureConfig& cfg = {});

/// Dispatch by name: superharmonic | oneil | lemma-phi | embedding | all.
/// space optionally overrides the default space set for lemma-phi and
/// embedding. tol (when > 0) overrides the check's headline tolerance: the
/// mean-value tolerance for superharmonic, the ratio ceiling for oneil and
/// lemma-phi, the slack for embedding.
std::vector<CheckReport> run_checks(const std::string& name, int n, const Space* space,
                                    double tol = 0.0, const QuadratureConfig& cfg = {});

} // namespace rimax
