#pragma once

#include <string>

#include "operators.hpp"
#include "spaces.hpp"

namespace rimax {

enum class Verdict { FixedPointExists, NoFixedPoint };

enum class Method {
    DimensionRule,   // n <= 2: only constant super-harmonic functions
    Condition3Exact, // finiteness of || chi_[0,1] + t^{2/n-1} chi_[1,inf) ||_X
    LorentzRule,     // closed-form p/q rule, cross-checked against the norm test
    LambdaRule,      // tail integral rule, cross-checked against the norm test
    IndexSufficient, // beta_upper < 1 - 2/n forces a fixed point
    IndexNecessary,  // beta_lower > 1 - 2/n excludes one
};

const char* to_string(Verdict v);
const char* to_string(Method m);

struct Decision {
    Verdict verdict = Verdict::NoFixedPoint;
    Method method = Method::Condition3Exact;
    int dimension = 0;
    double norm_h = std::numeric_limits<double>::quiet_NaN();
    double beta_lower = std::numeric_limits<double>::quiet_NaN();
    double beta_upper = std::numeric_limits<double>::quiet_NaN();
    double threshold = std::numeric_limits<double>::quiet_NaN();
    std::string notes;

    bool exists() const { return verdict == Verdict::FixedPointExists; }
};

enum class IndexStatus { GuaranteedNontrivial, GuaranteedTrivial, Indeterminate };

const char* to_string(IndexStatus s);

struct IndexVerdict {
    IndexStatus status = IndexStatus::Indeterminate;
    IndexReport indices;
    double threshold = 0.0;
    double tolerance = 1e-2;
};

/// chi_[0,1](t) + t^{2/n-1} chi_[1,inf)(t): the decreasing profile whose
/// membership in the representation space is equivalent to the fixed-point
/// property in dimension n >= 3.
DecreasingProfile critical_profile(int n);

/// W(t) = max(1, t^{1-2/n}), the reciprocal of the critical profile.
PiecewisePowerLog minimal_weight(int n);

/// The minimal space containing a non-constant fixed point, as the weak-type
/// membership functional sup_t f*(t) W(t).
Space minimal_space(int n);

/// The radial profile min(1, rho^{2-n}); super-harmonic for n >= 3.
RadialProfile critical_radial(int n);

/// sup_t f**(t) (t^a on (0,1], t^b on (1,inf)) membership space.
Space two_exponent_space(double a, double b);

/// sup_t f**(t) t^{1-2/n} (1+log+ t)^{logexp} membership space.
Space log_corrected_space(int n, double logexp);

/// The decision engine. The verdict always comes from the exact finiteness
/// of ||critical_profile(n)||_X; for Lorentz and Lambda descriptors the
/// closed-form rules are evaluated as well and any disagreement with the
/// exact test raises an internal defect error.
Decision decide_fixed_point(int n, const Space& X);

/// Closed-form Lambda rule: finiteness of int_1^inf w(t) t^{-p(1-2/n)} dt.
bool lambda_rule(int n, double p, const PiecewisePowerLog& w);

/// Compares the fundamental indices against 1 - 2/n with a tolerance band;
/// Indeterminate is an honest outcome and never coerced.
IndexVerdict index_test(int n, const Space& X, double tolerance = 1e-2);

/// Builds the two-exponent space and decides it, asserting the verdict
/// equals b <= 1 - 2/n (boundary included).
Decision proposition_family(int n, double a, double b);

/// Index-only decision: the index verdict when determinate (methods
/// IndexSufficient / IndexNecessary), falling back to the exact engine
/// otherwise.
Decision decide_by_index(int n, const Space& X, double tolerance = 1e-2);

} // namespace rimax
