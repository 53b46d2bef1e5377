#include "decide.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rimax {

const char* to_string(Verdict v) {
    return v == Verdict::FixedPointExists ? "FixedPointExists" : "NoFixedPoint";
}

const char* to_string(Method m) {
    switch (m) {
        case Method::DimensionRule: return "DimensionRule";
        case Method::Condition3Exact: return "Condition3Exact";
        case Method::LorentzRule: return "LorentzRule";
        case Method::LambdaRule: return "LambdaRule";
        case Method::IndexSufficient: return "IndexSufficient";
        case Method::IndexNecessary: return "IndexNecessary";
    }
    return "?";
}

const char* to_string(IndexStatus s) {
    switch (s) {
        case IndexStatus::GuaranteedNontrivial: return "GuaranteedNontrivial";
        case IndexStatus::GuaranteedTrivial: return "GuaranteedTrivial";
        case IndexStatus::Indeterminate: return "Indeterminate";
    }
    return "?";
}

DecreasingProfile critical_profile(int n) {
    if (n < 3) throw std::invalid_argument("critical_profile: need n >= 3");
    const double a = 2.0 / n - 1.0;
    return DecreasingProfile(PiecewisePowerLog({0.0, 1.0, kInf},
                                               {{1.0, 0.0, 0.0}, {1.0, a, 0.0}}));
}

PiecewisePowerLog minimal_weight(int n) {
    if (n < 3) throw std::invalid_argument("minimal_weight: need n >= 3");
    const double a = 1.0 - 2.0 / n;
    return PiecewisePowerLog({0.0, 1.0, kInf}, {{1.0, 0.0, 0.0}, {1.0, a, 0.0}});
}

Space minimal_space(int n) {
    return Space(MarcinkiewiczWeakSpace{minimal_weight(n)});
}

RadialProfile critical_radial(int n) {
    if (n < 3) throw std::invalid_argument("critical_radial: need n >= 3");
    return RadialProfile(n, PiecewisePowerLog({0.0, 1.0, kInf},
                                              {{1.0, 0.0, 0.0}, {1.0, 2.0 - n, 0.0}}));
}

Space two_exponent_space(double a, double b) {
    return Space(MarcinkiewiczStarSpace{
        PiecewisePowerLog({0.0, 1.0, kInf}, {{1.0, a, 0.0}, {1.0, b, 0.0}})});
}

Space log_corrected_space(int n, double logexp) {
    if (n < 3) throw std::invalid_argument("log_corrected_space: need n >= 3");
    const double a = 1.0 - 2.0 / n;
    return Space(MarcinkiewiczStarSpace{
        PiecewisePowerLog({0.0, 1.0, kInf}, {{1.0, a, 0.0}, {1.0, a, logexp}})});
}

bool lambda_rule(int n, double p, const PiecewisePowerLog& w) {
    if (n < 3) throw std::invalid_argument("lambda_rule: need n >= 3");
    if (!(p >= 1.0)) throw std::invalid_argument("lambda_rule: need p >= 1");
    const auto prod = w.multiply(PiecewisePowerLog::single({1.0, -p * (1.0 - 2.0 / n), 0.0}));
    return prod.tail_piece().tail_integrable();
}

IndexVerdict index_test(int n, const Space& X, double tolerance) {
    if (n < 3) throw std::invalid_argument("index_test: need n >= 3");
    IndexVerdict v;
    v.threshold = 1.0 - 2.0 / n;
    v.tolerance = tolerance;
    v.indices = fundamental_indices(X);
    if (v.indices.beta_upper < v.threshold - tolerance)
        v.status = IndexStatus::GuaranteedNontrivial;
    else if (v.indices.beta_lower > v.threshold + tolerance)
        v.status = IndexStatus::GuaranteedTrivial;
    else
        v.status = IndexStatus::Indeterminate;
    return v;
}

Decision decide_fixed_point(int n, const Space& X) {
    if (n < 1) throw std::invalid_argument("decide_fixed_point: need n >= 1");

    Decision dec;
    dec.dimension = n;
    dec.threshold = 1.0 - 2.0 / n;

    if (n <= 2) {
        dec.verdict = Verdict::NoFixedPoint;
        dec.method = Method::DimensionRule;
        dec.notes = "dimension <= 2: the only positive super-harmonic functions are constants";
        return dec;
    }

    const DecreasingProfile h = critical_profile(n);
    dec.norm_h = space_norm(X, h);
    dec.verdict = dec.norm_h < kInf ? Verdict::FixedPointExists : Verdict::NoFixedPoint;
    dec.method = Method::Condition3Exact;

    std::ostringstream notes;

    if (const auto* lor = X.get_if<LorentzSpace>()) {
        const double pc = static_cast<double>(n) / (n - 2);
        const bool rule = lor->p == kInf || exp_gt(lor->p, pc) ||
                          (exp_eq(lor->p, pc) && lor->q == kInf);
        if (rule != dec.exists())
            throw std::logic_error("decide_fixed_point: Lorentz rule and exact norm test disagree "
                                   "(internal defect)");
        dec.method = Method::LorentzRule;
        notes << "closed-form Lorentz rule agrees with the exact norm test; ";
    } else if (const auto* lam = X.get_if<LambdaSpace>()) {
        const bool rule = lambda_rule(n, lam->p, lam->weight);
        if (rule != dec.exists())
            throw std::logic_error("decide_fixed_point: Lambda rule and exact norm test disagree "
                                   "(internal defect)");
        dec.method = Method::LambdaRule;
        notes << "tail-integral rule agrees with the exact norm test";
        if (!lam->assume_banach) notes << " (Banach property not asserted)";
        notes << "; ";
        if (!dec.exists() && lam->weight.tail_log_exponent() == 0.0) {
            // The dimension threshold is exact for power tails: the rule
            // integrand has tail exponent alpha - p(1 - 2/n).
            const double gap = lam->p - 1.0 - lam->weight.tail_exponent();
            if (gap > kExponentTie)
                notes << "tail rule would hold for every n > " << 2.0 * lam->p / gap << "; ";
            else
                notes << "tail rule fails in every dimension; ";
        }
    }

    try {
        const IndexVerdict iv = index_test(n, X);
        dec.beta_lower = iv.indices.beta_lower;
        dec.beta_upper = iv.indices.beta_upper;
        notes << "index test: " << to_string(iv.status);
    } catch (const std::exception&) {
        notes << "index test unavailable (degenerate fundamental function)";
    }
    dec.notes = notes.str();
    return dec;
}

Decision proposition_family(int n, double a, double b) {
    if (n < 3) throw std::invalid_argument("proposition_family: need n >= 3");
    if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0))
        throw std::invalid_argument("proposition_family: need a, b in [0, 1]");
    Decision dec = decide_fixed_point(n, two_exponent_space(a, b));
    const bool expected = b <= 1.0 - 2.0 / n + kExponentTie;
    if (dec.exists() != expected)
        throw std::logic_error("proposition_family: verdict does not match b <= 1 - 2/n "
                               "(internal defect)");
    return dec;
}

Decision decide_by_index(int n, const Space& X, double tolerance) {
    if (n < 1) throw std::invalid_argument("decide_by_index: need n >= 1");
    if (n <= 2) return decide_fixed_point(n, X);

    const IndexVerdict iv = index_test(n, X, tolerance);
    if (iv.status == IndexStatus::Indeterminate) return decide_fixed_point(n, X);

    Decision dec;
    dec.dimension = n;
    dec.threshold = iv.threshold;
    dec.beta_lower = iv.indices.beta_lower;
    dec.beta_upper = iv.indices.beta_upper;
    if (iv.status == IndexStatus::GuaranteedNontrivial) {
        dec.verdict = Verdict::FixedPointExists;
        dec.method = Method::IndexSufficient;
        dec.notes = "beta_upper < 1 - 2/n";
    } else {
        dec.verdict = Verdict::NoFixedPoint;
        dec.method = Method::IndexNecessary;
        dec.notes = "beta_lower > 1 - 2/n";
    }
    return dec;
}

} // namespace rimax
