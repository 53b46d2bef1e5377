#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "rearrange.hpp"

namespace rimax {

/// Lorentz space L^{p,q}: ||f|| = (int (t^{1/p} f*(t))^q dt/t)^{1/q};
/// q = inf means sup_t t^{1/p} f*(t). p = q = inf is L^inf.
struct LorentzSpace {
    double p = 2.0;
    double q = 2.0;
};

/// Lorentz Lambda space: ||f|| = (int f*(t)^p w(t) dt)^{1/p}. Whether w
/// makes this a Banach norm (the B_p condition) is not verified here;
/// assume_banach records the caller's claim.
struct LambdaSpace {
    double p = 1.0;
    PiecewisePowerLog weight = PiecewisePowerLog::constant(1.0);
    bool assume_banach = true;
};

/// Marcinkiewicz-type space through f**: ||f|| = sup_t f**(t) phi(t).
struct MarcinkiewiczStarSpace {
    PiecewisePowerLog phi;
};

/// Weak-type membership functional sup_t f*(t) phi(t). Not a norm in
/// general; used as a membership test only.
struct MarcinkiewiczWeakSpace {
    PiecewisePowerLog phi;
};

class Space;

struct IntersectionSpace {
    std::vector<Space> members;
};

/// Power exponents of the fundamental function phi_X at its two ends:
/// phi_X(s) ~ c s^head as s -> 0 and phi_X(s) ~ c s^tail (up to slowly
/// varying log factors) as s -> inf.
struct EndExponents {
    double head = 0.0;
    double tail = 0.0;
};

/// Fundamental indices plus the dyadic-grid diagnostics that show how far
/// the finite-grid inf/sup still is from the limit values.
struct IndexReport {
    double beta_lower = 0.0;
    double beta_upper = 0.0;
    double grid_upper = 0.0;      // min over s = 2..2^40 of log M(s)/log s
    double grid_upper_arg = 0.0;  // attaining s
    double grid_lower = 0.0;      // max over s = 2^-1..2^-40 of log M(s)/log s
    double grid_lower_arg = 0.0;
    int grid_kmax = 40;
};

/// Validated tagged union of the supported r.i. space families.
class Space {
public:
    using Variant = std::variant<LorentzSpace, LambdaSpace, MarcinkiewiczStarSpace,
                                 MarcinkiewiczWeakSpace, IntersectionSpace>;

    explicit Space(LorentzSpace s);
    explicit Space(LambdaSpace s);
    explicit Space(MarcinkiewiczStarSpace s);
    explicit Space(MarcinkiewiczWeakSpace s);
    explicit Space(IntersectionSpace s);

    const Variant& desc() const { return v_; }

    template <typename T> const T* get_if() const { return std::get_if<T>(&v_); }

private:
    Variant v_;
};

/// ||d||_X through the representation on (0, inf). Finiteness is decided
/// symbolically; +inf is a legitimate value (membership failure).
double space_norm(const Space& X, const DecreasingProfile& d, const QuadratureConfig& cfg = {});

/// phi_X(s) = ||chi_[0,s]||_X, in closed form per family.
double fundamental_function(const Space& X, double s);

/// M_X(s) = sup_t phi_X(ts)/phi_X(t), computed over the geometric grid
/// t = 2^{k/4}, k in [-160, 160], augmented by the exact t -> 0 and
/// t -> inf limits of the ratio. A certified lower bound of the sup.
double dilation_function(const Space& X, double s);

/// Power exponents of phi_X at 0 and inf. Throws for degenerate
/// descriptors whose fundamental function is not finite and positive.
EndExponents end_exponents(const Space& X);

/// beta_lower = lim_{s->0} log M_X(s)/log s and
/// beta_upper = lim_{s->inf} log M_X(s)/log s. By submultiplicativity of
/// M_X the limits equal the defining sup/inf; for power-log fundamental
/// functions they are min/max of the end exponents. The dyadic-grid values
/// are reported as diagnostics (they converge only logarithmically when
/// phi_X carries slowly varying factors).
IndexReport fundamental_indices(const Space& X);

/// sup_t f**(t) phi(t) for a pure-power decreasing profile, with exact
/// finiteness from the asymptotic term analysis.
double marcinkiewicz_star_norm(const DecreasingProfile& d, const PiecewisePowerLog& phi);

/// Profile given numerically on (0, t_split] and exactly (one power-log
/// term) on (t_split, inf). Lets norms of functions outside the piecewise
/// algebra keep an exact tail classification.
struct HybridProfile {
    std::function<double(double)> head;
    double head_limit0 = 0.0;
    double t_split = 1.0;
    PowerLogPiece tail;
};

double norm_hybrid(const Space& X, const HybridProfile& f, const QuadratureConfig& cfg = {});

} // namespace rimax
