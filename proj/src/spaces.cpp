#include "spaces.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rimax {

namespace {

void validate_weight(const PiecewisePowerLog& w, const char* who) {
    if (!w.nonnegative()) throw std::invalid_argument(std::string(who) + ": weight must be non-negative");
}

bool is_one(double x) { return std::fabs(x - 1.0) <= kExponentTie; }

} // namespace

Space::Space(LorentzSpace s) : v_(std::move(s)) {
    const auto& l = std::get<LorentzSpace>(v_);
    if (!(l.p >= 1.0) || !(l.q >= 1.0))
        throw std::invalid_argument("lorentz: need p, q in [1, inf]");
    if (is_one(l.p) && !is_one(l.q))
        throw std::invalid_argument("lorentz: p = 1 admits only q = 1");
    if (l.p == kInf && l.q != kInf)
        throw std::invalid_argument("lorentz: p = inf admits only q = inf");
}

Space::Space(LambdaSpace s) : v_(std::move(s)) {
    const auto& l = std::get<LambdaSpace>(v_);
    if (!(l.p >= 1.0) || l.p == kInf)
        throw std::invalid_argument("lambda: need p in [1, inf)");
    validate_weight(l.weight, "lambda");
    if (!l.weight.head_piece().head_integrable())
        throw std::invalid_argument("lambda: weight must be integrable near 0");
}

Space::Space(MarcinkiewiczStarSpace s) : v_(std::move(s)) {
    validate_weight(std::get<MarcinkiewiczStarSpace>(v_).phi, "marcinkiewicz_star");
}

Space::Space(MarcinkiewiczWeakSpace s) : v_(std::move(s)) {
    validate_weight(std::get<MarcinkiewiczWeakSpace>(v_).phi, "marcinkiewicz_weak");
}

Space::Space(IntersectionSpace s) : v_(std::move(s)) {
    if (std::get<IntersectionSpace>(v_).members.empty())
        throw std::invalid_argument("intersection: needs at least one member");
}

// ---------------------------------------------------------------------------
// Term-sum analysis shared by the sup-type norms.

namespace {

double eval_terms(const std::vector<ExpansionTerm>& ts, double t) {
    double v = 0.0;
    for (const auto& term : ts) v += term.eval(t);
    return v;
}

std::vector<ExpansionTerm> merge_terms(std::vector<ExpansionTerm> ts) {
    std::vector<ExpansionTerm> out;
    for (const auto& t : ts) {
        bool found = false;
        for (auto& o : out) {
            if (exp_eq(o.gamma, t.gamma) && exp_eq(o.delta, t.delta) && o.raw_log == t.raw_log) {
                o.coef += t.coef;
                found = true;
                break;
            }
        }
        if (!found) out.push_back(t);
    }
    double scale = 0.0;
    for (const auto& o : out) scale = std::max(scale, std::fabs(o.coef));
    std::vector<ExpansionTerm> kept;
    for (const auto& o : out)
        if (std::fabs(o.coef) > 1e-13 * scale) kept.push_back(o);
    return kept;
}

struct EndBehavior {
    bool unbounded = false;
    double limit = 0.0;
};

// Behavior as t -> inf of a merged signed term sum that represents a
// non-negative function (so a negative dominant coefficient can only be a
// cancellation artifact and is skipped).
EndBehavior behavior_at_inf(std::vector<ExpansionTerm> merged) {
    std::sort(merged.begin(), merged.end(), [](const ExpansionTerm& a, const ExpansionTerm& b) {
        if (!exp_eq(a.gamma, b.gamma)) return a.gamma > b.gamma;
        return a.delta > b.delta;
    });
    for (const auto& m : merged) {
        if (m.coef == 0.0) continue;
        if (exp_gt(m.gamma, 0.0)) {
            if (m.coef > 0.0) return {true, kInf};
            continue;
        }
        if (exp_lt(m.gamma, 0.0)) return {false, 0.0};
        if (exp_gt(m.delta, 0.0)) {
            if (m.coef > 0.0) return {true, kInf};
            continue;
        }
        if (exp_lt(m.delta, 0.0)) return {false, 0.0};
        return {false, std::max(m.coef, 0.0)};
    }
    return {false, 0.0};
}

// Behavior as t -> 0+ of a term sum on a head interval (0, b). By
// construction such sums are pure powers (no raw logs, inert log factor).
EndBehavior behavior_at_zero(std::vector<ExpansionTerm> merged) {
    std::sort(merged.begin(), merged.end(), [](const ExpansionTerm& a, const ExpansionTerm& b) {
        return a.gamma < b.gamma;
    });
    for (const auto& m : merged) {
        if (m.coef == 0.0) continue;
        if (exp_lt(m.gamma, 0.0)) {
            if (m.coef > 0.0) return {true, kInf};
            continue;
        }
        if (exp_gt(m.gamma, 0.0)) return {false, 0.0};
        return {false, std::max(m.coef, 0.0)};
    }
    return {false, 0.0};
}

// Grid + local refinement maximum of a callable over [a, b], 0 < a < b < inf.
double numeric_sup_fn(const std::function<double(double)>& g, double a, double b) {
    if (!(a < b)) return g(a);
    const double la = std::log(a), lb = std::log(b);
    const int npts = std::clamp(static_cast<int>((lb - la) / std::log(10.0) * 24.0), 16, 600);

    double best = -kInf;
    int best_i = 0;
    for (int i = 0; i <= npts; ++i) {
        const double x = std::exp(la + (lb - la) * i / npts);
        const double v = g(x);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    // Ternary refinement between the neighbors of the best grid point.
    double l = la + (lb - la) * std::max(0, best_i - 1) / npts;
    double r = la + (lb - la) * std::min(npts, best_i + 1) / npts;
    for (int it = 0; it < 80; ++it) {
        const double m1 = l + (r - l) / 3.0, m2 = r - (r - l) / 3.0;
        if (g(std::exp(m1)) < g(std::exp(m2))) l = m1; else r = m2;
    }
    return std::max(best, g(std::exp(0.5 * (l + r))));
}

double sup_terms_numeric(const std::vector<ExpansionTerm>& ts, double a, double b) {
    return numeric_sup_fn([&ts](double t) { return eval_terms(ts, t); }, a, b);
}

} // namespace

double marcinkiewicz_star_norm(const DecreasingProfile& d, const PiecewisePowerLog& phi) {
    const DoublestarExpansion ex = doublestar_expansion(d);

    std::vector<double> bounds;
    std::merge(ex.bounds.begin(), ex.bounds.end(), phi.bounds().begin(), phi.bounds().end(),
               std::back_inserter(bounds));
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

    double best = 0.0;
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        const double lo = bounds[i], hi = bounds[i + 1];
        double probe;
        if (hi == kInf) probe = lo == 0.0 ? 1.0 : 2.0 * lo;
        else if (lo == 0.0) probe = 0.5 * hi;
        else probe = 0.5 * (lo + hi);

        // f** terms on this interval, multiplied through by the phi piece.
        const auto bit = std::upper_bound(ex.bounds.begin(), ex.bounds.end(), probe);
        const std::size_t ei = static_cast<std::size_t>(bit - ex.bounds.begin()) - 1;
        const auto& pp = phi.pieces()[phi.piece_index(probe)];
        if (pp.coef == 0.0) continue;
        std::vector<ExpansionTerm> ts;
        for (const auto& t : ex.terms[ei])
            ts.push_back({t.coef * pp.coef, t.gamma + pp.alpha, t.delta + pp.beta, t.raw_log});

        if (lo == 0.0) {
            const EndBehavior eb = behavior_at_zero(merge_terms(ts));
            if (eb.unbounded) return kInf;
            best = std::max(best, eb.limit);
            if (hi != kInf) best = std::max(best, std::max(eval_terms(ts, hi),
                                                           sup_terms_numeric(ts, hi * 1e-10, hi)));
        }
        if (hi == kInf) {
            const EndBehavior eb = behavior_at_inf(merge_terms(ts));
            if (eb.unbounded) return kInf;
            best = std::max(best, eb.limit);
            if (lo != 0.0)
                best = std::max(best, sup_terms_numeric(ts, lo, lo * 1e12));
        }
        if (lo != 0.0 && hi != kInf)
            best = std::max(best, std::max({eval_terms(ts, lo), eval_terms(ts, hi),
                                            sup_terms_numeric(ts, lo, hi)}));
    }
    return best;
}

// ---------------------------------------------------------------------------

double space_norm(const Space& X, const DecreasingProfile& d, const QuadratureConfig& cfg) {
    struct Visitor {
        const DecreasingProfile& d;
        const QuadratureConfig& cfg;

        double operator()(const LorentzSpace& s) const {
            const double inv_p = s.p == kInf ? 0.0 : 1.0 / s.p;
            if (s.q == kInf)
                return d.body().multiply(PiecewisePowerLog::single({1.0, inv_p, 0.0})).sup(0.0, kInf);
            const auto integrand =
                d.body().pow(s.q).multiply(PiecewisePowerLog::single({1.0, s.q * inv_p - 1.0, 0.0}));
            return std::pow(integrand.integrate(0.0, kInf, cfg), 1.0 / s.q);
        }
        double operator()(const LambdaSpace& s) const {
            const auto integrand = d.body().pow(s.p).multiply(s.weight);
            return std::pow(integrand.integrate(0.0, kInf, cfg), 1.0 / s.p);
        }
        double operator()(const MarcinkiewiczStarSpace& s) const {
            return marcinkiewicz_star_norm(d, s.phi);
        }
        double operator()(const MarcinkiewiczWeakSpace& s) const {
            return d.body().multiply(s.phi).sup(0.0, kInf);
        }
        double operator()(const IntersectionSpace& s) const {
            double v = 0.0;
            for (const auto& m : s.members) v = std::max(v, space_norm(m, d, cfg));
            return v;
        }
    };
    return std::visit(Visitor{d, cfg}, X.desc());
}

double fundamental_function(const Space& X, double s) {
    if (!(s > 0.0) || s == kInf) throw std::domain_error("fundamental_function: need 0 < s < inf");
    struct Visitor {
        double s;
        double operator()(const LorentzSpace& x) const {
            if (x.p == kInf) return x.q == kInf ? 1.0 : kInf;
            if (x.q == kInf) return std::pow(s, 1.0 / x.p);
            return std::pow(x.p / x.q, 1.0 / x.q) * std::pow(s, 1.0 / x.p);
        }
        double operator()(const LambdaSpace& x) const {
            return std::pow(x.weight.integrate(0.0, s), 1.0 / x.p);
        }
        double operator()(const MarcinkiewiczStarSpace& x) const {
            const double left = x.phi.sup(0.0, s);
            const double right = x.phi.multiply(PiecewisePowerLog::single({1.0, -1.0, 0.0})).sup(s, kInf);
            return std::max(left, s * right);
        }
        double operator()(const MarcinkiewiczWeakSpace& x) const { return x.phi.sup(0.0, s); }
        double operator()(const IntersectionSpace& x) const {
            double v = 0.0;
            for (const auto& m : x.members) v = std::max(v, fundamental_function(m, s));
            return v;
        }
    };
    return std::visit(Visitor{s}, X.desc());
}

EndExponents end_exponents(const Space& X) {
    struct Visitor {
        EndExponents operator()(const LorentzSpace& x) const {
            if (x.p == kInf && x.q != kInf)
                throw std::invalid_argument("lorentz: p = inf with finite q is degenerate");
            const double e = x.p == kInf ? 0.0 : 1.0 / x.p;
            return {e, e};
        }
        EndExponents operator()(const LambdaSpace& x) const {
            const auto& head = x.weight.head_piece();
            if (head.coef <= 0.0)
                throw std::invalid_argument("lambda: weight vanishing near 0 is degenerate");
            const auto& tail = x.weight.tail_piece();
            double tail_exp = 0.0;
            if (!tail.tail_integrable() && exp_gt(tail.alpha, -1.0))
                tail_exp = (tail.alpha + 1.0) / x.p;
            return {(head.alpha + 1.0) / x.p, tail_exp};
        }
        EndExponents operator()(const MarcinkiewiczStarSpace& x) const {
            const auto& head = x.phi.head_piece();
            const auto& tail = x.phi.tail_piece();
            if (head.coef <= 0.0 || exp_lt(head.alpha, 0.0))
                throw std::invalid_argument("marcinkiewicz_star: phi must be positive and "
                                            "non-decreasing near 0");
            if (tail.coef > 0.0 &&
                (exp_gt(tail.alpha, 1.0) || (exp_eq(tail.alpha, 1.0) && exp_gt(tail.beta, 0.0))))
                throw std::invalid_argument("marcinkiewicz_star: phi(t)/t unbounded at infinity "
                                            "makes the space degenerate");
            const double gt = tail.coef > 0.0 ? tail.alpha : 0.0;
            return {std::min(head.alpha, 1.0), std::max(0.0, gt)};
        }
        EndExponents operator()(const MarcinkiewiczWeakSpace& x) const {
            const auto& head = x.phi.head_piece();
            const auto& tail = x.phi.tail_piece();
            if (head.coef <= 0.0 || exp_lt(head.alpha, 0.0))
                throw std::invalid_argument("marcinkiewicz_weak: phi must be positive and "
                                            "non-decreasing near 0");
            const double gt = tail.coef > 0.0 ? tail.alpha : 0.0;
            return {head.alpha, std::max(0.0, gt)};
        }
        EndExponents operator()(const IntersectionSpace& x) const {
            EndExponents e{kInf, -kInf};
            for (const auto& m : x.members) {
                const EndExponents em = end_exponents(m);
                e.head = std::min(e.head, em.head);
                e.tail = std::max(e.tail, em.tail);
            }
            return e;
        }
    };
    return std::visit(Visitor{}, X.desc());
}

double dilation_function(const Space& X, double s) {
    if (!(s > 0.0) || s == kInf) throw std::domain_error("dilation_function: need 0 < s < inf");
    if (s == 1.0) return 1.0;

    const EndExponents e = end_exponents(X);
    double best = std::max(std::pow(s, e.head), std::pow(s, e.tail));
    for (int k = -160; k <= 160; ++k) {
        const double t = std::pow(2.0, 0.25 * k);
        const double denom = fundamental_function(X, t);
        if (!(denom > 0.0) || denom == kInf) continue;
        best = std::max(best, fundamental_function(X, t * s) / denom);
    }
    return best;
}

IndexReport fundamental_indices(const Space& X) {
    const EndExponents e = end_exponents(X);

    IndexReport r;
    r.beta_lower = std::min(e.head, e.tail);
    r.beta_upper = std::max(e.head, e.tail);

    r.grid_upper = kInf;
    r.grid_lower = -kInf;
    for (int k = 1; k <= r.grid_kmax; ++k) {
        const double su = std::pow(2.0, k);
        const double vu = std::log(dilation_function(X, su)) / std::log(su);
        if (vu < r.grid_upper) {
            r.grid_upper = vu;
            r.grid_upper_arg = su;
        }
        const double sl = std::pow(2.0, -k);
        const double vl = std::log(dilation_function(X, sl)) / std::log(sl);
        if (vl > r.grid_lower) {
            r.grid_lower = vl;
            r.grid_lower_arg = sl;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Hybrid norms: numeric head + exact power-log tail.

namespace {

// Lower cutoff so that the omitted mass of an integrand ~ t^{e-1} relative
// to the kept part is below ~1e-18.
double head_cutoff(double t_split, double positive_exponent) {
    const double frac = std::pow(1e-18, 1.0 / std::max(positive_exponent, 1e-3));
    return t_split * std::clamp(frac, 1e-280 / t_split, 1e-4);
}

double sup_product_head(const std::function<double(double)>& f, double limit0,
                        const PowerLogPiece& phi_piece, double lo, double hi) {
    // sup over (lo, hi] of f(t) * phi_piece(t) with lo possibly 0.
    double best = 0.0;
    if (lo == 0.0) {
        if (phi_piece.coef > 0.0) {
            if (phi_piece.alpha < -kExponentTie) {
                if (limit0 > 0.0) return kInf;
            } else if (std::fabs(phi_piece.alpha) <= kExponentTie) {
                best = std::max(best, limit0 * phi_piece.coef);
            }
        }
        lo = hi * 1e-12;
    }
    best = std::max(best, numeric_sup_fn([&](double t) { return f(t) * phi_piece.eval(t); }, lo, hi));
    return best;
}

} // namespace

double norm_hybrid(const Space& X, const HybridProfile& f, const QuadratureConfig& cfg) {
    struct Visitor {
        const HybridProfile& f;
        const QuadratureConfig& cfg;

        double operator()(const LorentzSpace& s) const {
            const double inv_p = s.p == kInf ? 0.0 : 1.0 / s.p;
            if (s.q == kInf) {
                const PowerLogPiece weight{1.0, inv_p, 0.0};
                double best = sup_product_head(f.head, f.head_limit0, weight, 0.0, f.t_split);
                const PowerLogPiece tailp{f.tail.coef, f.tail.alpha + inv_p, f.tail.beta};
                return std::max(best, sup_piece(tailp, f.t_split, kInf));
            }
            if (s.p == kInf) return kInf; // int_0 t^{-1} of a non-vanishing head diverges
            const double e = s.q * inv_p;
            const double t0 = head_cutoff(f.t_split, e);
            const double head = quad::adaptive_log(
                [&](double t) { return std::pow(f.head(t), s.q) * std::pow(t, e - 1.0); },
                t0, f.t_split, cfg);
            const PowerLogPiece tailp{std::pow(f.tail.coef, s.q),
                                      f.tail.alpha * s.q + e - 1.0, f.tail.beta * s.q};
            const double tail = integrate_piece(tailp, f.t_split, kInf, cfg);
            return std::pow(head + tail, 1.0 / s.q);
        }

        double operator()(const LambdaSpace& s) const {
            double total = 0.0;
            const auto& w = s.weight;
            for (std::size_t i = 0; i < w.piece_count(); ++i) {
                const auto& wp = w.pieces()[i];
                if (wp.coef == 0.0) continue;
                // head side
                double lo = std::max(w.bounds()[i], 0.0);
                double hi = std::min(w.bounds()[i + 1], f.t_split);
                if (lo < hi) {
                    const double start =
                        lo == 0.0 ? std::min(head_cutoff(f.t_split, wp.alpha + 1.0), 0.5 * hi)
                                  : lo;
                    total += quad::adaptive_log(
                        [&](double t) { return std::pow(f.head(t), s.p) * wp.eval(t); },
                        start, hi, cfg);
                }
                // exact tail side
                lo = std::max(w.bounds()[i], f.t_split);
                hi = w.bounds()[i + 1];
                if (lo < hi) {
                    const PowerLogPiece prod{std::pow(f.tail.coef, s.p) * wp.coef,
                                             f.tail.alpha * s.p + wp.alpha,
                                             f.tail.beta * s.p + wp.beta};
                    const double part = integrate_piece(prod, lo, hi, cfg);
                    if (part == kInf) return kInf;
                    total += part;
                }
            }
            return std::pow(total, 1.0 / s.p);
        }

        double operator()(const MarcinkiewiczWeakSpace& s) const {
            double best = 0.0;
            const auto& phi = s.phi;
            for (std::size_t i = 0; i < phi.piece_count(); ++i) {
                const auto& pp = phi.pieces()[i];
                if (pp.coef == 0.0) continue;
                double lo = phi.bounds()[i];
                double hi = std::min(phi.bounds()[i + 1], f.t_split);
                if (lo < hi)
                    best = std::max(best, sup_product_head(f.head, f.head_limit0, pp, lo, hi));
                lo = std::max(phi.bounds()[i], f.t_split);
                hi = phi.bounds()[i + 1];
                if (lo < hi) {
                    const PowerLogPiece prod{f.tail.coef * pp.coef, f.tail.alpha + pp.alpha,
                                             f.tail.beta + pp.beta};
                    best = std::max(best, sup_piece(prod, lo, hi));
                }
                if (best == kInf) return kInf;
            }
            return best;
        }

        double operator()(const MarcinkiewiczStarSpace& s) const {
            if (!(f.head_limit0 < kInf))
                throw std::invalid_argument("norm_hybrid: f** of an unbounded head is not supported");
            const double mass_head = quad::adaptive([&](double t) { return f.head(t); },
                                                    0.0, f.t_split, cfg);
            auto star2 = [&](double t) {
                if (t <= f.t_split)
                    return quad::adaptive([&](double u) { return f.head(u); }, 0.0, t, cfg) / t;
                return (mass_head + integrate_piece(f.tail, f.t_split, t, cfg)) / t;
            };

            // Exact finiteness at infinity from the tail expansion of f**.
            std::vector<ExpansionTerm> tail_terms;
            const double e = f.tail.alpha + 1.0;
            if (f.tail.beta != 0.0)
                throw std::invalid_argument("norm_hybrid: power-log tails with beta != 0 are not "
                                            "supported for f** norms");
            if (exp_eq(f.tail.alpha, -1.0)) {
                tail_terms.push_back({mass_head - f.tail.coef * std::log(f.t_split) - f.tail.coef,
                                      -1.0, 0.0, 0});
                tail_terms.push_back({f.tail.coef, -1.0, 1.0, 0});
            } else {
                tail_terms.push_back({mass_head - f.tail.coef * std::pow(f.t_split, e) / e, -1.0, 0.0, 0});
                tail_terms.push_back({f.tail.coef / e, f.tail.alpha, 0.0, 0});
            }
            const auto& tp = s.phi.tail_piece();
            std::vector<ExpansionTerm> prod;
            for (const auto& t : tail_terms)
                prod.push_back({t.coef * tp.coef, t.gamma + tp.alpha, t.delta + tp.beta, 0});
            const EndBehavior eb = behavior_at_inf(merge_terms(prod));
            if (eb.unbounded) return kInf;

            double best = eb.limit;
            // Head limit.
            const auto& hp = s.phi.head_piece();
            if (hp.coef > 0.0) {
                if (hp.alpha < -kExponentTie && f.head_limit0 > 0.0) return kInf;
                if (std::fabs(hp.alpha) <= kExponentTie)
                    best = std::max(best, f.head_limit0 * hp.coef);
            }
            const double span_hi = std::max(f.t_split, s.phi.bounds()[s.phi.piece_count() - 1]) * 1e8;
            best = std::max(best, numeric_sup_fn(
                [&](double t) { return star2(t) * s.phi.eval(t); }, f.t_split * 1e-10, span_hi));
            return best;
        }

        double operator()(const IntersectionSpace& s) const {
            double v = 0.0;
            for (const auto& m : s.members) v = std::max(v, norm_hybrid(m, f, cfg));
            return v;
        }
    };
    return std::visit(Visitor{f, cfg}, X.desc());
}

} // namespace rimax
