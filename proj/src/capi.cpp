#include "rimax/rimax.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "descriptor_io.hpp"

using namespace rimax;

struct rimax_space {
    Space space;
};

struct rimax_profile {
    ParsedProfile profile;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
rimax_status guarded(Fn&& fn) {
    try {
        fn();
        return RIMAX_OK;
    } catch (const ParseError& e) {
        g_last_error = e.what();
        return RIMAX_ERR_PARSE;
    } catch (const std::domain_error& e) {
        g_last_error = e.what();
        return RIMAX_ERR_DOMAIN;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return RIMAX_ERR_INVALID_ARGUMENT;
    } catch (const std::logic_error& e) {
        g_last_error = e.what();
        return RIMAX_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return RIMAX_ERR_INTERNAL;
    }
}

rimax_status need(bool cond, const char* msg) {
    if (cond) return RIMAX_OK;
    g_last_error = msg;
    return RIMAX_ERR_INVALID_ARGUMENT;
}

int effective_dimension(const rimax_profile* p, int n) {
    if (n > 0) return n;
    return p->profile.dimension;
}

RadialProfile as_radial(const rimax_profile* p, int n) {
    const int dim = effective_dimension(p, n);
    if (dim < 1)
        throw std::invalid_argument("profile has no dimension tag; pass n explicitly");
    return RadialProfile(dim, p->profile.pieces);
}

} // namespace

extern "C" {

const char* rimax_version(void) { return "1.0.0"; }

const char* rimax_last_error(void) { return g_last_error.c_str(); }

void rimax_string_free(char* s) { std::free(s); }

rimax_status rimax_space_parse(const char* text, rimax_space** out) {
    if (const auto st = need(text && out, "rimax_space_parse: null argument")) return st;
    return guarded([&] { *out = new rimax_space{parse_space(text)}; });
}

void rimax_space_free(rimax_space* s) { delete s; }

rimax_status rimax_space_to_json(const rimax_space* s, char** json_out) {
    if (const auto st = need(s && json_out, "rimax_space_to_json: null argument")) return st;
    return guarded([&] { *json_out = dup_string(space_to_json(s->space).dump()); });
}

rimax_status rimax_profile_parse(const char* text, rimax_profile** out) {
    if (const auto st = need(text && out, "rimax_profile_parse: null argument")) return st;
    return guarded([&] { *out = new rimax_profile{parse_profile(text)}; });
}

void rimax_profile_free(rimax_profile* p) { delete p; }

rimax_status rimax_profile_dimension(const rimax_profile* p, int* n_out) {
    if (const auto st = need(p && n_out, "rimax_profile_dimension: null argument")) return st;
    *n_out = p->profile.dimension;
    return RIMAX_OK;
}

rimax_status rimax_profile_eval(const rimax_profile* p, double t, double* out) {
    if (const auto st = need(p && out, "rimax_profile_eval: null argument")) return st;
    return guarded([&] { *out = p->profile.pieces.eval(t); });
}

rimax_status rimax_profile_to_json(const rimax_profile* p, char** json_out) {
    if (const auto st = need(p && json_out, "rimax_profile_to_json: null argument")) return st;
    return guarded([&] { *json_out = dup_string(profile_to_json(p->profile).dump()); });
}

rimax_status rimax_decide(int n, const rimax_space* X, int* fixed_point_exists,
                          char** decision_json) {
    if (const auto st = need(X && fixed_point_exists, "rimax_decide: null argument")) return st;
    return guarded([&] {
        const Decision dec = decide_fixed_point(n, X->space);
        *fixed_point_exists = dec.exists() ? 1 : 0;
        if (decision_json) *decision_json = dup_string(decision_to_json(dec).dump(2) + "\n");
    });
}

rimax_status rimax_norm(const rimax_space* X, const rimax_profile* p, double* out) {
    if (const auto st = need(X && p && out, "rimax_norm: null argument")) return st;
    return guarded([&] { *out = space_norm(X->space, DecreasingProfile(p->profile.pieces)); });
}

rimax_status rimax_fundamental_function(const rimax_space* X, double s, double* out) {
    if (const auto st = need(X && out, "rimax_fundamental_function: null argument")) return st;
    return guarded([&] { *out = fundamental_function(X->space, s); });
}

rimax_status rimax_dilation(const rimax_space* X, double s, double* out) {
    if (const auto st = need(X && out, "rimax_dilation: null argument")) return st;
    return guarded([&] { *out = dilation_function(X->space, s); });
}

rimax_status rimax_indices(const rimax_space* X, double* beta_lower, double* beta_upper,
                           char** diagnostics_json) {
    if (const auto st = need(X && beta_lower && beta_upper, "rimax_indices: null argument"))
        return st;
    return guarded([&] {
        const IndexReport rep = fundamental_indices(X->space);
        *beta_lower = rep.beta_lower;
        *beta_upper = rep.beta_upper;
        if (diagnostics_json)
            *diagnostics_json = dup_string(index_report_to_json(rep).dump(2) + "\n");
    });
}

rimax_status rimax_ball_average(const rimax_profile* p, int n, double rho, double r,
                                double* out) {
    if (const auto st = need(p && out, "rimax_ball_average: null argument")) return st;
    return guarded([&] { *out = ball_average(as_radial(p, n), rho, r); });
}

rimax_status rimax_maximal_value(const rimax_profile* p, int n, double rho, rimax_grid r_grid,
                                 double* value, double* r_at_max) {
    if (const auto st = need(p && value, "rimax_maximal_value: null argument")) return st;
    return guarded([&] {
        const MaximalValue mv =
            maximal_radial(as_radial(p, n), rho, {r_grid.lo, r_grid.hi, r_grid.per_decade});
        *value = mv.value;
        if (r_at_max) *r_at_max = mv.r_at_max;
    });
}

rimax_status rimax_riesz_value(const rimax_profile* p, int n, double rho, double* out) {
    if (const auto st = need(p && out, "rimax_riesz_value: null argument")) return st;
    return guarded([&] { *out = riesz_radial(as_radial(p, n), rho); });
}

rimax_status rimax_rearrange_csv(const rimax_profile* p, int n, rimax_grid t_grid,
                                 char** csv_out) {
    if (const auto st = need(p && csv_out, "rimax_rearrange_csv: null argument")) return st;
    return guarded([&] {
        const RadialProfile f = as_radial(p, n);
        const DecreasingProfile star = rearrangement(f);
        std::vector<std::vector<double>> rows;
        for (double t : GeometricGrid{t_grid.lo, t_grid.hi, t_grid.per_decade}.points())
            rows.push_back({t, star(t), doublestar(star, t)});
        *csv_out = dup_string(csv_table({"t", "fstar", "fstarstar"}, rows));
    });
}

rimax_status rimax_maximal_csv(const rimax_profile* p, int n, rimax_grid rho_grid,
                               rimax_grid r_grid, char** csv_out) {
    if (const auto st = need(p && csv_out, "rimax_maximal_csv: null argument")) return st;
    return guarded([&] {
        const RadialProfile f = as_radial(p, n);
        const GeometricGrid rg{r_grid.lo, r_grid.hi, r_grid.per_decade};
        std::vector<std::vector<double>> rows;
        for (double rho : GeometricGrid{rho_grid.lo, rho_grid.hi, rho_grid.per_decade}.points()) {
            const MaximalValue mv = maximal_radial(f, rho, rg);
            rows.push_back({rho, mv.value, f(rho), mv.r_at_max});
        }
        *csv_out = dup_string(csv_table({"rho", "maximal_lower", "f", "r_at_max"}, rows));
    });
}

rimax_status rimax_riesz_csv(const rimax_profile* p, int n, rimax_grid rho_grid,
                             char** csv_out) {
    if (const auto st = need(p && csv_out, "rimax_riesz_csv: null argument")) return st;
    return guarded([&] {
        const RadialProfile f = as_radial(p, n);
        std::vector<std::vector<double>> rows;
        for (double rho : GeometricGrid{rho_grid.lo, rho_grid.hi, rho_grid.per_decade}.points())
            rows.push_back({rho, riesz_radial(f, rho)});
        *csv_out = dup_string(csv_table({"rho", "riesz"}, rows));
    });
}

rimax_status rimax_verify(int n, const char* check, const char* space_text, double tol,
                          int* passed, char** report_json, char** table_csv) {
    if (const auto st = need(check && passed, "rimax_verify: null argument")) return st;
    return guarded([&] {
        std::unique_ptr<Space> space;
        if (space_text && *space_text) space = std::make_unique<Space>(parse_space(space_text));
        const auto reports = run_checks(check, n, space.get(), tol);
        bool all = true;
        Json arr = Json::array();
        std::string csv;
        for (const auto& rep : reports) {
            all = all && rep.pass;
            arr.push_back(check_report_to_json(rep));
            csv += "# " + rep.check + ": " + rep.notes + "\n";
            csv += check_report_csv(rep);
        }
        *passed = all ? 1 : 0;
        if (report_json) *report_json = dup_string(arr.dump(2) + "\n");
        if (table_csv) *table_csv = dup_string(csv);
    });
}

} // extern "C"
