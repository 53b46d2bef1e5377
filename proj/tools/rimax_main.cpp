// Command-line frontend for librimax. Talks to the library exclusively
// through the public C interface; JSON/CSV conversions here are output
// formatting only.

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rimax/rimax.h"

namespace {

constexpr int kExitYes = 0;  // decide: fixed point exists / verify: all pass
constexpr int kExitNo = 1;   // decide: valid "no" verdict / verify: a check failed
constexpr int kExitError = 2;

using Json = nlohmann::ordered_json;

struct StringGuard {
    char* s = nullptr;
    ~StringGuard() { rimax_string_free(s); }
};

struct SpaceGuard {
    rimax_space* p = nullptr;
    ~SpaceGuard() { rimax_space_free(p); }
};

struct ProfileGuard {
    rimax_profile* p = nullptr;
    ~ProfileGuard() { rimax_profile_free(p); }
};

int fail(const std::string& context) {
    std::cerr << "error: " << context << ": " << rimax_last_error() << "\n";
    return kExitError;
}

// Grid flags use the form scale:lo:hi:points-per-decade (scale must be log).
std::optional<rimax_grid> parse_grid(const std::string& text) {
    rimax_grid g{};
    char scale[8] = {0};
    if (std::sscanf(text.c_str(), "%7[a-z]:%lf:%lf:%d", scale, &g.lo, &g.hi, &g.per_decade) != 4)
        return std::nullopt;
    if (std::string(scale) != "log" || !(g.lo > 0.0) || !(g.hi > g.lo) || g.per_decade < 1)
        return std::nullopt;
    return g;
}

int emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return kExitYes;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitError;
    }
    out << payload;
    return kExitYes;
}

// CSV (as produced by the library: header row, 17-digit values, "inf") to a
// {"columns": [...], "rows": [[...]]} document.
std::string csv_to_json(const std::string& csv) {
    Json doc;
    Json columns = Json::array();
    Json rows = Json::array();
    std::istringstream in(csv);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0) continue; // table comments
        Json row = Json::array();
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            if (header) {
                columns.push_back(cell);
                continue;
            }
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                if (used == cell.size()) row.push_back(v);
                else row.push_back(cell);
            } catch (...) {
                row.push_back(cell);
            }
        }
        if (!header) rows.push_back(std::move(row));
        header = false;
    }
    doc["columns"] = std::move(columns);
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::string json_field_csv(const Json& j) {
    if (j.is_null()) return "";
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number()) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
        return buf;
    }
    return j.dump();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixed points of the centered maximal operator in rearrangement "
                 "invariant spaces"};
    app.require_subcommand(1);

    std::string space_text, profile_text, out_path, format;
    std::string grid_text = "log:1e-2:1e4:16";
    std::string rho_grid_text = "log:0.1:10:16";
    std::string r_grid_text = "log:1e-3:1e3:64";
    int n = 0;
    double tol = 0.0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "write the result to this path instead of stdout");
        cmd->add_option("--format", format, "json or csv (default depends on the command)");
    };

    auto* cmd_decide = app.add_subcommand("decide", "does X(R^n) contain a non-constant "
                                                    "fixed point of the maximal operator?");
    cmd_decide->add_option("--n", n, "ambient dimension")->required();
    cmd_decide->add_option("--space", space_text, "space descriptor (shorthand, JSON or @file)")
        ->required();
    add_common(cmd_decide);

    auto* cmd_rearrange = app.add_subcommand("rearrange", "decreasing rearrangement table "
                                                          "(t, f*, f**) of a radial profile");
    cmd_rearrange->add_option("--n", n, "ambient dimension (required unless the profile carries one)");
    cmd_rearrange->add_option("--profile", profile_text, "radial profile")->required();
    cmd_rearrange->add_option("--grid", grid_text, "t grid, log:lo:hi:points-per-decade");
    add_common(cmd_rearrange);

    auto* cmd_norm = app.add_subcommand("norm", "||profile||_X for a decreasing profile");
    cmd_norm->add_option("--space", space_text)->required();
    cmd_norm->add_option("--profile", profile_text)->required();
    add_common(cmd_norm);

    auto* cmd_indices = app.add_subcommand("indices", "fundamental indices of a space");
    cmd_indices->add_option("--space", space_text)->required();
    add_common(cmd_indices);

    auto* cmd_maximal = app.add_subcommand("maximal", "maximal-function lower bounds "
                                                      "(rho, Mf, f(rho)) for a radial profile");
    cmd_maximal->add_option("--n", n);
    cmd_maximal->add_option("--profile", profile_text)->required();
    cmd_maximal->add_option("--grid", rho_grid_text, "rho grid");
    cmd_maximal->add_option("--r-grid", r_grid_text, "ball radius grid for the supremum");
    add_common(cmd_maximal);

    auto* cmd_riesz = app.add_subcommand("riesz", "Riesz potential table (rho, I2 f)");
    cmd_riesz->add_option("--n", n);
    cmd_riesz->add_option("--profile", profile_text)->required();
    cmd_riesz->add_option("--grid", rho_grid_text, "rho grid");
    add_common(cmd_riesz);

    auto* cmd_verify = app.add_subcommand("verify", "numerical verification checks");
    std::string check;
    cmd_verify->add_option("check", check, "superharmonic | oneil | lemma-phi | embedding | all")
        ->required();
    cmd_verify->add_option("--n", n, "ambient dimension")->required();
    cmd_verify->add_option("--space", space_text, "optional space for lemma-phi / embedding");
    cmd_verify->add_option("--tol", tol, "tolerance / ratio-ceiling override (0 = defaults)");
    add_common(cmd_verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitError;
    }

    if (!format.empty() && format != "json" && format != "csv") {
        std::cerr << "error: --format must be json or csv\n";
        return kExitError;
    }

    if (cmd_decide->parsed()) {
        SpaceGuard space;
        if (rimax_space_parse(space_text.c_str(), &space.p)) return fail("--space");
        int exists = 0;
        StringGuard json;
        if (rimax_decide(n, space.p, &exists, &json.s)) return fail("decide");
        std::string payload = json.s;
        if (format == "csv") {
            const Json j = Json::parse(payload);
            const Json& w = j.at("witnesses");
            payload = "verdict,method,norm_h,beta_lower,beta_upper,threshold\n";
            payload += json_field_csv(j.at("verdict")) + "," + json_field_csv(j.at("method")) +
                       "," + json_field_csv(w.at("norm_h")) + "," +
                       json_field_csv(w.at("beta_lower")) + "," +
                       json_field_csv(w.at("beta_upper")) + "," +
                       json_field_csv(w.at("threshold")) + "\n";
        }
        const int rc = emit(payload, out_path);
        if (rc != kExitYes) return rc;
        return exists ? kExitYes : kExitNo;
    }

    if (cmd_rearrange->parsed()) {
        ProfileGuard prof;
        if (rimax_profile_parse(profile_text.c_str(), &prof.p)) return fail("--profile");
        const auto grid = parse_grid(grid_text);
        if (!grid) {
            std::cerr << "error: --grid must be log:lo:hi:points-per-decade\n";
            return kExitError;
        }
        StringGuard csv;
        if (rimax_rearrange_csv(prof.p, n, *grid, &csv.s)) return fail("rearrange");
        return emit(format == "json" ? csv_to_json(csv.s) : std::string(csv.s), out_path);
    }

    if (cmd_norm->parsed()) {
        SpaceGuard space;
        if (rimax_space_parse(space_text.c_str(), &space.p)) return fail("--space");
        ProfileGuard prof;
        if (rimax_profile_parse(profile_text.c_str(), &prof.p)) return fail("--profile");
        double value = 0.0;
        if (rimax_norm(space.p, prof.p, &value)) return fail("norm");
        char buf[64];
        if (value == static_cast<double>(INFINITY)) std::snprintf(buf, sizeof(buf), "\"inf\"");
        else std::snprintf(buf, sizeof(buf), "%.17g", value);
        std::string payload;
        if (format == "csv")
            payload = std::string("norm\n") + (value == static_cast<double>(INFINITY)
                                                   ? "inf"
                                                   : std::string(buf)) + "\n";
        else
            payload = std::string("{\"norm\":") + buf + "}\n";
        return emit(payload, out_path);
    }

    if (cmd_indices->parsed()) {
        SpaceGuard space;
        if (rimax_space_parse(space_text.c_str(), &space.p)) return fail("--space");
        double lo = 0.0, hi = 0.0;
        StringGuard diag;
        if (rimax_indices(space.p, &lo, &hi, &diag.s)) return fail("indices");
        std::string payload = diag.s;
        if (format == "csv") {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "beta_lower,beta_upper\n%.17g,%.17g\n", lo, hi);
            payload = buf;
        }
        return emit(payload, out_path);
    }

    if (cmd_maximal->parsed() || cmd_riesz->parsed()) {
        ProfileGuard prof;
        if (rimax_profile_parse(profile_text.c_str(), &prof.p)) return fail("--profile");
        const auto grid = parse_grid(rho_grid_text);
        if (!grid) {
            std::cerr << "error: --grid must be log:lo:hi:points-per-decade\n";
            return kExitError;
        }
        StringGuard csv;
        if (cmd_maximal->parsed()) {
            const auto rgrid = parse_grid(r_grid_text);
            if (!rgrid) {
                std::cerr << "error: --r-grid must be log:lo:hi:points-per-decade\n";
                return kExitError;
            }
            if (rimax_maximal_csv(prof.p, n, *grid, *rgrid, &csv.s)) return fail("maximal");
        } else {
            if (rimax_riesz_csv(prof.p, n, *grid, &csv.s)) return fail("riesz");
        }
        return emit(format == "json" ? csv_to_json(csv.s) : std::string(csv.s), out_path);
    }

    if (cmd_verify->parsed()) {
        int passed = 0;
        StringGuard json, csv;
        if (rimax_verify(n, check.c_str(), space_text.empty() ? nullptr : space_text.c_str(),
                         tol, &passed, &json.s, &csv.s))
            return fail("verify");
        const int rc = emit(format == "csv" ? std::string(csv.s) : std::string(json.s), out_path);
        if (rc != kExitYes) return rc;
        return passed ? kExitYes : kExitNo;
    }

    return kExitError;
}
