#include "descriptor_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace rimax {

namespace {

double number_or_inf(const Json& j, const char* what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf" || s == "Inf" || s == "INF") return kInf;
    }
    throw ParseError(std::string("expected a number or \"inf\" for ") + what);
}

Json num_to_json(double v) {
    if (v == kInf) return Json("inf");
    return Json(v);
}

} // namespace

PiecewisePowerLog pieces_from_json(const Json& j) {
    if (!j.is_array() || j.empty())
        throw ParseError("pieces: expected a non-empty array of {t_lo, t_hi, c, alpha, beta}");
    std::vector<double> bounds;
    std::vector<PowerLogPiece> pieces;
    for (const auto& rec : j) {
        if (!rec.is_object()) throw ParseError("pieces: each record must be an object");
        for (const char* key : {"t_lo", "t_hi", "c", "alpha"})
            if (!rec.contains(key)) throw ParseError(std::string("pieces: missing field ") + key);
        const double lo = number_or_inf(rec.at("t_lo"), "t_lo");
        const double hi = number_or_inf(rec.at("t_hi"), "t_hi");
        if (bounds.empty()) {
            if (lo != 0.0) throw ParseError("pieces: first t_lo must be 0");
            bounds.push_back(lo);
        } else if (bounds.back() != lo) {
            throw ParseError("pieces: t_lo must equal the previous t_hi");
        }
        bounds.push_back(hi);
        PowerLogPiece p;
        p.coef = rec.at("c").get<double>();
        p.alpha = rec.at("alpha").get<double>();
        p.beta = rec.value("beta", 0.0);
        pieces.push_back(p);
    }
    if (bounds.back() != kInf) throw ParseError("pieces: last t_hi must be \"inf\"");
    try {
        return PiecewisePowerLog(std::move(bounds), std::move(pieces));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

Json pieces_to_json(const PiecewisePowerLog& f) {
    Json arr = Json::array();
    for (std::size_t i = 0; i < f.piece_count(); ++i) {
        Json rec;
        rec["t_lo"] = num_to_json(f.bounds()[i]);
        rec["t_hi"] = num_to_json(f.bounds()[i + 1]);
        rec["c"] = f.pieces()[i].coef;
        rec["alpha"] = f.pieces()[i].alpha;
        rec["beta"] = f.pieces()[i].beta;
        arr.push_back(std::move(rec));
    }
    return arr;
}

Space space_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ParseError("space: expected an object with a \"kind\" field");
    const std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "lorentz") {
            LorentzSpace s;
            s.p = number_or_inf(j.at("p"), "p");
            s.q = j.contains("q") ? number_or_inf(j.at("q"), "q") : s.p;
            return Space(s);
        }
        if (kind == "lambda") {
            LambdaSpace s;
            s.p = j.at("p").get<double>();
            s.weight = pieces_from_json(j.at("w"));
            s.assume_banach = j.value("assume_banach", true);
            return Space(s);
        }
        if (kind == "marcinkiewicz_star")
            return Space(MarcinkiewiczStarSpace{pieces_from_json(j.at("phi"))});
        if (kind == "marcinkiewicz_weak")
            return Space(MarcinkiewiczWeakSpace{pieces_from_json(j.at("phi"))});
        if (kind == "intersection") {
            IntersectionSpace s;
            for (const auto& m : j.at("members")) s.members.push_back(space_from_json(m));
            return Space(std::move(s));
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    } catch (const Json::exception& e) {
        throw ParseError(std::string("space \"") + kind + "\": " + e.what());
    }
    throw ParseError("space: unknown kind \"" + kind + "\"");
}

Json space_to_json(const Space& X) {
    struct Visitor {
        Json operator()(const LorentzSpace& s) const {
            Json j;
            j["kind"] = "lorentz";
            j["p"] = num_to_json(s.p);
            j["q"] = num_to_json(s.q);
            return j;
        }
        Json operator()(const LambdaSpace& s) const {
            Json j;
            j["kind"] = "lambda";
            j["p"] = s.p;
            j["w"] = pieces_to_json(s.weight);
            j["assume_banach"] = s.assume_banach;
            return j;
        }
        Json operator()(const MarcinkiewiczStarSpace& s) const {
            Json j;
            j["kind"] = "marcinkiewicz_star";
            j["phi"] = pieces_to_json(s.phi);
            return j;
        }
        Json operator()(const MarcinkiewiczWeakSpace& s) const {
            Json j;
            j["kind"] = "marcinkiewicz_weak";
            j["phi"] = pieces_to_json(s.phi);
            return j;
        }
        Json operator()(const IntersectionSpace& s) const {
            Json j;
            j["kind"] = "intersection";
            Json members = Json::array();
            for (const auto& m : s.members) members.push_back(space_to_json(m));
            j["members"] = std::move(members);
            return j;
        }
    };
    return std::visit(Visitor{}, X.desc());
}

// ---------------------------------------------------------------------------
// Inline shorthand.

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Shorthand {
    std::string family;
    std::map<std::string, std::string> kv;
    std::vector<std::string> positional;
};

// family:key=value,key=value — values may be name(args;like;this).
Shorthand parse_shorthand(const std::string& text) {
    Shorthand sh;
    const auto colon = text.find(':');
    sh.family = text.substr(0, colon);
    if (colon == std::string::npos) return sh;

    std::string rest = text.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
        int depth = 0;
        std::size_t end = pos;
        while (end < rest.size() && (rest[end] != ',' || depth > 0)) {
            if (rest[end] == '(') ++depth;
            if (rest[end] == ')') --depth;
            ++end;
        }
        const std::string item = rest.substr(pos, end - pos);
        const auto eq = item.find('=');
        if (eq == std::string::npos) sh.positional.push_back(item);
        else sh.kv[item.substr(0, eq)] = item.substr(eq + 1);
        pos = end + 1;
    }
    return sh;
}

double parse_number(const std::string& s, const std::string& what) {
    if (s == "inf" || s == "Inf" || s == "INF") return kInf;
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw ParseError("");
        return v;
    } catch (...) {
        throw ParseError("cannot parse number for " + what + ": \"" + s + "\"");
    }
}

int require_n(const Shorthand& sh) {
    const auto it = sh.kv.find("n");
    if (it == sh.kv.end()) throw ParseError(sh.family + ": needs n=<dimension>");
    const double v = parse_number(it->second, "n");
    if (v < 1 || v != std::floor(v)) throw ParseError(sh.family + ": n must be a positive integer");
    return static_cast<int>(v);
}

double kv_number(const Shorthand& sh, const std::string& key, const std::string& ctx) {
    const auto it = sh.kv.find(key);
    if (it == sh.kv.end()) throw ParseError(ctx + ": missing " + key + "=...");
    return parse_number(it->second, ctx + "." + key);
}

// Weight shorthands: one | W (needs n in scope) | twopow(a=..;b=..) |
// power(c=..;alpha=..;beta=..) | logpow(gamma=..;delta=..).
PiecewisePowerLog parse_weight(const std::string& text, const Shorthand& outer) {
    if (text == "one") return PiecewisePowerLog::constant(1.0);
    if (text == "W") return minimal_weight(require_n(outer));

    const auto paren = text.find('(');
    if (paren == std::string::npos || text.back() != ')')
        throw ParseError("weight: expected one | W | name(args): \"" + text + "\"");
    const std::string name = text.substr(0, paren);
    std::map<std::string, double> args;
    std::istringstream ss(text.substr(paren + 1, text.size() - paren - 2));
    std::string item;
    while (std::getline(ss, item, ';')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("weight args must be key=value: " + item);
        args[item.substr(0, eq)] = parse_number(item.substr(eq + 1), "weight." + item);
    }
    auto arg = [&](const std::string& k, double dflt, bool required = false) {
        const auto it = args.find(k);
        if (it == args.end()) {
            if (required) throw ParseError("weight " + name + ": missing " + k);
            return dflt;
        }
        return it->second;
    };
    if (name == "twopow") {
        const double a = arg("a", 0.0, true), b = arg("b", 0.0, true);
        return PiecewisePowerLog({0.0, 1.0, kInf}, {{1.0, a, 0.0}, {1.0, b, 0.0}});
    }
    if (name == "power")
        return PiecewisePowerLog::single({arg("c", 1.0), arg("alpha", 0.0, true), arg("beta", 0.0)});
    if (name == "logpow")
        return PiecewisePowerLog::single({1.0, arg("gamma", 0.0, true), arg("delta", 0.0, true)});
    throw ParseError("weight: unknown form \"" + name + "\"");
}

} // namespace

namespace {

bool looks_like_path(const std::string& text) {
    return text.size() > 5 && text.compare(text.size() - 5, 5, ".json") == 0;
}

} // namespace

Space parse_space(const std::string& text) {
    if (text.empty()) throw ParseError("space: empty descriptor");
    if (text[0] == '@') return space_from_json(Json::parse(read_file(text.substr(1)), nullptr, true, true));
    if (looks_like_path(text)) return space_from_json(Json::parse(read_file(text), nullptr, true, true));
    if (text[0] == '{' || text[0] == '[') {
        try {
            return space_from_json(Json::parse(text));
        } catch (const Json::exception& e) {
            throw ParseError(std::string("space JSON: ") + e.what());
        }
    }

    const Shorthand sh = parse_shorthand(text);
    try {
        if (sh.family == "lorentz") {
            LorentzSpace s;
            s.p = kv_number(sh, "p", "lorentz");
            s.q = sh.kv.count("q") ? kv_number(sh, "q", "lorentz") : s.p;
            return Space(s);
        }
        if (sh.family == "lambda") {
            LambdaSpace s;
            s.p = kv_number(sh, "p", "lambda");
            const auto it = sh.kv.find("w");
            s.weight = it == sh.kv.end() ? PiecewisePowerLog::constant(1.0)
                                         : parse_weight(it->second, sh);
            return Space(s);
        }
        if (sh.family == "prop") {
            const double a = kv_number(sh, "a", "prop");
            const double b = kv_number(sh, "b", "prop");
            if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0))
                throw ParseError("prop: exponents a, b must lie in [0, 1]");
            return two_exponent_space(a, b);
        }
        if (sh.family == "minimal") return minimal_space(require_n(sh));
        if (sh.family == "x0") return log_corrected_space(require_n(sh), 1.0);
        if (sh.family == "x1") return log_corrected_space(require_n(sh), -1.0);
        if (sh.family == "marcinkiewicz_star" || sh.family == "marcinkiewicz_weak") {
            std::string phi_text;
            if (!sh.positional.empty()) phi_text = sh.positional.front();
            else if (sh.kv.count("phi")) phi_text = sh.kv.at("phi");
            else throw ParseError(sh.family + ": needs phi=<weight> (or a positional weight name)");
            PiecewisePowerLog phi = parse_weight(phi_text, sh);
            if (sh.family == "marcinkiewicz_star") return Space(MarcinkiewiczStarSpace{std::move(phi)});
            return Space(MarcinkiewiczWeakSpace{std::move(phi)});
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    throw ParseError("space: unknown family \"" + sh.family + "\"");
}

ParsedProfile parse_profile(const std::string& text) {
    if (text.empty()) throw ParseError("profile: empty descriptor");
    if (text[0] == '@' || text[0] == '{' || looks_like_path(text)) {
        Json j;
        try {
            if (text[0] == '@') j = Json::parse(read_file(text.substr(1)));
            else if (text[0] == '{') j = Json::parse(text);
            else j = Json::parse(read_file(text));
        } catch (const Json::exception& e) {
            throw ParseError(std::string("profile JSON: ") + e.what());
        }
        ParsedProfile p;
        if (j.contains("n")) p.dimension = j.at("n").get<int>();
        p.pieces = pieces_from_json(j.contains("pieces") ? j.at("pieces") : j);
        return p;
    }

    const Shorthand sh = parse_shorthand(text);
    ParsedProfile p;
    if (sh.kv.count("n")) p.dimension = require_n(sh);
    try {
        if (sh.family == "h") {
            p.pieces = critical_profile(require_n(sh)).body();
        } else if (sh.family == "F") {
            p.pieces = critical_radial(require_n(sh)).radial();
        } else if (sh.family == "chi") {
            p.pieces = PiecewisePowerLog::indicator(kv_number(sh, "s", "chi"));
        } else if (sh.family == "ball") {
            const int n = require_n(sh);
            const double v = kv_number(sh, "v", "ball");
            if (!(v > 0.0)) throw ParseError("ball: volume must be positive");
            const double radius = std::pow(v / unit_ball_volume(n), 1.0 / n);
            p.pieces = PiecewisePowerLog::indicator(radius);
        } else if (sh.family == "const") {
            p.pieces = PiecewisePowerLog::constant(kv_number(sh, "c", "const"));
        } else if (sh.family == "twostep") {
            const double h1 = kv_number(sh, "h1", "twostep"), t1 = kv_number(sh, "t1", "twostep");
            const double h2 = kv_number(sh, "h2", "twostep"), t2 = kv_number(sh, "t2", "twostep");
            p.pieces = PiecewisePowerLog({0.0, t1, t2, kInf},
                                         {{h1, 0.0, 0.0}, {h2, 0.0, 0.0}, {0.0, 0.0, 0.0}});
        } else if (sh.family == "powerdecay") {
            const double alpha = kv_number(sh, "alpha", "powerdecay");
            p.pieces = PiecewisePowerLog({0.0, 1.0, kInf}, {{1.0, 0.0, 0.0}, {1.0, alpha, 0.0}});
        } else {
            throw ParseError("profile: unknown family \"" + sh.family + "\"");
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(sh.family + ": " + e.what());
    }
    return p;
}

Json profile_to_json(const ParsedProfile& p) {
    Json j;
    if (p.dimension > 0) j["n"] = p.dimension;
    j["pieces"] = pieces_to_json(p.pieces);
    return j;
}

Json decision_to_json(const Decision& d) {
    Json j;
    j["verdict"] = to_string(d.verdict);
    j["method"] = to_string(d.method);
    Json w;
    w["norm_h"] = std::isnan(d.norm_h) ? Json(nullptr) : num_to_json(d.norm_h);
    w["beta_lower"] = std::isnan(d.beta_lower) ? Json(nullptr) : Json(d.beta_lower);
    w["beta_upper"] = std::isnan(d.beta_upper) ? Json(nullptr) : Json(d.beta_upper);
    w["threshold"] = d.threshold;
    if (d.dimension >= 3) w["h_profile"] = pieces_to_json(critical_profile(d.dimension).body());
    j["witnesses"] = std::move(w);
    j["notes"] = d.notes;
    return j;
}

Json index_report_to_json(const IndexReport& r) {
    Json j;
    j["beta_lower"] = r.beta_lower;
    j["beta_upper"] = r.beta_upper;
    Json g;
    g["s_max"] = std::pow(2.0, r.grid_kmax);
    g["grid_upper"] = r.grid_upper;
    g["grid_upper_arg"] = r.grid_upper_arg;
    g["grid_lower"] = r.grid_lower;
    g["grid_lower_arg"] = r.grid_lower_arg;
    j["grid_diagnostics"] = std::move(g);
    return j;
}

Json check_report_to_json(const CheckReport& r) {
    Json j;
    j["check"] = r.check;
    j["n"] = r.dimension;
    j["pass"] = r.pass;
    j["worst"] = num_to_json(r.worst);
    j["bound"] = r.bound;
    j["notes"] = r.notes;
    j["points"] = r.rows.size();
    return j;
}

std::string format_g17(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_table(const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : "") << columns[i];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_g17(row[i]);
        out << "\n";
    }
    return out.str();
}

std::string check_report_csv(const CheckReport& r) {
    return csv_table(r.columns, r.rows);
}

} // namespace rimax
