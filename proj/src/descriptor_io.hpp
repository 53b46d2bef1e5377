#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "decide.hpp"
#include "verify.hpp"

namespace rimax {

using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Pieces are serialized as [{t_lo, t_hi, c, alpha, beta}, ...] with t_hi
/// "inf" on the last record.
PiecewisePowerLog pieces_from_json(const Json& j);
Json pieces_to_json(const PiecewisePowerLog& f);

/// {"kind":"lorentz","p":3,"q":"inf"} | {"kind":"lambda","p":1,"w":[...]} |
/// {"kind":"marcinkiewicz_star","phi":[...]} | {"kind":"marcinkiewicz_weak","phi":[...]} |
/// {"kind":"intersection","members":[...]}
Space space_from_json(const Json& j);
Json space_to_json(const Space& X);

/// Accepts raw JSON (leading '{'), @path-to-json-file, or the inline
/// shorthand family:key=value,... (e.g. lorentz:p=3,q=inf | lambda:p=2,w=one |
/// prop:a=0.2,b=0.6 | minimal:n=3 | marcinkiewicz_weak:W,n=3 | x0:n=3 | x1:n=3).
Space parse_space(const std::string& text);

struct ParsedProfile {
    int dimension = 0; // 0: unspecified
    PiecewisePowerLog pieces;
};

/// Profile JSON {"n":3,"pieces":[...]} or shorthand (h:n=3 | F:n=3 |
/// chi:s=1 | ball:v=1,n=3 | const:c=1 | twostep:... | powerdecay:alpha=-2).
ParsedProfile parse_profile(const std::string& text);
Json profile_to_json(const ParsedProfile& p);

Json decision_to_json(const Decision& d);
Json index_report_to_json(const IndexReport& r);
Json check_report_to_json(const CheckReport& r);

/// 17 significant digits, '.' decimal separator; infinities become "inf".
std::string format_g17(double v);

std::string csv_table(const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows);

std::string check_report_csv(const CheckReport& r);

} // namespace rimax
