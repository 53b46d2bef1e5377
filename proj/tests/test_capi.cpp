#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "rimax/rimax.h"

namespace {

struct Space {
    rimax_space* p = nullptr;
    explicit Space(const char* text) { REQUIRE(rimax_space_parse(text, &p) == RIMAX_OK); }
    ~Space() { rimax_space_free(p); }
};

struct Profile {
    rimax_profile* p = nullptr;
    explicit Profile(const char* text) { REQUIRE(rimax_profile_parse(text, &p) == RIMAX_OK); }
    ~Profile() { rimax_profile_free(p); }
};

std::string take(char* s) {
    REQUIRE(s != nullptr);
    std::string out(s);
    rimax_string_free(s);
    return out;
}

} // namespace

TEST_CASE("c api: version and error reporting") {
    CHECK(rimax_version() != nullptr);

    rimax_space* s = nullptr;
    CHECK(rimax_space_parse("lorentz:p=1,q=2", &s) == RIMAX_ERR_PARSE);
    CHECK(std::strlen(rimax_last_error()) > 0);
    CHECK(rimax_space_parse(nullptr, &s) == RIMAX_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api: decide") {
    Space l10("lorentz:p=10");
    int exists = -1;
    char* json = nullptr;
    REQUIRE(rimax_decide(3, l10.p, &exists, &json) == RIMAX_OK);
    CHECK(exists == 1);
    const std::string text = take(json);
    CHECK(text.find("FixedPointExists") != std::string::npos);
    CHECK(text.find("witnesses") != std::string::npos);

    REQUIRE(rimax_decide(2, l10.p, &exists, nullptr) == RIMAX_OK);
    CHECK(exists == 0);
}

TEST_CASE("c api: norms and indices") {
    Space minimal("minimal:n=3");
    Profile h("h:n=3");
    double value = 0.0;
    REQUIRE(rimax_norm(minimal.p, h.p, &value) == RIMAX_OK);
    CHECK(value == doctest::Approx(1.0).epsilon(1e-13));

    Space l2("lorentz:p=2");
    REQUIRE(rimax_norm(l2.p, h.p, &value) == RIMAX_OK);
    CHECK(std::isinf(value));

    Space prop("prop:a=0.2,b=0.6");
    double lo = 0.0, hi = 0.0;
    REQUIRE(rimax_indices(prop.p, &lo, &hi, nullptr) == RIMAX_OK);
    CHECK(lo == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(hi == doctest::Approx(0.6).epsilon(1e-12));

    REQUIRE(rimax_fundamental_function(l2.p, 4.0, &value) == RIMAX_OK);
    CHECK(value == doctest::Approx(2.0).epsilon(1e-12));
    REQUIRE(rimax_dilation(l2.p, 4.0, &value) == RIMAX_OK);
    CHECK(value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("c api: profile handles") {
    Profile f("F:n=3");
    int n = 0;
    REQUIRE(rimax_profile_dimension(f.p, &n) == RIMAX_OK);
    CHECK(n == 3);
    double v = 0.0;
    REQUIRE(rimax_profile_eval(f.p, 2.0, &v) == RIMAX_OK);
    CHECK(v == doctest::Approx(0.5));
    CHECK(rimax_profile_eval(f.p, 0.0, &v) == RIMAX_ERR_DOMAIN);

    char* json = nullptr;
    REQUIRE(rimax_profile_to_json(f.p, &json) == RIMAX_OK);
    CHECK(take(json).find("pieces") != std::string::npos);

    rimax_profile* bad = nullptr;
    CHECK(rimax_profile_parse("h", &bad) == RIMAX_ERR_PARSE);
}

TEST_CASE("c api: operator values") {
    Profile f("F:n=3");
    double v = 0.0;
    REQUIRE(rimax_ball_average(f.p, 0, 2.0, 1.0, &v) == RIMAX_OK);
    CHECK(v == doctest::Approx(0.5).epsilon(1e-9));

    double r_at = -1.0;
    REQUIRE(rimax_maximal_value(f.p, 0, 2.0, {1e-2, 1e2, 8}, &v, &r_at) == RIMAX_OK);
    CHECK(v == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(r_at == 0.0);

    Profile ball("ball:v=1,n=3");
    const double radius = std::pow(3.0 / (4.0 * M_PI), 1.0 / 3.0);
    REQUIRE(rimax_riesz_value(ball.p, 0, 2.0 * radius, &v) == RIMAX_OK);
    CHECK(v == doctest::Approx(1.0 / (2.0 * radius)).epsilon(1e-10));

    // Dimension comes from the explicit argument when the profile lacks one.
    Profile chi("chi:s=1");
    CHECK(rimax_riesz_value(chi.p, 0, 1.0, &v) == RIMAX_ERR_INVALID_ARGUMENT);
    REQUIRE(rimax_riesz_value(chi.p, 3, 1.0, &v) == RIMAX_OK);
}

TEST_CASE("c api: csv tables are byte-deterministic") {
    Profile f("F:n=3");
    char* a = nullptr;
    char* b = nullptr;
    REQUIRE(rimax_rearrange_csv(f.p, 0, {1e-1, 1e2, 8}, &a) == RIMAX_OK);
    REQUIRE(rimax_rearrange_csv(f.p, 0, {1e-1, 1e2, 8}, &b) == RIMAX_OK);
    const std::string sa = take(a), sb = take(b);
    CHECK(sa == sb);
    CHECK(sa.rfind("t,fstar,fstarstar\n", 0) == 0);

    char* csv = nullptr;
    REQUIRE(rimax_riesz_csv(f.p, 0, {0.5, 5.0, 4}, &csv) == RIMAX_OK);
    CHECK(take(csv).rfind("rho,riesz\n", 0) == 0);

    REQUIRE(rimax_maximal_csv(f.p, 0, {0.5, 5.0, 2}, {1e-2, 1e2, 8}, &csv) == RIMAX_OK);
    CHECK(take(csv).find("maximal_lower") != std::string::npos);
}

TEST_CASE("c api: verify") {
    int passed = 0;
    char* json = nullptr;
    char* csv = nullptr;
    REQUIRE(rimax_verify(3, "embedding", nullptr, 0.0, &passed, &json, &csv) == RIMAX_OK);
    CHECK(passed == 1);
    CHECK(take(json).find("\"pass\": true") != std::string::npos);
    CHECK(take(csv).find("norm_X") != std::string::npos);

    CHECK(rimax_verify(3, "made-up", nullptr, 0.0, &passed, nullptr, nullptr) ==
          RIMAX_ERR_INVALID_ARGUMENT);
    CHECK(rimax_verify(2, "lemma-phi", nullptr, 0.0, &passed, nullptr, nullptr) ==
          RIMAX_ERR_INVALID_ARGUMENT);
}
