#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(RIMAX_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

} // namespace

TEST_CASE("cli: decide exit codes are the verdict") {
    CHECK(run("decide --n 3 --space lorentz:p=10").exit_code == 0);
    CHECK(run("decide --n 3 --space lorentz:p=2").exit_code == 1);
    CHECK(run("decide --n 2 --space lorentz:p=10").exit_code == 1);
    CHECK(run("decide --n 3 --space lorentz:p=1,q=2").exit_code == 2);
    CHECK(run("decide --n 3 --space garbage:x=1").exit_code == 2);

    const RunResult dim = run("decide --n 2 --space lorentz:p=10");
    CHECK(dim.output.find("DimensionRule") != std::string::npos);
    const RunResult yes = run("decide --n 3 --space lorentz:p=10");
    CHECK(yes.output.find("FixedPointExists") != std::string::npos);
}

TEST_CASE("cli: rearrange emits the closed form on the grid") {
    const RunResult r = run("rearrange --n 3 --profile F:n=3 --grid log:1e-2:1e4:16");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.output);
    REQUIRE(rows.size() > 2);
    CHECK(rows[0] == std::vector<std::string>{"t", "fstar", "fstarstar"});
    const double c3 = 4.0 * M_PI / 3.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double t = std::stod(rows[i][0]);
        const double fstar = std::stod(rows[i][1]);
        const double expect = t <= c3 ? 1.0 : std::pow(t / c3, -1.0 / 3.0);
        CHECK(fstar == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("cli: norm and indices") {
    const RunResult norm = run("norm --space marcinkiewicz_weak:W,n=3 --profile h:n=3");
    REQUIRE(norm.exit_code == 0);
    CHECK(norm.output == "{\"norm\":1}\n");

    const RunResult inf = run("norm --space lorentz:p=2 --profile h:n=3");
    CHECK(inf.output == "{\"norm\":\"inf\"}\n");

    const RunResult idx = run("indices --space prop:a=0.2,b=0.6");
    REQUIRE(idx.exit_code == 0);
    CHECK(idx.output.find("\"beta_lower\": 0.2") != std::string::npos);
    CHECK(idx.output.find("\"beta_upper\": 0.6") != std::string::npos);
}

TEST_CASE("cli: maximal and riesz tables") {
    const RunResult mx =
        run("maximal --profile F:n=3 --grid log:0.5:5:4 --r-grid log:1e-2:1e2:16");
    REQUIRE(mx.exit_code == 0);
    const auto rows = parse_csv(mx.output);
    CHECK(rows[0][0] == "rho");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double mf = std::stod(rows[i][1]);
        const double f = std::stod(rows[i][2]);
        CHECK(mf >= f * (1.0 - 1e-9));           // Mf >= f
        CHECK(mf <= f * (1.0 + 1e-6));           // fixed point: Mf == f
    }

    const RunResult rz = run("riesz --profile ball:v=1,n=3 --grid log:1:10:4");
    REQUIRE(rz.exit_code == 0);
    CHECK(parse_csv(rz.output)[0] == std::vector<std::string>{"rho", "riesz"});
}

TEST_CASE("cli: verify") {
    CHECK(run("verify embedding --n 3").exit_code == 0);
    CHECK(run("verify lemma-phi --n 2").exit_code == 2);
    CHECK(run("verify nonsense --n 3").exit_code == 2);
    const RunResult csv = run("verify embedding --n 3 --format csv");
    CHECK(csv.output.find("norm_minimal") != std::string::npos);
}

TEST_CASE("cli: output formats") {
    const RunResult csvdec = run("decide --n 3 --space lorentz:p=10 --format csv");
    CHECK(csvdec.exit_code == 0);
    CHECK(csvdec.output.rfind("verdict,method,norm_h", 0) == 0);
    CHECK(csvdec.output.find("FixedPointExists,LorentzRule") != std::string::npos);

    const RunResult jsontab =
        run("rearrange --n 3 --profile F:n=3 --grid log:1:10:2 --format json");
    CHECK(jsontab.exit_code == 0);
    CHECK(jsontab.output.find("\"columns\"") != std::string::npos);
    CHECK(jsontab.output.find("\"fstar\"") != std::string::npos);

    const RunResult csvnorm =
        run("norm --space lorentz:p=2 --profile h:n=3 --format csv");
    CHECK(csvnorm.output == "norm\ninf\n");

    CHECK(run("decide --n 3 --space lorentz:p=10 --format yaml").exit_code == 2);
}

TEST_CASE("cli: json file input and inf parameters") {
    const std::string path = "/tmp/rimax_cli_profile.json";
    {
        FILE* f = fopen(path.c_str(), "w");
        REQUIRE(f != nullptr);
        fputs("{\"n\":3,\"pieces\":[{\"t_lo\":0,\"t_hi\":1,\"c\":1,\"alpha\":0,\"beta\":0},"
              "{\"t_lo\":1,\"t_hi\":\"inf\",\"c\":1,\"alpha\":-1,\"beta\":0}]}",
              f);
        fclose(f);
    }
    const RunResult r = run("rearrange --profile " + path + " --grid log:1:10:2");
    CHECK(r.exit_code == 0);
    CHECK(parse_csv(r.output).size() > 2);
    std::remove(path.c_str());

    CHECK(run("decide --n 3 --space lorentz:p=inf").exit_code == 0);
    CHECK(run("decide --n 3 --space lorentz:p=inf,q=2").exit_code == 2);
}

TEST_CASE("cli: verify accepts a tolerance override") {
    // A ratio ceiling below the achieved O'Neil constant flips the verdict
    // to a clean failure exit.
    CHECK(run("verify oneil --n 3").exit_code == 0);
    CHECK(run("verify oneil --n 3 --tol 1.2").exit_code == 1);
}

TEST_CASE("cli: identical invocations produce byte-identical output") {
    const std::string cmd = "rearrange --n 3 --profile F:n=3 --grid log:1e-1:1e3:8";
    const RunResult a = run(cmd);
    const RunResult b = run(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);

    const RunResult da = run("decide --n 3 --space prop:a=0.2,b=0.3");
    const RunResult db = run("decide --n 3 --space prop:a=0.2,b=0.3");
    CHECK(da.output == db.output);

    const RunResult va = run("verify superharmonic --n 3");
    const RunResult vb = run("verify superharmonic --n 3");
    CHECK(va.exit_code == 0);
    CHECK(va.output == vb.output);
}

TEST_CASE("cli: exit codes across a descriptor corpus") {
    const std::vector<std::pair<std::string, int>> corpus = {
        {"lorentz:p=4", 0},          {"lorentz:p=3,q=inf", 0},
        {"lorentz:p=3", 1},          {"lorentz:p=1", 1},
        {"minimal:n=3", 0},          {"x0:n=3", 1},
        {"x1:n=3", 0},               {"prop:a=0.9,b=0.1", 0},
        {"prop:a=0.1,b=0.9", 1},     {"lambda:p=1,w=one", 1},
        {"lambda:p=4,w=one", 0},     {"lorentz:p=0.5", 2},
        {"prop:a=2,b=0", 2},         {"bogus", 2},
    };
    for (const auto& [space, expect] : corpus) {
        INFO(space);
        CHECK(run("decide --n 3 --space " + space).exit_code == expect);
    }
}
