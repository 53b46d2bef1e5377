#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "decide.hpp"
#include "operators.hpp"

using namespace rimax;

namespace {

RadialProfile inverse_radius(int n) {
    return RadialProfile(n, PiecewisePowerLog::single({1.0, -1.0, 0.0}));
}

RadialProfile ball_indicator(int n, double radius) {
    return RadialProfile(n, PiecewisePowerLog({0.0, radius, kInf},
                                              {{1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}));
}

} // namespace

TEST_CASE("ball averages of a constant are the constant") {
    const RadialProfile one(3, PiecewisePowerLog::constant(1.0));
    for (auto [rho, r] : std::vector<std::pair<double, double>>{
             {0.0, 1.0}, {2.0, 1.0}, {1.0, 5.0}, {0.3, 0.3}, {7.0, 0.01}})
        CHECK(ball_average(one, rho, r) == doctest::Approx(1.0).epsilon(1e-10));
    const RadialProfile one5(5, PiecewisePowerLog::constant(1.0));
    CHECK(ball_average(one5, 1.3, 2.1) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("ball averages of the Newton kernel") {
    // g = 1/|y| in R^3. Mean value property away from the pole, and the
    // shell-decomposition closed form (3r^2 - rho^2)/(2 r^3) across it.
    const RadialProfile f = inverse_radius(3);
    CHECK(ball_average(f, 2.0, 1.0) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(ball_average(f, 0.0, 2.0) == doctest::Approx(0.75).epsilon(1e-10));
    CHECK(ball_average(f, 1.0, 2.0) == doctest::Approx(11.0 / 16.0).epsilon(1e-10));
    CHECK(ball_average(f, 0.5, 4.0) ==
          doctest::Approx((3.0 * 16.0 - 0.25) / (2.0 * 64.0)).epsilon(1e-10));

    // The callable path reproduces the algebraic one.
    const auto g = [](double s) { return 1.0 / s; };
    CHECK(ball_average_fn(g, 3, {}, 1.0, 2.0) == doctest::Approx(11.0 / 16.0).epsilon(1e-9));
    CHECK(ball_average_fn(g, 3, {}, 2.0, 1.0) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("ball average rejects profiles that are not locally integrable") {
    const RadialProfile bad(3, PiecewisePowerLog::single({1.0, -3.5, 0.0}));
    CHECK_THROWS_AS(ball_average(bad, 0.5, 1.0), std::domain_error);
    // Away from the origin the same profile averages fine.
    CHECK(ball_average(bad, 5.0, 1.0) > 0.0);
}

TEST_CASE("dimension two averages use the arccos cap") {
    const RadialProfile one(2, PiecewisePowerLog::constant(1.0));
    CHECK(ball_average(one, 1.3, 0.4) == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(ball_average(one, 0.2, 3.0) == doctest::Approx(1.0).epsilon(1e-7));

    // Disk indicator averaged over a larger concentric disk: area ratio.
    const RadialProfile disk(2, PiecewisePowerLog({0.0, 1.0, kInf},
                                                  {{1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}));
    CHECK(ball_average(disk, 0.0, 2.0) == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("dimension one averages are interval averages") {
    const RadialProfile f(1, PiecewisePowerLog({0.0, 1.0, kInf},
                                               {{1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}));
    // average of chi_[-1,1] over [rho - r, rho + r]
    CHECK(ball_average(f, 0.0, 0.5) == doctest::Approx(1.0));
    CHECK(ball_average(f, 0.0, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ball_average(f, 2.0, 2.0) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("maximal function lower bounds") {
    // Fixed point: every average of min(1, 1/rho) stays below the value.
    const RadialProfile cand = critical_radial(3);
    const MaximalValue at2 = maximal_radial(cand, 2.0, {1e-2, 1e2, 16});
    CHECK(at2.value == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(at2.r_at_max == 0.0);

    const MaximalValue inside = maximal_radial(cand, 0.3, {1e-2, 1e2, 16});
    CHECK(inside.value == doctest::Approx(1.0).epsilon(1e-9));

    // Ball indicator: small balls at the origin lie inside the support.
    const MaximalValue origin = maximal_radial(ball_indicator(3, 1.0), 0.0, {1e-2, 1e2, 8});
    CHECK(origin.value == doctest::Approx(1.0).epsilon(1e-9));

    const RadialProfile one(3, PiecewisePowerLog::constant(1.0));
    CHECK(maximal_radial(one, 3.0, {1e-2, 1e2, 8}).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("riesz potential of a ball indicator") {
    const int n = 3;
    const double radius = std::pow(1.0 / unit_ball_volume(n), 1.0 / n); // unit volume
    const RadialProfile ball = ball_indicator(n, radius);

    // Outside: volume * rho^{2-n} exactly.
    CHECK(riesz_radial(ball, 2.0 * radius) == doctest::Approx(1.0 / (2.0 * radius)).epsilon(1e-12));
    const double far = 100.0 * radius;
    CHECK(riesz_radial(ball, far) * far == doctest::Approx(1.0).epsilon(1e-10));

    // Inside: 4 pi (R^2/2 - rho^2/6).
    const double rho = 0.5 * radius;
    CHECK(riesz_radial(ball, rho) ==
          doctest::Approx(4.0 * M_PI * (radius * radius / 2.0 - rho * rho / 6.0)).epsilon(1e-12));

    const RadialProfile zero(3, PiecewisePowerLog::constant(0.0));
    CHECK(riesz_radial(zero, 1.0) == 0.0);

    // Divergent tail: a profile with slow decay has an infinite potential.
    const RadialProfile slow(3, PiecewisePowerLog::single({1.0, -1.0, 0.0}));
    CHECK(riesz_radial(slow, 1.0) == kInf);

    CHECK_THROWS_AS(riesz_radial(RadialProfile(2, PiecewisePowerLog::constant(0.0)), 1.0),
                    std::invalid_argument);
}

TEST_CASE("riesz potential is non-increasing on decreasing lifts") {
    const std::vector<DecreasingProfile> corpus = {
        DecreasingProfile(PiecewisePowerLog::indicator(1.0)),
        DecreasingProfile(PiecewisePowerLog({0.0, 1.0, 4.0, kInf},
                                            {{1.0, 0.0, 0.0},
                                             {0.5, 0.0, 0.0},
                                             {0.0, 0.0, 0.0}})),
        DecreasingProfile(PiecewisePowerLog({0.0, 1.0, kInf},
                                            {{1.0, 0.0, 0.0}, {1.0, -2.0, 0.0}})),
    };
    for (const auto& d : corpus) {
        const RadialFunction lift = riesz_lift(lift_decreasing(d, 3));
        double prev = kInf;
        for (int i = 0; i <= 40; ++i) {
            const double rho = std::pow(10.0, -1.5 + 3.0 * i / 40.0);
            const double v = lift.value(rho);
            CHECK(v <= prev * (1.0 + 1e-11));
            prev = v;
        }
    }
}

TEST_CASE("weighted Hardy operator") {
    const DecreasingProfile chi1(PiecewisePowerLog::indicator(1.0));
    // Constant n/(n-2) below the support edge.
    for (int n : {3, 4, 5})
        for (double t : {0.2, 0.8, 1.0})
            CHECK(hardy_operator(chi1, t, n) ==
                  doctest::Approx(static_cast<double>(n) / (n - 2)).epsilon(1e-13));

    // Beyond it the closed form is (n/(n-2)) (s/t)^{1-2/n}; at n=3, t=8
    // that is 3 * 8^{-1/3} = 3/2.
    CHECK(hardy_operator(chi1, 8.0, 3) == doctest::Approx(1.5).epsilon(1e-13));

    const DecreasingProfile zero(PiecewisePowerLog::constant(0.0));
    CHECK(hardy_operator(zero, 3.0, 3) == 0.0);

    // Non-integrable head errors out.
    const DecreasingProfile steep(PiecewisePowerLog::single({1.0, -0.5, 0.0}));
    CHECK_THROWS_AS(hardy_operator(steep, 1.0, 3), std::domain_error);
}

TEST_CASE("Hardy operator substitution identity uses the 2/n exponent") {
    // P f(t) = int_0^1 f(xi t) xi^{-2/n} dxi after s = xi t; the alternative
    // n/2 exponent makes the integral diverge for n >= 4.
    const DecreasingProfile two(PiecewisePowerLog({0.0, 1.0, 4.0, kInf},
                                                  {{1.0, 0.0, 0.0},
                                                   {0.5, 0.0, 0.0},
                                                   {0.0, 0.0, 0.0}}));
    for (int n : {3, 4}) {
        for (double t : {0.7, 2.3, 9.0}) {
            const double direct = hardy_operator(two, t, n);
            // Oracle: closed form over the flat head (where d(xi t) = 1),
            // adaptive quadrature on panels split at the jump points.
            const double head_end = std::min(1.0, 1.0 / t);
            double sub = std::pow(head_end, 1.0 - 2.0 / n) / (1.0 - 2.0 / n);
            std::vector<double> cuts{head_end, 1.0};
            if (4.0 / t > head_end && 4.0 / t < 1.0) cuts.insert(cuts.begin() + 1, 4.0 / t);
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
                sub += quad::adaptive(
                    [&](double xi) { return two(xi * t) * std::pow(xi, -2.0 / n); },
                    cuts[i], cuts[i + 1], {});
            CHECK(direct == doctest::Approx(sub).epsilon(1e-9));
        }
    }
    // Truncated n/2-exponent integrals keep growing as the cutoff shrinks.
    const int n = 4;
    const double t = 2.0;
    auto truncated = [&](double eps) {
        return quad::adaptive([&](double xi) { return two(xi * t) * std::pow(xi, -0.5 * n); },
                              eps, 1.0, {});
    };
    CHECK(truncated(1e-6) > 10.0 * truncated(1e-3));
}

TEST_CASE("riesz tail functional") {
    const DecreasingProfile chi1(PiecewisePowerLog::indicator(1.0));
    // n = 3: exactly 3 t^{-1/3} for t >= 1 and 4.5 - 1.5 t^{2/3} below.
    for (double t : {1.0, 2.0, 64.0})
        CHECK(riesz_tail(chi1, t, 3) == doctest::Approx(3.0 * std::pow(t, -1.0 / 3.0)).epsilon(1e-13));
    for (double t : {0.01, 0.2, 0.9})
        CHECK(riesz_tail(chi1, t, 3) ==
              doctest::Approx(4.5 - 1.5 * std::pow(t, 2.0 / 3.0)).epsilon(1e-13));
    CHECK(riesz_tail(chi1, 1e-9, 3) == doctest::Approx(4.5).epsilon(1e-6));

    // n = 4: tail 2 t^{-1/2}.
    CHECK(riesz_tail(chi1, 9.0, 4) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));

    const DecreasingProfile zero(PiecewisePowerLog::constant(0.0));
    CHECK(riesz_tail(zero, 1.0, 3) == 0.0);

    // The critical profile sits exactly on the divergence boundary.
    CHECK(riesz_tail(critical_profile(3), 1.0, 3) == kInf);
}

TEST_CASE("riesz tail equals n/(n-2) times the O'Neil bracket") {
    const DecreasingProfile two(PiecewisePowerLog({0.0, 1.0, 4.0, kInf},
                                                  {{1.0, 0.0, 0.0},
                                                   {0.5, 0.0, 0.0},
                                                   {0.0, 0.0, 0.0}}));
    for (int n : {3, 5}) {
        const double power = 2.0 / n - 1.0;
        const auto weighted = two.body().multiply(PiecewisePowerLog::single({1.0, power, 0.0}));
        for (double t : {0.1, 1.0, 3.0, 40.0}) {
            const double bracket = std::pow(t, power) * two.body().integrate(0.0, t) +
                                   weighted.integrate(t, kInf);
            CHECK(riesz_tail(two, t, n) ==
                  doctest::Approx(bracket * n / (n - 2.0)).epsilon(1e-12));
        }
    }
}

TEST_CASE("shell kernel identity: angular quadrature matches the Newton closed form") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> logu(-1.0, 1.0);
    QuadratureConfig tight;
    tight.rel_tol = 1e-11; // the oracle must out-resolve the 1e-8 claim
    for (int n : {3, 4, 5}) {
        const double sigma = unit_sphere_area(n);
        for (int trial = 0; trial < 20; ++trial) {
            const double rho = std::pow(10.0, logu(rng));
            const double s = std::pow(10.0, logu(rng));
            const double expect = sigma * std::pow(std::max(rho, s), 2.0 - n);
            CHECK(kernel_sphere_average(n, rho, s, tight) ==
                  doctest::Approx(expect).epsilon(1e-8));
        }
        // Equal radii, the delicate case for the quadrature.
        CHECK(kernel_sphere_average(n, 1.7, 1.7, tight) ==
              doctest::Approx(sigma * std::pow(1.7, 2.0 - n)).epsilon(1e-8));
    }
}

TEST_CASE("Lebesgue differentiation: small-ball averages converge to the value") {
    const RadialProfile two_step(3, PiecewisePowerLog({0.0, 1.0, 4.0, kInf},
                                                      {{1.0, 0.0, 0.0},
                                                       {0.5, 0.0, 0.0},
                                                       {0.25, -2.0, 0.0}}));
    for (const RadialProfile& cand : {critical_radial(3), critical_radial(5), two_step}) {
        for (double rho : {0.1, 0.5, 2.0, 7.0}) {
            const double avg = ball_average(cand, rho, 1e-3);
            CHECK(std::fabs(avg / cand(rho) - 1.0) <= 1e-4);
        }
    }
    const RadialProfile cand = critical_radial(3);
    const RadialFunction lift = riesz_lift(
        lift_decreasing(DecreasingProfile(PiecewisePowerLog::indicator(1.0)), 3));
    for (double rho : {0.2, 0.45, 0.8, 3.0}) {
        const double avg = ball_average_fn(lift.value, 3, lift.kinks, rho, 1e-3);
        CHECK(std::fabs(avg / lift.value(rho) - 1.0) <= 1e-4);
    }
}

TEST_CASE("geometric grids are deterministic and hit the endpoints") {
    const GeometricGrid g{1e-2, 1e2, 4};
    const auto pts = g.points();
    CHECK(pts.size() == 17);
    CHECK(pts.front() == doctest::Approx(1e-2));
    CHECK(pts.back() == 1e2);
    CHECK(g.points() == pts);
    CHECK_THROWS_AS((GeometricGrid{1.0, 0.5, 4}.points()), std::invalid_argument);
}
