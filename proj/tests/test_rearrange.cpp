#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "decide.hpp"
#include "rearrange.hpp"

using namespace rimax;

namespace {

// Layer-cake oracle: reconstruct the rearrangement from the distribution
// function alone, f*(t) = inf{lambda : mu(lambda) <= t}, by bisection over
// lambda. Independent of the exact compose_power path.
double layer_cake_rearrangement(const RadialProfile& f, double t, double lambda_hi) {
    double lo = 0.0, hi = lambda_hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == 0.0) break;
        if (distribution(f, mid) <= t) hi = mid; else lo = mid;
    }
    return hi;
}

// Measure of {t : d(t) > lambda} for a non-increasing profile, by bisection.
double superlevel_measure(const DecreasingProfile& d, double lambda) {
    if (d(1e-300) <= lambda) return 0.0;
    double lo = 1e-300, hi = 1e300;
    if (d(hi) > lambda) return kInf;
    for (int it = 0; it < 300; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (d(mid) > lambda) lo = mid; else hi = mid;
    }
    return std::sqrt(lo * hi);
}

} // namespace

TEST_CASE("unit ball volume") {
    CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
    CHECK(unit_ball_volume(2) == doctest::Approx(M_PI));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0));
    CHECK(unit_sphere_area(3) == doctest::Approx(4.0 * M_PI));
    CHECK(unit_ball_volume(4) == doctest::Approx(M_PI * M_PI / 2.0));
}

TEST_CASE("distribution function of the critical radial profile") {
    const RadialProfile F = critical_radial(3);
    const double c3 = unit_ball_volume(3);

    // F > 1/2 on the ball of radius 2 (solve rho^{-1} > 1/2 directly).
    CHECK(distribution(F, 0.5) == doctest::Approx(8.0 * c3).epsilon(1e-12));
    CHECK(distribution(F, 2.0) == 0.0);
    // Approaching lambda = 1 from below the super-level set shrinks to the
    // closed unit ball.
    CHECK(distribution(F, 0.999) == doctest::Approx(c3 * std::pow(0.999, -3.0)).epsilon(1e-9));

    const RadialProfile one(3, PiecewisePowerLog::constant(1.0));
    CHECK(distribution(one, 0.5) == kInf);
    CHECK(distribution(one, 1.5) == 0.0);

    CHECK_THROWS_AS(distribution(F, 0.0), std::domain_error);
}

TEST_CASE("distribution handles log factors and non-monotone profiles") {
    // Unimodal tail piece t^{-1/2}(1+log t)^2: peak at t = e^3.
    const RadialProfile f(3, PiecewisePowerLog({0.0, 1.0, kInf},
                                               {{0.0, 0.0, 0.0}, {1.0, -0.5, 2.0}}));
    const double peak = std::exp(-1.5) * 16.0;
    CHECK(distribution(f, peak * 1.0001) == 0.0);
    // Just below the peak the super-level set is a thin annulus around e^3.
    const double vol = distribution(f, peak * 0.999);
    CHECK(vol > 0.0);
    CHECK(vol < unit_ball_volume(3) * std::pow(std::exp(3.0) * 1.2, 3.0));
    // Against a brute-force radial scan at a lower level.
    const double lambda = 1.0;
    double lo = 1e-9, hi = std::exp(3.0);
    for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (f(mid) > lambda) hi = mid; else lo = mid;
    }
    const double r_in = std::sqrt(lo * hi);
    lo = std::exp(3.0), hi = 1e12;
    for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (f(mid) > lambda) lo = mid; else hi = mid;
    }
    const double r_out = std::sqrt(lo * hi);
    CHECK(distribution(f, lambda) ==
          doctest::Approx(unit_ball_volume(3) * (std::pow(r_out, 3) - std::pow(r_in, 3)))
              .epsilon(1e-6));
}

TEST_CASE("exact rearrangement of the critical radial profile") {
    const RadialProfile F = critical_radial(3);
    const double c3 = unit_ball_volume(3);
    const DecreasingProfile star = rearrangement(F);

    // Closed form: 1 on (0, c3], (t/c3)^{-1/3} beyond.
    for (int i = 0; i <= 64; ++i) {
        const double t = std::pow(10.0, -2.0 + 6.0 * i / 64.0);
        const double expect = t <= c3 ? 1.0 : std::pow(t / c3, -1.0 / 3.0);
        CHECK(star(t) == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(star(8.0 * c3) == doctest::Approx(0.5).epsilon(1e-13));

    // Layer-cake oracle reproduces it within 1e-3.
    for (double t : {0.5, 2.0, c3, 10.0, 100.0, 1e4})
        CHECK(layer_cake_rearrangement(F, t, 2.0) ==
              doctest::Approx(star(t)).epsilon(1e-3));
}

TEST_CASE("rearrangement of a ball indicator is an interval indicator") {
    const double volume = 2.37;
    const double radius = std::pow(volume / unit_ball_volume(3), 1.0 / 3.0);
    const RadialProfile ball(3, PiecewisePowerLog({0.0, radius, kInf},
                                                  {{1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}));
    const DecreasingProfile star = rearrangement(ball);
    CHECK(star(volume * 0.9999) == doctest::Approx(1.0));
    CHECK(star(volume * 1.0001) == 0.0);
    CHECK(star.body().bounds()[1] == doctest::Approx(volume).epsilon(1e-14));
}

TEST_CASE("the lift of a decreasing profile rearranges back to itself") {
    for (int n : {3, 4, 5}) {
        for (const auto& [name, d] : std::vector<std::pair<const char*, DecreasingProfile>>{
                 {"critical", critical_profile(n)},
                 {"chi", DecreasingProfile(PiecewisePowerLog::indicator(2.5))},
                 {"two_step",
                  DecreasingProfile(PiecewisePowerLog(
                      {0.0, 1.0, 4.0, kInf},
                      {{1.0, 0.0, 0.0}, {0.5, 0.0, 0.0}, {0.0, 0.0, 0.0}}))}}) {
            (void)name;
            const RadialProfile lifted = lift_decreasing(d, n);
            const DecreasingProfile back = rearrangement(lifted);
            REQUIRE(back.body().piece_count() == d.body().piece_count());
            for (std::size_t i = 0; i < d.body().bounds().size(); ++i) {
                const double b = d.body().bounds()[i];
                if (b == 0.0 || b == kInf) CHECK(back.body().bounds()[i] == b);
                else CHECK(back.body().bounds()[i] == doctest::Approx(b).epsilon(1e-12));
            }
            for (double t : {0.3, 0.9999, 1.5, 3.0, 17.0})
                CHECK(back(t) == doctest::Approx(d(t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("rearrangement rejects profiles it cannot invert exactly") {
    CHECK_THROWS_AS(rearrangement(RadialProfile(3, PiecewisePowerLog::constant(1.0))),
                    std::invalid_argument);
    // increasing radial profile
    CHECK_THROWS_AS(rearrangement(RadialProfile(3, PiecewisePowerLog::single({1.0, 1.0, 0.0}))),
                    std::invalid_argument);
    // log factor on a decreasing tail
    CHECK_THROWS_AS(rearrangement(RadialProfile(
                        3, PiecewisePowerLog({0.0, 1.0, kInf},
                                             {{1.0, 0.0, 0.0}, {1.0, -1.0, -1.0}}))),
                    std::invalid_argument);
}

TEST_CASE("equimeasurability on a lambda grid") {
    const std::vector<RadialProfile> corpus = {
        critical_radial(3),
        critical_radial(4),
        lift_decreasing(DecreasingProfile(PiecewisePowerLog::indicator(1.0)), 3),
        lift_decreasing(DecreasingProfile(PiecewisePowerLog(
                            {0.0, 1.0, 4.0, kInf},
                            {{1.0, 0.0, 0.0}, {0.5, 0.0, 0.0}, {0.0, 0.0, 0.0}})),
                        3),
    };
    for (const auto& f : corpus) {
        const DecreasingProfile star = rearrangement(f);
        for (int i = 0; i < 50; ++i) {
            const double lambda = std::pow(10.0, -3.0 + 2.9 * i / 49.0);
            const double mu = distribution(f, lambda);
            const double ms = superlevel_measure(star, lambda);
            if (mu == kInf) {
                CHECK(ms == kInf);
            } else if (mu == 0.0) {
                CHECK(ms <= 1e-250);
            } else {
                CHECK(ms == doctest::Approx(mu).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("rearrangements are non-increasing and right-continuous") {
    const DecreasingProfile star = rearrangement(critical_radial(3));
    CHECK(star.body().non_increasing());
    // Right continuity at the interior breakpoint.
    const double b = star.body().bounds()[1];
    CHECK(star(b) == doctest::Approx(star.body().pieces()[1].eval(b)));
}

TEST_CASE("dilation law: (f_a)*(t) = f*(a^n t)") {
    const RadialProfile F = critical_radial(3);
    const DecreasingProfile star = rearrangement(F);
    for (double a : {0.5, 2.0}) {
        const RadialProfile scaled(3, F.radial().compose_power(a, 1.0)); // f(a rho)
        const DecreasingProfile sstar = rearrangement(scaled);
        for (int i = 0; i <= 40; ++i) {
            const double t = std::pow(10.0, -2.0 + 5.0 * i / 40.0);
            CHECK(sstar(t) == doctest::Approx(star(a * a * a * t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("running average f**") {
    const DecreasingProfile chi(PiecewisePowerLog::indicator(1.0));
    CHECK(doublestar(chi, 4.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(doublestar(chi, 0.5) == doctest::Approx(1.0).epsilon(1e-14));

    // h3 at t = 2: (1/2)[1 + (3/2)(2^{2/3} - 1)]
    const DecreasingProfile h = critical_profile(3);
    const double expect = 0.5 * (1.0 + 1.5 * (std::cbrt(4.0) - 1.0));
    CHECK(doublestar(h, 2.0) == doctest::Approx(expect).epsilon(1e-13));
    CHECK(expect == doctest::Approx(0.94055078897614966).epsilon(1e-15));

    // Averaging identity at t -> 0+ for profiles continuous at 0.
    for (const auto& d : {chi, h})
        CHECK(doublestar(d, 1e-6) == doctest::Approx(d(1e-7)).epsilon(1e-3));

    // Non-integrable head errors out.
    const DecreasingProfile bad(PiecewisePowerLog::single({1.0, -1.5, 0.0}));
    CHECK_THROWS_AS(doublestar(bad, 1.0), std::domain_error);
}

TEST_CASE("f** dominates f* and is non-increasing") {
    for (const auto& d : {rearrangement(critical_radial(3)),
                          DecreasingProfile(PiecewisePowerLog::indicator(1.0)),
                          critical_profile(4)}) {
        double prev = kInf;
        for (int i = 0; i <= 60; ++i) {
            const double t = std::pow(10.0, -3.0 + 6.0 * i / 60.0);
            const double ds = doublestar(d, t);
            CHECK(ds >= d(t) * (1.0 - 1e-12));
            CHECK(ds <= prev * (1.0 + 1e-12));
            prev = ds;
        }
    }
}

TEST_CASE("doublestar expansion matches direct integration") {
    // Includes an interior alpha = -1 piece starting below 1, which
    // exercises both the raw-log and the (1+log t) representations.
    const DecreasingProfile tricky(PiecewisePowerLog(
        {0.0, 0.5, 3.0, kInf},
        {{1.0, 0.0, 0.0}, {0.5, -1.0, 0.0}, {0.0, 0.0, 0.0}}));
    const std::vector<DecreasingProfile> corpus = {
        tricky,
        critical_profile(3),
        DecreasingProfile(PiecewisePowerLog::indicator(1.0)),
        rearrangement(critical_radial(5)),
    };
    for (const auto& d : corpus) {
        const DoublestarExpansion ex = doublestar_expansion(d);
        for (int i = 0; i <= 80; ++i) {
            const double t = std::pow(10.0, -3.0 + 7.0 * i / 80.0);
            CHECK(ex.eval(t) == doctest::Approx(doublestar(d, t)).epsilon(1e-12));
        }
    }
}
