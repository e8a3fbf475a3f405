#include <cmath>
#include <vector>

#include <doctest.h>

#include "exle/diagnostics.hpp"
#include "exle/errors.hpp"

using namespace exle;

TEST_CASE("souplet margin vanishes in the symmetric case") {
    const RadialGrid g(3, 64);
    const ExponentPair e(2, 2);
    const auto res = solve_minimal(e, 2.0, 2.0, g);
    REQUIRE(res.converged());
    const auto rep = souplet_check(e, res.state, 2.0, 2.0);
    CHECK(rep.ratio == doctest::Approx(1.0));
    CHECK(rep.shift == 0.0);
    CHECK(std::abs(rep.margin_min) <= souplet_slack(g, rep));
}

TEST_CASE("souplet margin on asymmetric and relabelled pairs") {
    const RadialGrid g(3, 64);
    const ExponentPair e(2, 3);
    const auto res = solve_minimal(e, 1.0, 0.5, g);
    REQUIRE(res.converged());
    const auto rep = souplet_check(e, res.state, 1.0, 0.5);
    CHECK(rep.margin_min >= -souplet_slack(g, rep));
    CHECK(rep.weak_margin_min >= -souplet_slack(g, rep));

    StatePair swapped{res.state.v, res.state.u};
    const auto rel = souplet_check(e.swapped(), swapped, 0.5, 1.0);
    CHECK(rel.margin_min == doctest::Approx(rep.margin_min));
    CHECK(rel.ratio == doctest::Approx(rep.ratio));

    for (double sigma : {0.2, 3.0, 10.0}) {
        const auto r2 = solve_minimal(ExponentPair(1.5, 4), 0.5, 0.5 * sigma, g);
        REQUIRE(r2.converged());
        const auto s2 = souplet_check(ExponentPair(1.5, 4), r2.state, 0.5, 0.5 * sigma);
        CHECK(s2.margin_min >= -souplet_slack(g, s2));
    }
}

TEST_CASE("energy report") {
    const RadialGrid g(3, 128);
    const ExponentPair e(2, 2);
    CHECK(default_energy_exponent(e) == doctest::Approx((3.0 + 4 + 2 * std::sqrt(2.0)) / 2.0));
    const auto zero = StatePair::zeros(g);
    CHECK_THROWS_AS(energy_report(e, zero, 3.0, g), DomainError);
    const double s = 4.5;
    const auto rep = energy_report(e, zero, s, g);
    // With u = v = 0 every integrand is 1.
    CHECK(rep.energy_J2 == doctest::Approx(g.ball_volume()).epsilon(1e-3));
    CHECK(rep.energy_power == doctest::Approx(g.ball_volume()).epsilon(1e-3));
    CHECK(rep.local_ratio == doctest::Approx(1.0 / 8.0).epsilon(1e-2));
    CHECK(rep.s_used == s);

    const auto res = solve_minimal(e, 2.0, 2.0, g);
    const auto d = diagnose(e, res.state, 2.0, 2.0, s, g);
    CHECK(d.energy_J2 > rep.energy_J2);
    CHECK(d.local_ratio > 0.0);
}

TEST_CASE("singular profile coefficients") {
    const auto c = singular_profile(ExponentPair(2, 2), 5, 1.0, 1.0);
    CHECK(c.a == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(c.b == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(singular_profile(ExponentPair(2, 2), 4, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(singular_profile(ExponentPair(2, 2), 3, 1.0, 1.0), DomainError);

    // Asymmetric: a alpha (N-2-alpha) = lambda b^p, b beta (N-2-beta) = gamma a^theta.
    const ExponentPair e(2, 3);
    const auto se = scaling_exponents(e);
    const auto d = singular_profile(e, 8, 1.5, 0.7);
    CHECK(d.a * se.alpha * (8 - 2 - se.alpha) == doctest::Approx(1.5 * d.b * d.b).epsilon(1e-12));
    CHECK(d.b * se.beta * (8 - 2 - se.beta) == doctest::Approx(0.7 * d.a * d.a * d.a).epsilon(1e-12));
}

TEST_CASE("singular profile residual converges at second order") {
    const ExponentPair e(2, 2);
    const auto c = singular_profile(e, 5, 1.0, 1.0);
    double prev = 0;
    for (int m : {40, 80, 160, 320}) {
        const double res = singular_profile_residual(e, c, 1.0, 1.0, RadialGrid(5, m), 0.1, 0.9);
        if (prev > 0) CHECK(prev / res == doctest::Approx(4.0).epsilon(0.1));
        prev = res;
    }
}

TEST_CASE("rescaling maps solutions to solutions") {
    const RadialGrid g(3, 256);
    const ExponentPair e(2, 3);
    const double lambda = 1.0, gamma = 0.5;
    const auto res = solve_minimal(e, lambda, gamma, g);
    REQUIRE(res.converged());
    const double eps = pde_residual(e, lambda, gamma, res.state, g);
    const auto se = scaling_exponents(e);
    for (double r0 : {0.5, 0.25}) {
        const auto sub = restrict_to_radius(res.state, g, r0);
        CHECK(sub.grid.intervals() == static_cast<int>(256 * r0));
        const auto scaled = rescale(e, sub.state, r0);
        CHECK(pde_residual(e, lambda, gamma, scaled, sub.grid) <= 10.0 * eps + 1e-14);
        CHECK(scaled.sup_u() + 1.0 == doctest::Approx(std::pow(r0, se.alpha) * (res.state.sup_u() + 1.0)).epsilon(1e-14));
        CHECK(scaled.sup_v() + 1.0 == doctest::Approx(std::pow(r0, se.beta) * (res.state.sup_v() + 1.0)).epsilon(1e-14));
    }
    CHECK_THROWS(restrict_to_radius(res.state, g, 0.3));
}

TEST_CASE("growth diagnostic") {
    const ExponentPair e(2, 2);
    ContinuationConfig cfg;
    CHECK_THROWS_AS(extremal_extrapolate({}, e, 3), DiagnosticError);

    const auto coarse = continue_ray(e, 1.0, RadialGrid(3, 64), cfg);
    const auto fine = continue_ray(e, 1.0, RadialGrid(3, 128), cfg);
    const std::vector<Branch> one{fine};
    const auto single = extremal_extrapolate(one, e, 3);
    CHECK(single.flag == GrowthFlag::indeterminate);
    CHECK(single.table.size() >= 5);
    CHECK(single.threshold_predicts_bounded);

    const std::vector<Branch> pair{coarse, fine};
    const auto diag = extremal_extrapolate(pair, e, 3);
    CHECK(diag.flag == GrowthFlag::bounded_looking);
    CHECK(diag.fits.size() == 2);
    CHECK(to_string(diag.flag) == "bounded-looking");

    const std::vector<Branch> reversed{fine, coarse};
    CHECK_THROWS_AS(extremal_extrapolate(reversed, e, 3), DiagnosticError);

    Branch thin = fine;
    thin.points.resize(3);
    const std::vector<Branch> too_few{thin};
    CHECK_THROWS_AS(extremal_extrapolate(too_few, e, 3), DiagnosticError);

    const auto hi_coarse = continue_ray(e, 1.0, RadialGrid(20, 128), cfg);
    const auto hi_fine = continue_ray(e, 1.0, RadialGrid(20, 256), cfg);
    const std::vector<Branch> hi{hi_coarse, hi_fine};
    const auto hd = extremal_extrapolate(hi, e, 20);
    CHECK(hd.flag == GrowthFlag::unbounded_looking);
    CHECK_FALSE(hd.threshold_predicts_bounded);
}

TEST_CASE("energy grows along the branch") {
    const RadialGrid g(3, 64);
    const ExponentPair e(2, 2);
    const auto br = continue_ray(e, 1.0, g);
    const double s = default_energy_exponent(e);
    double prev = 0;
    for (const auto& pt : br.points) {
        const double j2 = energy_report(e, pt.state, s, g).energy_J2;
        CHECK(j2 >= prev);
        prev = j2;
    }
}

TEST_CASE("rescale edge cases") {
    const RadialGrid g(5, 128);
    const ExponentPair e(2, 2);
    const auto res = solve_minimal(e, 2.0, 2.0, g);
    REQUIRE(res.converged());
    const auto same = rescale(e, res.state, 1.0);
    for (std::size_t i = 0; i < g.node_count(); ++i) CHECK(same.u[i] == doctest::Approx(res.state.u[i]));
    CHECK_THROWS_AS(rescale(e, res.state, 0.0), DomainError);
    CHECK_THROWS_AS(rescale(e, res.state, -0.5), DomainError);

    const double eps = pde_residual(e, 2.0, 2.0, res.state, g);
    const auto sub = restrict_to_radius(res.state, g, 0.5);
    const auto scaled = rescale(e, sub.state, 0.5);
    CHECK(pde_residual(e, 2.0, 2.0, scaled, sub.grid) < 10.0 * eps + 1e-15);
}

TEST_CASE("souplet margin transforms consistently under rescale") {
    const RadialGrid g(3, 128);
    const ExponentPair e(2, 3);
    const auto res = solve_minimal(e, 1.0, 0.5, g);
    REQUIRE(res.converged());
    const auto sub = restrict_to_radius(res.state, g, 0.5);
    const auto scaled = rescale(e, sub.state, 0.5);
    // With a = 0 the margin (v+1)^(p+1) - k (u+1)^(theta+1) picks up R0^(beta(p+1)) = R0^(alpha(theta+1)).
    const auto se = scaling_exponents(e);
    CHECK(se.beta * 3 == doctest::Approx(se.alpha * 4));
    const auto before = souplet_check(e, sub.state, 1.0, 0.5);
    const auto after = souplet_check(e, scaled, 1.0, 0.5);
    REQUIRE(before.shift == 0.0);
    CHECK(after.margin_min == doctest::Approx(std::pow(0.5, se.beta * 3) * before.margin_min).epsilon(1e-10));
}

TEST_CASE("singular profile relabelling swaps coefficients") {
    const auto c = singular_profile(ExponentPair(2, 3), 9, 1.5, 0.7);
    const auto d = singular_profile(ExponentPair(3, 2), 9, 0.7, 1.5);
    CHECK(d.a == doctest::Approx(c.b).epsilon(1e-12));
    CHECK(d.b == doctest::Approx(c.a).epsilon(1e-12));
}
