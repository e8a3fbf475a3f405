#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "exle/diagnostics.hpp"
#include "exle/random.hpp"
#include "exle/solver.hpp"
#include "exle/threshold.hpp"

using namespace exle;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

// Grid 1.1, 1.2, ..., 20 by integer index to avoid accumulated steps.
std::vector<double> exponent_axis() {
    std::vector<double> axis;
    for (int i = 11; i <= 200; ++i) axis.push_back(i / 10.0);
    return axis;
}

Outcome closed_form_roots() {
    const auto t0 = std::chrono::steady_clock::now();
    const ExponentPair e(2, 2);
    const double s0 = largest_root_L(e).root;
    const auto r = threshold_report(e);
    const double exact_s0 = 4 + 2 * std::sqrt(2.0);
    const double exact_n = 10 + 4 * std::sqrt(2.0);
    const double ds = std::abs(s0 - exact_s0);
    const double dn = std::max(std::abs(r.n_new - exact_n), std::abs(r.n_cowan - exact_n));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {ds < 1e-10 && dn < 1e-9 && secs < 1.0,
            fmt("|s0-(4+2sqrt2)|=%.2e |n-(10+4sqrt2)|=%.2e", ds, dn)};
}

Outcome improvement_claim() {
    const auto axis = exponent_axis();
    int off = 0, off_bad = 0, diag_bad = 0;
    double min_gap = INFINITY, max_diag = 0;
    for (std::size_t i = 0; i < axis.size(); ++i) {
        for (std::size_t j = i; j < axis.size(); ++j) {
            const auto r = threshold_report(ExponentPair(axis[i], axis[j]));
            if (i == j) {
                max_diag = std::max(max_diag, std::abs(r.n_new - r.n_cowan));
                if (!(std::abs(r.n_new - r.n_cowan) < 1e-8)) ++diag_bad;
            } else {
                ++off;
                min_gap = std::min(min_gap, r.n_new - r.n_cowan);
                if (!(r.n_new > r.n_cowan)) ++off_bad;
            }
        }
    }
    return {off_bad == 0 && diag_bad == 0,
            fmt("%d off-diagonal points, %d violations, min gap %.3e; diagonal max |diff| %.2e", off,
                off_bad, min_gap, max_diag)};
}

Outcome smoothness_floor() {
    const auto axis = exponent_axis();
    int bad = 0;
    double min_x0 = INFINITY;
    for (std::size_t i = 0; i < axis.size(); ++i) {
        for (std::size_t j = i; j < axis.size(); ++j) {
            const double x0 = threshold_report(ExponentPair(axis[i], axis[j])).x0;
            min_x0 = std::min(min_x0, x0);
            if (!(x0 > 4.0)) ++bad;
        }
    }
    return {bad == 0, fmt("min x0 = %.6f, %d points with x0 <= 4", min_x0, bad)};
}

Outcome identity_suite() {
    UniformSampler rng(2024);
    int failures = 0;
    int diagonal = 0;
    double worst = 0;
    std::string worst_name = "none";
    for (int k = 0; k < 1000; ++k) {
        const double p = rng.next(1.0, 20.0);
        const double theta = (k % 10 == 0) ? p : rng.next(1.0, 20.0);
        if (p * theta <= 1.0 + 1e-9) continue;
        const ExponentPair e(p, theta);
        diagonal += e.is_diagonal() ? 1 : 0;
        const auto rep = check_polynomial_identities(e, 1, static_cast<std::uint64_t>(k));
        for (const auto& r : rep.entries) {
            if (!r.passed) ++failures;
            if (r.tolerance > 0 && r.value > worst) {
                worst = r.value;
                worst_name = r.name;
            }
        }
    }
    return {failures == 0,
            fmt("1000 samples (%d diagonal), %d failed entries, worst residual %.2e (%s)", diagonal,
                failures, worst, worst_name.c_str())};
}

Outcome criterion_equivalence() {
    UniformSampler rng(77);
    int used = 0, skipped = 0, exceptions = 0;
    while (used < 10000) {
        const ExponentPair e(rng.next(1.0, 20.0), rng.next(1.0, 20.0) + 1e-6);
        const double pc = e.canonical().p();
        const double s0 = largest_root_L(e).root;
        const double s = rng.next(pc + 1.0, 3.0 * s0);
        if (!(s > pc + 1.0)) continue;
        const double l = eval_L(e, s);
        if (std::abs(l) <= 1e-6) {
            ++skipped;
            continue;
        }
        ++used;
        const double prod = stability_product(e, s);
        const int lhs = (prod > 1.0) - (prod < 1.0);
        const int rhs = -((l > 0.0) - (l < 0.0));
        if (lhs != rhs) ++exceptions;
    }
    return {exceptions == 0, fmt("%d samples, %d skipped near roots, %d exceptions", used, skipped, exceptions)};
}

struct SolverRun {
    Branch coarse;
    Branch fine;
    bool ok = false;
};

const SolverRun& solver_runs() {
    static const SolverRun runs = [] {
        SolverRun r;
        const ExponentPair e(2, 2);
        r.coarse = continue_ray(e, 1.0, RadialGrid(3, 256));
        r.fine = continue_ray(e, 1.0, RadialGrid(3, 512));
        r.ok = true;
        return r;
    }();
    return runs;
}

Outcome solver_verification() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& runs = solver_runs();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const ExponentPair e(2, 2);
    const RadialGrid grid(3, 256);
    const auto& br = runs.coarse;
    const double width = br.relative_width();
    const double shift = std::abs(runs.fine.midpoint() - br.midpoint()) / br.midpoint();
    double min_mu1 = INFINITY;
    int souplet_bad = 0;
    for (const auto& pt : br.points) {
        min_mu1 = std::min(min_mu1, pt.mu1);
        const auto rep = souplet_check(e, pt.state, pt.lambda, pt.gamma);
        if (rep.margin_min < -souplet_slack(grid, rep)) ++souplet_bad;
    }
    const bool ok = width <= 1e-3 && shift <= 0.01 && min_mu1 >= 1 - 1e-6 && souplet_bad == 0 && secs < 120;
    return {ok, fmt("lambda* in [%.9f, %.9f], rel width %.2e, M=512 shift %.2e, min mu1 %.6f, "
                    "%d Souplet violations, %.1f s",
                    br.lambda_lo, br.lambda_hi, width, shift, min_mu1, souplet_bad, secs)};
}

Outcome singular_profile_check() {
    const ExponentPair e(2, 2);
    const auto c = singular_profile(e, 5, 1.0, 1.0);
    const double coeff_err = std::max(std::abs(c.a - 2.0), std::abs(c.b - 2.0));
    std::vector<double> res;
    for (int m : {40, 80, 160, 320}) {
        res.push_back(singular_profile_residual(e, c, 1.0, 1.0, RadialGrid(5, m), 0.1, 0.9));
    }
    double min_order = INFINITY;
    for (std::size_t i = 1; i < res.size(); ++i) min_order = std::min(min_order, std::log2(res[i - 1] / res[i]));
    return {coeff_err < 1e-14 && min_order > 1.9,
            fmt("(A,B)=(%.15g,%.15g), residuals %.2e..%.2e, min observed order %.3f", c.a, c.b, res.front(),
                res.back(), min_order)};
}

Outcome energy_boundedness() {
    const ExponentPair e(2, 2);
    const RadialGrid grid(3, 256);
    const double s = default_energy_exponent(e);
    const auto& pts = solver_runs().coarse.points;
    if (pts.size() < 2) return {false, "branch has fewer than two points"};
    double running = 0;
    std::vector<double> maxima;
    for (const auto& pt : pts) {
        running = std::max(running, energy_report(e, pt.state, s, grid).energy_J2);
        maxima.push_back(running);
    }
    const double a = maxima[maxima.size() - 2], b = maxima.back();
    const double change = std::abs(b - a) / b;
    return {change < 0.05, fmt("s=%.6f, running max J2 %.6f -> %.6f (change %.2f%%)", s, a, b, 100 * change)};
}

Outcome rescale_covariance() {
    const ExponentPair e(2, 3);
    const RadialGrid grid(3, 256);
    const double lambda = 1.0, gamma = 0.5;
    const auto res = solve_minimal(e, lambda, gamma, grid);
    if (!res.converged()) return {false, "base solve did not converge"};
    const double eps = pde_residual(e, lambda, gamma, res.state, grid);
    const auto se = scaling_exponents(e);
    bool ok = true;
    std::string detail = fmt("eps=%.2e", eps);
    for (double r0 : {0.5, 0.25}) {
        const auto sub = restrict_to_radius(res.state, grid, r0);
        const auto scaled = rescale(e, sub.state, r0);
        const double eps_r = pde_residual(e, lambda, gamma, scaled, sub.grid);
        const double su = (scaled.sup_u() + 1) / (std::pow(r0, se.alpha) * (res.state.sup_u() + 1)) - 1;
        const double sv = (scaled.sup_v() + 1) / (std::pow(r0, se.beta) * (res.state.sup_v() + 1)) - 1;
        ok = ok && eps_r <= 10 * eps + 1e-15 && std::abs(su) < 1e-13 && std::abs(sv) < 1e-13;
        detail += fmt("; R0=%.2f: eps=%.2e, sup ratio errors %.1e/%.1e", r0, eps_r, su, sv);
    }
    return {ok, detail};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"closed-form roots at p = theta = 2", closed_form_roots},
        {"new threshold improves on the old off the diagonal", improvement_claim},
        {"x0 > 4 on the exponent grid", smoothness_floor},
        {"polynomial identity suite", identity_suite},
        {"stability product criterion equivalence", criterion_equivalence},
        {"fold bracket, refinement, stability and Souplet margins", solver_verification},
        {"singular profile and second-order residual", singular_profile_check},
        {"energy J2 stabilises towards the fold", energy_boundedness},
        {"rescaling covariance", rescale_covariance},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome out;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            out = criteria[i].second();
        } catch (const std::exception& ex) {
            out = {false, std::string("exception: ") + ex.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!out.passed) ++failed;
        std::printf("criterion %zu: %s  %s [%s] (%.2f s)\n", i + 1, out.passed ? "PASS" : "FAIL",
                    criteria[i].first.c_str(), out.detail.c_str(), secs);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
