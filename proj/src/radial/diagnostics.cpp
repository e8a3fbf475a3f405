#include "exle/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "exle/errors.hpp"

namespace exle {

namespace {

// The system written with p <= theta: swapping exponents swaps the roles of
// (u, lambda) and (v, gamma).
struct CanonicalView {
    double p;
    double theta;
    double lambda;
    double gamma;
    const std::vector<double>* u;
    const std::vector<double>* v;
};

CanonicalView canonical_view(const ExponentPair& e, const StatePair& s, double lambda,
                             double gamma) {
    if (e.is_canonical()) return {e.p(), e.theta(), lambda, gamma, &s.u, &s.v};
    return {e.theta(), e.p(), gamma, lambda, &s.v, &s.u};
}

void check_state(const StatePair& state, const RadialGrid& grid) {
    if (state.u.size() != grid.node_count() || state.v.size() != grid.node_count()) {
        throw ConfigError("state does not match the grid");
    }
}

}  // namespace

SoupletReport souplet_check(const ExponentPair& e, const StatePair& state, double lambda,
                            double gamma) {
    if (!(lambda > 0.0) || !(gamma > 0.0)) {
        throw DomainError("lambda and gamma must be positive");
    }
    if (state.u.size() != state.v.size() || state.u.empty()) {
        throw ConfigError("state components must be non-empty and of equal length");
    }
    const auto c = canonical_view(e, state, lambda, gamma);
    SoupletReport rep;
    rep.ratio = c.gamma * (c.p + 1.0) / (c.lambda * (c.theta + 1.0));
    rep.shift = std::max(0.0, std::pow(rep.ratio, 1.0 / (c.p + 1.0)) - 1.0);
    const double weak_ratio = rep.ratio / std::pow(rep.shift + 1.0, c.p + 1.0);

    rep.margin_min = std::numeric_limits<double>::infinity();
    rep.weak_margin_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.u->size(); ++i) {
        const double u1 = (*c.u)[i] + 1.0;
        const double v1 = (*c.v)[i] + 1.0;
        const double lhs = std::pow(v1 + rep.shift, c.p + 1.0);
        const double rhs_pow = std::pow(u1, c.theta + 1.0);
        rep.margin_min = std::min(rep.margin_min, lhs - rep.ratio * rhs_pow);
        rep.weak_margin_min =
            std::min(rep.weak_margin_min, std::pow(v1, c.p + 1.0) - weak_ratio * rhs_pow);
        rep.scale = std::max({rep.scale, lhs, rep.ratio * rhs_pow});
    }
    return rep;
}

double souplet_slack(const RadialGrid& grid, const SoupletReport& report) {
    const double h = grid.spacing();
    return h * h * report.scale;
}

double default_energy_exponent(const ExponentPair& e) {
    const auto c = e.canonical();
    return 0.5 * (c.p() + 1.0 + largest_root_L(c).root);
}

DiagnosticsReport energy_report(const ExponentPair& e, const StatePair& state, double s,
                                const RadialGrid& grid, std::size_t half_radius_index) {
    check_state(state, grid);
    const auto c = canonical_view(e, state, 1.0, 1.0);
    if (!(s > c.p + 1.0)) {
        std::ostringstream os;
        os << "energy exponent must exceed p+1 = " << c.p + 1.0 << " (got s=" << s << ")";
        throw DomainError(os.str());
    }
    const std::size_t last = grid.node_count() - 1;
    const std::size_t half = half_radius_index == 0 ? last / 2 : half_radius_index;
    if (half > last) {
        throw ConfigError("half-radius node index outside the grid");
    }

    const std::size_t n = grid.node_count();
    std::vector<double> j2(n), power(n), local(n), outer(n);
    const double e_u = 0.5 * (c.theta - 1.0);
    const double e_v = 0.5 * (c.p + 2.0 * s - 1.0);
    const double e_pow = c.theta + (c.theta + 1.0) * (s - 1.0) / (c.p + 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double u1 = (*c.u)[i] + 1.0;
        const double v1 = (*c.v)[i] + 1.0;
        j2[i] = std::pow(u1, e_u) * std::pow(v1, e_v);
        power[i] = std::pow(u1, e_pow);
        local[i] = std::pow(u1, c.theta) * std::pow(v1, s - 1.0);
        outer[i] = std::pow(v1, s);
    }
    DiagnosticsReport rep;
    rep.s_used = s;
    rep.energy_J2 = grid.integrate(j2);
    rep.energy_power = grid.integrate(power);
    // R = 1, so the R^-2 factor of the local estimate is 1.
    rep.local_ratio = grid.integrate(local, half) / grid.integrate(outer);
    return rep;
}

DiagnosticsReport diagnose(const ExponentPair& e, const StatePair& state, double lambda,
                           double gamma, double s, const RadialGrid& grid) {
    auto rep = energy_report(e, state, s, grid);
    rep.souplet_margin_min = souplet_check(e, state, lambda, gamma).margin_min;
    return rep;
}

RestrictedState restrict_to_radius(const StatePair& state, const RadialGrid& grid,
                                   double radius) {
    check_state(state, grid);
    if (!(radius > 0.0) || radius > 1.0) {
        throw DomainError("restriction radius must lie in (0, 1]");
    }
    const double k_real = radius * grid.intervals();
    const long k = std::lround(k_real);
    if (std::abs(k_real - static_cast<double>(k)) > 1e-9) {
        throw ConfigError("restriction radius must fall on a grid node");
    }
    RadialGrid sub(grid.dim(), static_cast<int>(k));
    StatePair out;
    out.u.assign(state.u.begin(), state.u.begin() + k + 1);
    out.v.assign(state.v.begin(), state.v.begin() + k + 1);
    return {std::move(sub), std::move(out)};
}

StatePair rescale(const ExponentPair& e, const StatePair& state, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw DomainError("rescale radius must be positive");
    }
    const auto se = scaling_exponents(e);
    const double fu = std::pow(radius, se.alpha);
    const double fv = std::pow(radius, se.beta);
    StatePair out;
    out.u.resize(state.u.size());
    out.v.resize(state.v.size());
    for (std::size_t i = 0; i < state.u.size(); ++i) out.u[i] = fu * (state.u[i] + 1.0) - 1.0;
    for (std::size_t i = 0; i < state.v.size(); ++i) out.v[i] = fv * (state.v[i] + 1.0) - 1.0;
    return out;
}

ProfileCoefficients singular_profile(const ExponentPair& e, int dim, double lambda,
                                     double gamma) {
    if (!(lambda > 0.0) || !(gamma > 0.0)) {
        throw DomainError("lambda and gamma must be positive");
    }
    const auto se = scaling_exponents(e);
    const double n = dim;
    const double ka = se.alpha * (n - 2.0 - se.alpha);
    const double kb = se.beta * (n - 2.0 - se.beta);
    if (!(ka > 0.0) || !(kb > 0.0)) {
        std::ostringstream os;
        os << "singular profile needs N > 2 + max(alpha, beta) = "
           << 2.0 + std::max(se.alpha, se.beta) << " (got N=" << dim << ")";
        throw DomainError(os.str());
    }
    const double p = e.p();
    const double theta = e.theta();
    // a ka = lambda b^p and b kb = gamma a^theta give b^(p theta - 1) = kb ka^theta / (gamma lambda^theta).
    const double target = kb * std::pow(ka, theta) / (gamma * std::pow(lambda, theta));
    const double m = p * theta - 1.0;
    double b = std::pow(target, 1.0 / m);
    b -= (std::pow(b, m) - target) / (m * std::pow(b, m - 1.0));
    return {lambda * std::pow(b, p) / ka, b};
}

double singular_profile_residual(const ExponentPair& e, const ProfileCoefficients& coeffs,
                                 double lambda, double gamma, const RadialGrid& grid,
                                 double r_min, double r_max) {
    const auto se = scaling_exponents(e);
    const std::size_t n = grid.node_count();
    std::vector<double> u(n, 0.0), v(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        u[i] = coeffs.a * std::pow(grid.node(i), -se.alpha);
        v[i] = coeffs.b * std::pow(grid.node(i), -se.beta);
    }
    const RadialLaplacian lap(grid);
    const auto au = lap.apply(u);
    const auto av = lap.apply(v);
    double worst = 0.0;
    for (std::size_t i = 2; i < lap.size(); ++i) {
        const double r = grid.node(i);
        if (r < r_min || r > r_max) continue;
        worst = std::max({worst, std::abs(au[i] - lambda * std::pow(v[i], e.p())),
                          std::abs(av[i] - gamma * std::pow(u[i], e.theta()))});
    }
    return worst;
}

std::string to_string(GrowthFlag flag) {
    switch (flag) {
        case GrowthFlag::bounded_looking:
            return "bounded-looking";
        case GrowthFlag::unbounded_looking:
            return "unbounded-looking";
        case GrowthFlag::indeterminate:
            break;
    }
    return "indeterminate";
}

namespace {

constexpr std::size_t kMinFitPoints = 5;
constexpr std::size_t kMaxFitPoints = 8;

// Least-squares intercept of y against x.
double intercept(std::span<const double> x, std::span<const double> y) {
    const double k = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = k * sxx - sx * sx;
    if (det == 0.0) return sy / k;
    return (sxx * sy - sx * sxy) / det;
}

}  // namespace

GrowthDiagnostic extremal_extrapolate(std::span<const Branch> refinements, const ExponentPair& e,
                                      int dim) {
    if (refinements.empty()) {
        throw DiagnosticError("no branch supplied");
    }
    GrowthDiagnostic out;
    out.dim = dim;
    out.n_new = threshold_report(e).n_new;
    out.threshold_predicts_bounded = dim < out.n_new;

    for (const auto& br : refinements) {
        if (br.points.size() < kMinFitPoints) {
            std::ostringstream os;
            os << "branch has " << br.points.size() << " points; at least " << kMinFitPoints
               << " are needed near the fold";
            throw DiagnosticError(os.str());
        }
        if (!br.bracketed()) {
            throw DiagnosticError("branch does not bracket the fold");
        }
        const int m = static_cast<int>(br.points.front().state.u.size()) - 1;
        if (!out.fits.empty() && m <= out.fits.back().intervals) {
            throw DiagnosticError("refinements must be ordered from coarse to fine");
        }
        const std::size_t k = std::min(kMaxFitPoints, br.points.size());
        const auto tail = std::span(br.points).last(k);
        const double star = br.midpoint();
        std::vector<double> x, yu, yv;
        out.table.clear();
        for (const auto& pt : tail) {
            const double d = star - pt.lambda;
            x.push_back(std::sqrt(std::max(d, 0.0)));
            yu.push_back(pt.sup_u);
            yv.push_back(pt.sup_v);
            out.table.push_back({pt.lambda, d, pt.sup_u, pt.sup_v});
        }
        // Sup-norms increase along the branch, so the fold value is at least the last one.
        out.fits.push_back({m, star, std::max(intercept(x, yu), tail.back().sup_u),
                            std::max(intercept(x, yv), tail.back().sup_v)});
    }

    if (out.fits.size() < 2) {
        out.flag = GrowthFlag::indeterminate;
        return out;
    }
    const auto& coarse = out.fits[out.fits.size() - 2];
    const auto& fine = out.fits.back();
    out.growth = std::max(fine.plateau_u / coarse.plateau_u, fine.plateau_v / coarse.plateau_v) - 1.0;
    // A singular limit forces the discrete fold plateau to grow like h^-alpha.
    const auto se = scaling_exponents(e);
    const double refine = static_cast<double>(fine.intervals) / coarse.intervals;
    out.growth_threshold = 0.5 * (std::pow(refine, std::min(se.alpha, se.beta)) - 1.0);
    out.flag = out.growth < out.growth_threshold ? GrowthFlag::bounded_looking
                                                 : GrowthFlag::unbounded_looking;
    return out;
}

}  // namespace exle
