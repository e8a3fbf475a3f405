#pragma once

// Inequalities and scaling laws checked on computed states: the pointwise
// u-v comparison, the integral energy bounds, the zoom invariance of the
// system, the power-law singular profile, and the fold growth diagnostic.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "exle/radial_grid.hpp"
#include "exle/solver.hpp"
#include "exle/threshold.hpp"

namespace exle {

struct SoupletReport {
    double margin_min = 0;       // min (v+1+a)^(p+1) - k (u+1)^(theta+1)
    double weak_margin_min = 0;  // min (v+1)^(p+1) - k/(a+1)^(p+1) (u+1)^(theta+1)
    double shift = 0;            // a = max{0, k^(1/(p+1)) - 1}
    double ratio = 0;            // k = gamma (p+1) / (lambda (theta+1))
    double scale = 0;            // largest power compared, for slack scaling
};

/// Pointwise comparison between the components, evaluated with p <= theta;
/// a pair given with p > theta is relabelled (u,lambda,p) <-> (v,gamma,theta).
SoupletReport souplet_check(const ExponentPair& e, const StatePair& state, double lambda,
                            double gamma);

/// Discretisation slack h^2 * scale tolerated on a computed margin.
double souplet_slack(const RadialGrid& grid, const SoupletReport& report);

struct DiagnosticsReport {
    double souplet_margin_min = 0;
    double energy_J2 = 0;     // int (u+1)^((theta-1)/2) (v+1)^((p+2s-1)/2)
    double energy_power = 0;  // int (u+1)^(theta + (theta+1)(s-1)/(p+1))
    double local_ratio = 0;   // int_{B_1/2} (u+1)^theta (v+1)^(s-1) / int_{B_1} (v+1)^s
    double s_used = 0;
};

/// Energy integrals over the unit ball (trapezoid rule in r with weight
/// r^(N-1)) in the canonical labelling; requires s > p + 1.  The inner ball of
/// the local ratio ends at node `half_radius_index` (default M/2).  The
/// Souplet field is left at zero; see diagnose().
DiagnosticsReport energy_report(const ExponentPair& e, const StatePair& state, double s,
                                const RadialGrid& grid, std::size_t half_radius_index = 0);

/// energy_report plus the Souplet margin.
DiagnosticsReport diagnose(const ExponentPair& e, const StatePair& state, double lambda,
                           double gamma, double s, const RadialGrid& grid);

/// Default energy exponent (p + 1 + s0)/2, strictly inside the range where L < 0.
double default_energy_exponent(const ExponentPair& e);

/// Nodes 0..K of a state with r_K = radius (radius * M must be an integer),
/// re-expressed on a K-interval unit grid; feed the result to rescale().
struct RestrictedState {
    RadialGrid grid;
    StatePair state;
};
RestrictedState restrict_to_radius(const StatePair& state, const RadialGrid& grid, double radius);

/// u~ + 1 = R0^alpha (u(R0 x) + 1), v~ + 1 = R0^beta (v(R0 x) + 1), where the
/// input nodes are the samples at R0 * r_i.
StatePair rescale(const ExponentPair& e, const StatePair& state, double radius);

struct ProfileCoefficients {
    double a = 0;  // u ~ a r^(-alpha)
    double b = 0;  // v ~ b r^(-beta)
};

/// Coefficients of the singular solution (a r^-alpha, b r^-beta) of
/// -Lap u = lambda v^p, -Lap v = gamma u^theta.  Requires N > 2 + max(alpha, beta).
ProfileCoefficients singular_profile(const ExponentPair& e, int dim, double lambda, double gamma);

/// Max |A u - lambda v^p|, |A v - gamma u^theta| of the sampled singular
/// profile at nodes with r in [r_min, r_max].
double singular_profile_residual(const ExponentPair& e, const ProfileCoefficients& coeffs,
                                 double lambda, double gamma, const RadialGrid& grid,
                                 double r_min, double r_max);

enum class GrowthFlag { bounded_looking, unbounded_looking, indeterminate };

std::string to_string(GrowthFlag flag);

struct GrowthRow {
    double lambda = 0;
    double distance = 0;  // lambda* - lambda
    double sup_u = 0;
    double sup_v = 0;
};

struct GrowthFit {
    int intervals = 0;
    double lambda_star = 0;
    double plateau_u = 0;  // sup_u extrapolated to the fold
    double plateau_v = 0;
};

struct GrowthDiagnostic {
    std::vector<GrowthRow> table;  // finest branch, points used in the fit
    std::vector<GrowthFit> fits;   // one per branch, coarse to fine
    double growth = 0;             // plateau ratio fine/coarse - 1 (largest over u, v)
    double growth_threshold = 0;
    GrowthFlag flag = GrowthFlag::indeterminate;
    int dim = 0;
    double n_new = 0;
    bool threshold_predicts_bounded = false;  // N < 2 + 2 x0
};

/// Fits sup-norms against sqrt(lambda* - lambda) on the last points of each
/// branch (lambda* = bracket midpoint) and compares the fold plateaus across
/// grid refinements, ordered coarse to fine.  A single branch yields the
/// table with an indeterminate flag.  Throws DiagnosticError when a branch
/// has fewer than 5 points or is not bracketed.
GrowthDiagnostic extremal_extrapolate(std::span<const Branch> refinements, const ExponentPair& e,
                                      int dim);

}  // namespace exle
