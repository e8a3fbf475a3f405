#pragma once

// Minimal solutions of the radial Lane-Emden system, their semi-stability
// eigenvalue, and continuation along a ray gamma = sigma * lambda up to the fold.

#include <stdexcept>
#include <string>
#include <vector>

#include "exle/radial_grid.hpp"
#include "exle/threshold.hpp"

namespace exle {

enum class SweepOrder { u_first, v_first };

struct SolverOptions {
    double tol = 1e-10;          // sup-norm increment, relative to max(1, sup)
    int max_iter = 200000;
    double blowup_cap = 1e8;     // sup-norm beyond which the iteration is declared divergent
    SweepOrder order = SweepOrder::u_first;
};

enum class SolveStatus {
    converged,
    blew_up,    // sup-norm exceeded the cap
    exhausted,  // max_iter reached while the iterates were still growing
};

struct SolveResult {
    SolveStatus status = SolveStatus::exhausted;
    StatePair state;
    int iterations = 0;
    double last_increment = 0;
    /// Nodes where an iterate decreased by more than round-off (expected 0).
    int monotonicity_violations = 0;

    bool converged() const noexcept { return status == SolveStatus::converged; }
};

/// Monotone iteration u_{k+1} = A^{-1}[lambda (v_k+1)^p], v_{k+1} = A^{-1}[gamma (u_{k+1}+1)^theta]
/// started from (0, 0).  Divergence is reported through the status, not thrown.
SolveResult solve_minimal(const ExponentPair& e, double lambda, double gamma,
                          const RadialGrid& grid, const SolverOptions& opts = {});

/// Same iteration started from `seed`, which must be a subsolution for
/// (lambda, gamma), e.g. the minimal solution at smaller parameters.
SolveResult solve_minimal(const ExponentPair& e, double lambda, double gamma,
                          const RadialGrid& grid, const SolverOptions& opts,
                          const StatePair& seed);

/// Max |A u - lambda (v+1)^p|, |A v - gamma (u+1)^theta| over nodes 0..M-1
/// whose radius lies in [r_min, r_max].
double pde_residual(const ExponentPair& e, double lambda, double gamma, const StatePair& state,
                    const RadialGrid& grid, double r_min = 0.0, double r_max = 1.0);

struct EigenOptions {
    double tol = 1e-10;  // relative change of the eigenvalue estimate
    int max_iter = 2000;
    double shift = 0.0;  // must stay below mu1
};

struct EigenResult {
    double mu1 = 0;
    int iterations = 0;
    std::vector<double> eigenvector;  // M + 1 entries, max-normalised, zero at r = 1
};

/// Semi-stability weight sqrt(lambda gamma p theta (v+1)^(p-1) (u+1)^(theta-1)).
std::vector<double> stability_weight(const ExponentPair& e, const StatePair& state,
                                     double lambda, double gamma);

/// Principal eigenvalue of -Lap phi = mu W phi (Dirichlet) by shifted inverse
/// power iteration.  mu1 >= 1 is the discrete stability inequality.
/// Throws NumericalError (with the estimate trace) on non-convergence.
EigenResult stability_mu1(const ExponentPair& e, const StatePair& state, double lambda,
                          double gamma, const RadialGrid& grid, const EigenOptions& opts = {});

struct BranchPoint {
    double lambda = 0;
    double gamma = 0;
    StatePair state;
    double sup_u = 0;
    double sup_v = 0;
    double mu1 = 0;
    int iterations = 0;
};

struct Branch {
    double sigma = 0;
    std::vector<BranchPoint> points;
    double lambda_lo = 0;  // last parameter with a converged minimal solution
    double lambda_hi = 0;  // smallest parameter with a divergent iteration (0 if none yet)
    int steps = 0;

    bool bracketed() const noexcept { return lambda_hi > 0.0 && lambda_lo > 0.0; }
    double relative_width() const noexcept;
    double midpoint() const noexcept { return 0.5 * (lambda_lo + lambda_hi); }
};

struct ContinuationConfig {
    double lambda_start = 0.01;
    double initial_step = 0.0;  // 0: use lambda_start
    double bracket_tol = 1e-4;  // on (lambda_hi - lambda_lo) / lambda_lo
    /// Accepted points required within 2 * bracket_tol (relative) below lambda_hi
    /// before stopping, so the branch samples the approach to the fold.
    int fold_points = 2;
    int max_steps = 400;
    SolverOptions solver;
    EigenOptions eigen;
};

/// Thrown when the step budget runs out before the fold is bracketed.
class BudgetError : public std::runtime_error {
public:
    BudgetError(const std::string& what, Branch partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}

    const Branch& partial() const noexcept { return partial_; }

private:
    Branch partial_;
};

/// Follows the minimal branch along gamma = sigma * lambda, doubling the step
/// while solutions converge and bisecting once a divergent parameter is known,
/// until the fold is bracketed to config.bracket_tol and config.fold_points
/// accepted points lie just below it.
Branch continue_ray(const ExponentPair& e, double sigma, const RadialGrid& grid,
                    const ContinuationConfig& config = {});

}  // namespace exle
