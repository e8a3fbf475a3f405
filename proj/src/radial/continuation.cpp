#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "exle/errors.hpp"
#include "exle/solver.hpp"

namespace exle {

double Branch::relative_width() const noexcept {
    if (!bracketed()) return std::numeric_limits<double>::infinity();
    return (lambda_hi - lambda_lo) / lambda_lo;
}

namespace {

bool fold_resolved(const Branch& br, const ContinuationConfig& config) {
    if (!br.bracketed() || br.relative_width() > config.bracket_tol) return false;
    const double floor = br.lambda_hi * (1.0 - 2.0 * config.bracket_tol);
    const auto near = std::count_if(br.points.begin(), br.points.end(),
                                    [&](const BranchPoint& pt) { return pt.lambda >= floor; });
    return near >= config.fold_points;
}

}  // namespace

Branch continue_ray(const ExponentPair& e, double sigma, const RadialGrid& grid,
                    const ContinuationConfig& config) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError("sigma must be positive");
    }
    if (!(config.lambda_start > 0.0) || !(config.bracket_tol > 0.0) || config.max_steps < 1) {
        throw ConfigError("continuation needs lambda_start > 0, bracket_tol > 0, max_steps >= 1");
    }

    Branch branch;
    branch.sigma = sigma;
    StatePair seed = StatePair::zeros(grid);
    double step = config.initial_step > 0.0 ? config.initial_step : config.lambda_start;
    double lambda_try = config.lambda_start;

    while (!fold_resolved(branch, config)) {
        if (branch.steps >= config.max_steps) {
            std::ostringstream os;
            os << "fold not bracketed within " << config.max_steps << " continuation steps (lo="
               << branch.lambda_lo << ", hi=" << branch.lambda_hi << ")";
            throw BudgetError(os.str(), std::move(branch));
        }
        ++branch.steps;

        auto res = solve_minimal(e, lambda_try, sigma * lambda_try, grid, config.solver, seed);
        if (res.converged()) {
            BranchPoint pt;
            pt.lambda = lambda_try;
            pt.gamma = sigma * lambda_try;
            pt.sup_u = res.state.sup_u();
            pt.sup_v = res.state.sup_v();
            pt.iterations = res.iterations;
            pt.mu1 = stability_mu1(e, res.state, pt.lambda, pt.gamma, grid, config.eigen).mu1;
            pt.state = res.state;
            seed = std::move(res.state);
            branch.lambda_lo = lambda_try;
            branch.points.push_back(std::move(pt));
            if (branch.lambda_hi == 0.0) step *= 2.0;
        } else {
            branch.lambda_hi = lambda_try;
        }

        lambda_try = branch.lambda_hi > 0.0 ? 0.5 * (branch.lambda_lo + branch.lambda_hi)
                                            : branch.lambda_lo + step;
    }
    return branch;
}

}  // namespace exle
