#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "exle/errors.hpp"
#include "exle/solver.hpp"

namespace exle {

namespace {

void check_parameters(double lambda, double gamma) {
    if (!(lambda > 0.0) || !(gamma > 0.0) || !std::isfinite(lambda) || !std::isfinite(gamma)) {
        throw DomainError("lambda and gamma must be positive and finite");
    }
}

// rhs_i = scale * (w_i + 1)^power for the M unknown rows.
void fill_forcing(std::vector<double>& rhs, const std::vector<double>& w, double scale,
                  double power) {
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        rhs[i] = scale * std::pow(w[i] + 1.0, power);
    }
}

// Returns false on overflow or when the sup-norm passes the cap.
bool within_cap(const std::vector<double>& w, double cap) {
    for (double x : w) {
        if (!std::isfinite(x) || x > cap) return false;
    }
    return true;
}

void require_nonnegative(const std::vector<double>& w) {
    for (double x : w) {
        if (x < 0.0) {
            throw NumericalError("discrete maximum principle violated: negative field value");
        }
    }
}

struct Update {
    double increment = 0;
    int violations = 0;
};

Update replace(std::vector<double>& old, std::vector<double>&& next) {
    Update up;
    for (std::size_t i = 0; i < old.size(); ++i) {
        const double d = next[i] - old[i];
        up.increment = std::max(up.increment, std::abs(d));
        if (d < -64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(old[i]))) {
            ++up.violations;
        }
    }
    old = std::move(next);
    return up;
}

}  // namespace

SolveResult solve_minimal(const ExponentPair& e, double lambda, double gamma,
                          const RadialGrid& grid, const SolverOptions& opts) {
    return solve_minimal(e, lambda, gamma, grid, opts, StatePair::zeros(grid));
}

SolveResult solve_minimal(const ExponentPair& e, double lambda, double gamma,
                          const RadialGrid& grid, const SolverOptions& opts,
                          const StatePair& seed) {
    check_parameters(lambda, gamma);
    if (seed.u.size() != grid.node_count() || seed.v.size() != grid.node_count()) {
        throw ConfigError("seed state does not match the grid");
    }
    if (!(opts.tol > 0.0) || opts.max_iter < 1) {
        throw ConfigError("solver tolerance and iteration budget must be positive");
    }
    const RadialLaplacian lap(grid);
    const double p = e.p();
    const double theta = e.theta();

    SolveResult res;
    res.state = seed;
    auto& u = res.state.u;
    auto& v = res.state.v;
    std::vector<double> rhs(lap.size());

    auto sweep_u = [&]() -> std::optional<Update> {
        fill_forcing(rhs, v, lambda, p);
        auto next = lap.solve(rhs);
        if (!within_cap(next, opts.blowup_cap)) return std::nullopt;
        require_nonnegative(next);
        return replace(u, std::move(next));
    };
    auto sweep_v = [&]() -> std::optional<Update> {
        fill_forcing(rhs, u, gamma, theta);
        auto next = lap.solve(rhs);
        if (!within_cap(next, opts.blowup_cap)) return std::nullopt;
        require_nonnegative(next);
        return replace(v, std::move(next));
    };

    for (int k = 1; k <= opts.max_iter; ++k) {
        res.iterations = k;
        const bool u_first = opts.order == SweepOrder::u_first;
        const auto a = u_first ? sweep_u() : sweep_v();
        const auto b = a ? (u_first ? sweep_v() : sweep_u()) : std::nullopt;
        if (!a || !b) {
            res.status = SolveStatus::blew_up;
            return res;
        }
        res.monotonicity_violations += a->violations + b->violations;
        res.last_increment = std::max(a->increment, b->increment);
        const double scale = std::max({1.0, res.state.sup_u(), res.state.sup_v()});
        if (res.last_increment <= opts.tol * scale) {
            res.status = SolveStatus::converged;
            return res;
        }
    }
    res.status = SolveStatus::exhausted;
    return res;
}

double pde_residual(const ExponentPair& e, double lambda, double gamma, const StatePair& state,
                    const RadialGrid& grid, double r_min, double r_max) {
    if (state.u.size() != grid.node_count() || state.v.size() != grid.node_count()) {
        throw ConfigError("state does not match the grid");
    }
    const RadialLaplacian lap(grid);
    const auto au = lap.apply(state.u);
    const auto av = lap.apply(state.v);
    double worst = 0.0;
    for (std::size_t i = 0; i < lap.size(); ++i) {
        const double r = grid.node(i);
        if (r < r_min || r > r_max) continue;
        const double fu = lambda * std::pow(state.v[i] + 1.0, e.p());
        const double fv = gamma * std::pow(state.u[i] + 1.0, e.theta());
        worst = std::max({worst, std::abs(au[i] - fu), std::abs(av[i] - fv)});
    }
    return worst;
}

}  // namespace exle
