#include <algorithm>
#include <cmath>
#include <sstream>

#include "exle/errors.hpp"
#include "exle/solver.hpp"

namespace exle {

std::vector<double> stability_weight(const ExponentPair& e, const StatePair& state,
                                     double lambda, double gamma) {
    if (state.u.size() != state.v.size()) {
        throw ConfigError("state components differ in length");
    }
    const double c = lambda * gamma * e.p() * e.theta();
    std::vector<double> w(state.u.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = std::sqrt(c * std::pow(state.v[i] + 1.0, e.p() - 1.0) *
                         std::pow(state.u[i] + 1.0, e.theta() - 1.0));
    }
    return w;
}

EigenResult stability_mu1(const ExponentPair& e, const StatePair& state, double lambda,
                          double gamma, const RadialGrid& grid, const EigenOptions& opts) {
    if (!(lambda > 0.0) || !(gamma > 0.0)) {
        throw DomainError("lambda and gamma must be positive");
    }
    if (state.u.size() != grid.node_count() || state.v.size() != grid.node_count()) {
        throw ConfigError("state does not match the grid");
    }
    const RadialLaplacian lap(grid);
    const auto weight = stability_weight(e, state, lambda, gamma);
    const auto vol = grid.shell_volumes();
    const std::size_t m = lap.size();

    auto rayleigh = [&](const std::vector<double>& phi) {
        const auto aphi = lap.apply(phi);
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            num += vol[i] * phi[i] * aphi[i];
            den += vol[i] * weight[i] * phi[i] * phi[i];
        }
        return num / den;
    };

    EigenResult res;
    std::vector<double> phi(m + 1, 1.0);
    phi[m] = 0.0;
    std::vector<double> rhs(m);
    std::vector<double> trace;
    double mu = rayleigh(phi);
    trace.push_back(mu);
    for (int k = 1; k <= opts.max_iter; ++k) {
        for (std::size_t i = 0; i < m; ++i) rhs[i] = weight[i] * phi[i];
        auto next = lap.solve_shifted(rhs, weight, opts.shift);
        const double top = *std::max_element(next.begin(), next.end());
        if (!(top > 0.0) || !std::isfinite(top)) {
            throw NumericalError("inverse iteration lost positivity", std::move(trace));
        }
        for (double& x : next) x /= top;
        phi = std::move(next);
        const double mu_next = rayleigh(phi);
        trace.push_back(mu_next);
        const bool done = std::abs(mu_next - mu) <= opts.tol * std::abs(mu_next);
        mu = mu_next;
        if (done) {
            res.mu1 = mu;
            res.iterations = k;
            res.eigenvector = std::move(phi);
            return res;
        }
    }
    std::ostringstream os;
    os << "inverse power iteration did not converge in " << opts.max_iter << " iterations";
    throw NumericalError(os.str(), std::move(trace));
}

}  // namespace exle
