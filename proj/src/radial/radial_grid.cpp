#include "exle/radial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "exle/errors.hpp"

namespace exle {

namespace {

// (1 + x)^n - (1 - x)^n without cancellation for small x.
double power_difference(double x, int n) {
    const double lo = n * std::log1p(-x);
    const double hi = n * std::log1p(x);
    return std::exp(lo) * std::expm1(hi - lo);
}

}  // namespace

RadialGrid::RadialGrid(int dim, int intervals) : dim_(dim), intervals_(intervals) {
    if (dim < 1 || dim > kMaxDimension) {
        std::ostringstream os;
        os << "dimension must lie in [1, " << kMaxDimension << "] (got " << dim << ")";
        throw ConfigError(os.str());
    }
    if (intervals < kMinIntervals) {
        std::ostringstream os;
        os << "radial grid needs at least " << kMinIntervals << " intervals (got " << intervals
           << ")";
        throw ConfigError(os.str());
    }
    const double h = 1.0 / intervals;
    nodes_.resize(static_cast<std::size_t>(intervals) + 1);
    volumes_.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        nodes_[i] = static_cast<double>(i) * h;
    }
    nodes_.back() = 1.0;

    volumes_[0] = std::pow(0.5 * h, dim) / dim;
    for (std::size_t i = 1; i + 1 < nodes_.size(); ++i) {
        const double r = nodes_[i];
        volumes_[i] = std::pow(r, dim) * power_difference(0.5 * h / r, dim) / dim;
    }
    volumes_.back() = -std::expm1(dim * std::log1p(-0.5 * h)) / dim;
}

double RadialGrid::sphere_area() const noexcept {
    const double half = 0.5 * dim_;
    return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double RadialGrid::integrate(std::span<const double> f, std::size_t last) const {
    if (f.size() <= last || last >= nodes_.size()) {
        throw ConfigError("integrand shorter than the integration range");
    }
    if (last == 0) return 0.0;
    const double h = spacing();
    auto weight = [&](std::size_t i) { return std::pow(nodes_[i], dim_ - 1); };
    double sum = 0.5 * (f[0] * weight(0) + f[last] * weight(last));
    for (std::size_t i = 1; i < last; ++i) {
        sum += f[i] * weight(i);
    }
    return sphere_area() * h * sum;
}

StatePair StatePair::zeros(const RadialGrid& grid) {
    return {std::vector<double>(grid.node_count(), 0.0),
            std::vector<double>(grid.node_count(), 0.0)};
}

double StatePair::sup_u() const {
    return u.empty() ? 0.0 : *std::max_element(u.begin(), u.end());
}

double StatePair::sup_v() const {
    return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

bool StatePair::is_admissible() const {
    auto nonneg = [](const std::vector<double>& w) {
        return std::all_of(w.begin(), w.end(), [](double x) { return x >= 0.0; });
    };
    return !u.empty() && u.size() == v.size() && nonneg(u) && nonneg(v) && u.back() == 0.0 &&
           v.back() == 0.0;
}

RadialLaplacian::RadialLaplacian(const RadialGrid& grid) {
    const std::size_t m = static_cast<std::size_t>(grid.intervals());
    const int n = grid.dim();
    const double h = grid.spacing();
    lower_.assign(m, 0.0);
    diag_.assign(m, 0.0);
    upper_.assign(m, 0.0);

    diag_[0] = 2.0 * n / (h * h);
    upper_[0] = -diag_[0];
    for (std::size_t i = 1; i < m; ++i) {
        // Face weights and volume divided by r_i^{N-1}.
        const double x = 0.5 * h / grid.node(i);
        const double plus = std::exp((n - 1) * std::log1p(x));
        const double minus = std::exp((n - 1) * std::log1p(-x));
        const double vol = grid.node(i) * power_difference(x, n) / n;
        upper_[i] = -plus / (h * vol);
        lower_[i] = -minus / (h * vol);
        diag_[i] = -(upper_[i] + lower_[i]);
    }
}

std::vector<double> RadialLaplacian::apply(std::span<const double> w) const {
    const std::size_t m = size();
    if (w.size() < m + 1) {
        throw ConfigError("field shorter than the grid");
    }
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        double acc = diag_[i] * w[i] + upper_[i] * w[i + 1];
        if (i > 0) acc += lower_[i] * w[i - 1];
        out[i] = acc;
    }
    return out;
}

std::vector<double> RadialLaplacian::solve(std::span<const double> rhs) const {
    return solve_shifted(rhs, {}, 0.0);
}

std::vector<double> RadialLaplacian::solve_shifted(std::span<const double> rhs,
                                                   std::span<const double> weight,
                                                   double shift) const {
    const std::size_t m = size();
    if (rhs.size() < m || (shift != 0.0 && weight.size() < m)) {
        throw ConfigError("right-hand side shorter than the grid");
    }
    // Thomas algorithm; pivots stay positive for the M-matrix (shift below the
    // principal eigenvalue), so no pivoting is needed.
    std::vector<double> c(m);
    std::vector<double> d(m);
    auto diag = [&](std::size_t i) {
        return shift == 0.0 ? diag_[i] : diag_[i] - shift * weight[i];
    };
    double pivot = diag(0);
    if (!(pivot > 0.0)) {
        throw NumericalError("non-positive pivot in tridiagonal solve");
    }
    c[0] = upper_[0] / pivot;
    d[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < m; ++i) {
        pivot = diag(i) - lower_[i] * c[i - 1];
        if (!(pivot > 0.0)) {
            throw NumericalError("non-positive pivot in tridiagonal solve");
        }
        c[i] = upper_[i] / pivot;
        d[i] = (rhs[i] - lower_[i] * d[i - 1]) / pivot;
    }
    std::vector<double> w(m + 1, 0.0);
    w[m - 1] = d[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) {
        w[i] = d[i] - c[i] * w[i + 1];
    }
    return w;
}

}  // namespace exle
