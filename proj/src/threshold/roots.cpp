#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "exle/errors.hpp"
#include "exle/threshold.hpp"

namespace exle {

namespace {

constexpr double kUpperCap = 0x1.0p60;
constexpr int kMaxRootIterations = 400;

}  // namespace

RootBracket largest_root_L(const ExponentPair& e, double tol) {
    if (!(tol > 0.0)) {
        throw DomainError("root tolerance must be positive");
    }
    const auto c = e.canonical();
    auto f = [&](double s) { return eval_L(c, s); };
    auto df = [&](double s) { return eval_L_derivative(c, s); };

    double lo = 2.0;
    if (!(f(lo) < 0.0)) {
        std::ostringstream os;
        os << "L(2) = " << f(lo) << " is not negative; no root bracket in (2, inf)";
        throw NumericalError(os.str());
    }
    double hi = 4.0;
    std::vector<double> trace;
    while (f(hi) <= 0.0) {
        trace.push_back(hi);
        lo = hi;
        hi *= 2.0;
        if (hi > kUpperCap) {
            throw NumericalError("no sign change of L below 2^60", std::move(trace));
        }
    }

    // Safeguarded Newton inside the sign-change bracket.  L is convex to the
    // right of s0, so iterating from the upper end converges monotonically;
    // bisection takes over whenever a step leaves the bracket or stalls.
    RootBracket out;
    double x = hi;
    double fx = f(x);
    double prev_width = hi - lo;
    bool force_bisect = false;
    int it = 0;
    for (; it < kMaxRootIterations && hi - lo > tol; ++it) {
        double next;
        const double d = df(x);
        if (!force_bisect && d != 0.0 && std::isfinite(d)) {
            next = x - fx / d;
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        } else {
            next = 0.5 * (lo + hi);
        }
        if (next == lo || next == hi) break;  // bracket exhausted at machine precision

        const double step = std::abs(next - x);
        x = next;
        fx = f(x);
        if (fx == 0.0) {
            lo = hi = x;
            break;
        }
        (fx < 0.0 ? lo : hi) = x;

        if (step < 0.5 * tol) {
            // Newton has converged; pin the other side of the bracket.
            const double a = std::max(lo, x - 0.5 * tol);
            const double b = std::min(hi, x + 0.5 * tol);
            if (a > lo && f(a) < 0.0) lo = a;
            if (b < hi && f(b) > 0.0) hi = b;
        }
        const double width = hi - lo;
        force_bisect = width > 0.5 * prev_width;
        prev_width = width;
        trace.push_back(width);
    }
    if (hi - lo > tol && std::nextafter(lo, hi) < hi && it >= kMaxRootIterations) {
        throw NumericalError("root bracket did not reach the requested width", std::move(trace));
    }
    out.lo = lo;
    out.hi = hi;
    out.root = (lo == hi) ? lo : 0.5 * (lo + hi);
    out.iterations = it;
    return out;
}

ThresholdReport threshold_report(const ExponentPair& e, double tol) {
    const auto c = e.canonical();
    const double p = c.p();
    const double th = c.theta();
    const double scale = (th + 1.0) / (p * th - 1.0);

    ThresholdReport r;
    r.p = e.p();
    r.theta = e.theta();
    r.t0 = eval_t0(c);
    const auto root = largest_root_L(c, tol);
    // On the diagonal L factors with the root 2 t0; take it when the bracket agrees.
    const bool closed_form = c.is_diagonal() && std::abs(2.0 * r.t0 - root.root) <= std::max(tol, root.width());
    r.s0 = closed_form ? 2.0 * r.t0 : root.root;
    r.x0 = r.s0 * scale;
    r.n_cowan = 2.0 + 4.0 * scale * r.t0;
    r.n_new = 2.0 + 2.0 * r.x0;
    r.improvement = r.n_new - r.n_cowan;
    return r;
}

double hausdorff_bound(const ExponentPair& e, int dim, double tol) {
    if (dim < 1) {
        throw DomainError("dimension must be >= 1");
    }
    const auto r = threshold_report(e, tol);
    return std::max(static_cast<double>(dim) - r.n_new, 0.0);
}

std::optional<double> hausdorff_bound_proof_form(const ExponentPair& e, int dim, double tol) {
    if (dim < 1) {
        throw DomainError("dimension must be >= 1");
    }
    if (dim <= 2) return std::nullopt;
    const auto r = threshold_report(e, tol);
    const double n = dim;
    return std::max(n - 2.0 * n * r.x0 / (n - 2.0), 0.0);
}

}  // namespace exle
