#include <algorithm>
#include <cmath>

#include "exle/errors.hpp"
#include "exle/random.hpp"
#include "exle/threshold.hpp"

namespace exle {

bool IdentityReport::all_passed() const noexcept {
    return std::all_of(entries.begin(), entries.end(), [](const auto& r) { return r.passed; });
}

const NamedResidual& IdentityReport::worst() const {
    if (entries.empty()) {
        throw std::logic_error("empty identity report");
    }
    auto ratio = [](const NamedResidual& r) {
        return r.tolerance > 0.0 ? std::abs(r.value) / r.tolerance : std::abs(r.value);
    };
    const NamedResidual* best = nullptr;
    for (const auto& r : entries) {
        if (r.passed) continue;
        if (!best || ratio(r) > ratio(*best)) best = &r;
    }
    if (best) return *best;
    for (const auto& r : entries) {
        if (!best || ratio(r) > ratio(*best)) best = &r;
    }
    return *best;
}

namespace {

NamedResidual residual(std::string name, double value, double tol = kIdentityTol) {
    return {std::move(name), value, tol, std::abs(value) < tol};
}

// Records a strict negativity fact; value is the quantity itself.
NamedResidual negative(std::string name, double value) {
    return {std::move(name), value, 0.0, value < 0.0};
}

}  // namespace

IdentityReport check_polynomial_identities(const ExponentPair& e, int sample_count,
                                           std::uint64_t seed, const QuarticEvaluator& l_eval) {
    if (sample_count < 1) {
        throw DomainError("sample_count must be >= 1");
    }
    const auto c = e.canonical();
    const double p = c.p();
    const double th = c.theta();
    const double m = p * th - 1.0;
    const double k = (th + 1.0) / m;
    const double k4 = k * k * k * k;
    const double s0 = largest_root_L(c).root;
    const double t0 = eval_t0(c);
    auto L = [&](double s) { return l_eval(c, s); };

    UniformSampler rng(seed);
    double res_hl = 0.0;
    double res_diag = 0.0;
    for (int i = 0; i < sample_count; ++i) {
        const double s = rng.next(0.0, 2.0 * s0);
        const double x = k * s;
        const double hl = eval_H(c, x) - k4 * L(s);
        res_hl = std::max(res_hl, std::abs(hl) / monomial_scale_H(c, x));
        if (c.is_diagonal()) {
            const double f = (s * s + 4.0 * p * s - 4.0 * p) * (s * s - 4.0 * p * s + 4.0 * p);
            res_diag = std::max(res_diag, std::abs(L(s) - f) / monomial_scale_L(c, s));
        }
    }

    IdentityReport rep;
    rep.entries.push_back(residual("H_L_rescaling", res_hl));

    const double st = 2.0 * t0;
    const double rhs_t0 =
        16.0 * p * th * (p + 1.0) * (th - p) * (1.0 - st) / ((th + 1.0) * (th + 1.0));
    rep.entries.push_back(residual("L_at_2t0", std::abs(L(st) - rhs_t0) / monomial_scale_L(c, st)));

    if (c.is_diagonal()) {
        rep.entries.push_back(residual("diagonal_factorization", res_diag));
    }

    const double sp1 = p + 1.0;
    const double rhs_p1 = (p + 1.0) * (p + 1.0) * (5.0 * p * th + th + p + 1.0) *
                          (3.0 * p * th - th - p - 1.0) / ((th + 1.0) * (th + 1.0));
    rep.entries.push_back(
        residual("L_at_p_plus_1", std::abs(L(sp1) + rhs_p1) / monomial_scale_L(c, sp1)));

    const double s_mid = 2.0 * th * (p + 1.0) / (th + 1.0);
    rep.entries.push_back(negative("sign_L_at_2", L(2.0)));
    rep.entries.push_back(negative("sign_L_at_p_plus_1", L(sp1)));
    rep.entries.push_back(negative("sign_L_at_2theta_ratio", L(s_mid)));
    rep.entries.push_back(negative("order_2theta_ratio_below_s0", s_mid - s0));
    return rep;
}

EquivalenceScan scan_stability_equivalence(const ExponentPair& e, int points, double min_abs_l,
                                           const QuarticEvaluator& l_eval) {
    if (points < 1) {
        throw DomainError("points must be >= 1");
    }
    const auto c = e.canonical();
    const double lo = c.p() + 1.0;
    const double hi = 2.0 * largest_root_L(c).root;
    EquivalenceScan scan;
    for (int i = 1; i <= points; ++i) {
        const double s = lo + (hi - lo) * static_cast<double>(i) / points;
        const double l = l_eval(c, s);
        ++scan.points;
        if (std::abs(l) <= min_abs_l) {
            ++scan.skipped;
            continue;
        }
        const double prod = stability_product(c, s);
        const bool product_says_stable = prod > 1.0;
        if (product_says_stable != (l < 0.0)) {
            if (scan.disagreements == 0) scan.first_disagreement = s;
            ++scan.disagreements;
        }
    }
    return scan;
}

}  // namespace exle
