#pragma once

// Regularity thresholds of the Lane-Emden system
//
//     -Lap u = lambda (v+1)^p,   -Lap v = gamma (u+1)^theta,   u = v = 0 on the boundary.
//
// L(s) is the quartic whose negativity is the stability-integrability
// criterion, H(x) its rescaled (p <-> theta symmetric) form, t0 the older
// auxiliary constant.  Largest roots s0 of L and x0 of H give the dimension
// bound N < 2 + 2 x0 for bounded extremal solutions.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace exle {

inline constexpr double kDefaultRootTol = 1e-12;
inline constexpr double kIdentityTol = 1e-9;

/// Exponents (p, theta) of the system; always valid once constructed:
/// p >= 1, theta >= 1 and p*theta > 1.
class ExponentPair {
public:
    /// Throws DomainError when the pair is outside the admissible range.
    ExponentPair(double p, double theta);

    double p() const noexcept { return p_; }
    double theta() const noexcept { return theta_; }
    double product() const noexcept { return p_ * theta_; }

    bool is_canonical() const noexcept { return p_ <= theta_; }
    bool is_diagonal() const noexcept { return p_ == theta_; }

    /// (min(p,theta), max(p,theta)).
    ExponentPair canonical() const noexcept;
    ExponentPair swapped() const noexcept;

    friend bool operator==(const ExponentPair&, const ExponentPair&) = default;

private:
    struct Unchecked {};
    ExponentPair(double p, double theta, Unchecked) noexcept : p_(p), theta_(theta) {}

    double p_;
    double theta_;
};

struct ThresholdReport {
    double p = 0;      // as supplied by the caller
    double theta = 0;  // as supplied by the caller
    double t0 = 0;
    double s0 = 0;
    double x0 = 0;
    double n_cowan = 0;
    double n_new = 0;
    double improvement = 0;
};

struct ScalingExponents {
    double alpha = 0;
    double beta = 0;
};

/// Sign-change bracket [lo, hi] around a root, with the point estimate.
struct RootBracket {
    double root = 0;
    double lo = 0;
    double hi = 0;
    int iterations = 0;

    double width() const noexcept { return hi - lo; }
};

/// Signature shared by eval_L and substitutes injected by verification harnesses.
using QuarticEvaluator = std::function<double(const ExponentPair&, double)>;

double eval_t0(const ExponentPair& e);

/// L(s); evaluated in the canonical order p <= theta.
double eval_L(const ExponentPair& e, double s);
double eval_L_derivative(const ExponentPair& e, double s);

/// H(x); symmetric in (p, theta).
double eval_H(const ExponentPair& e, double x);

/// Largest monomial magnitude of L at s (resp. H at x), used to scale residuals.
double monomial_scale_L(const ExponentPair& e, double s);
double monomial_scale_H(const ExponentPair& e, double x);

/// The unique root s0 of L in (2, inf).  Throws NumericalError if no bracket is found.
RootBracket largest_root_L(const ExponentPair& e, double tol = kDefaultRootTol);

ThresholdReport threshold_report(const ExponentPair& e, double tol = kDefaultRootTol);

/// max(N - (2 + 2 x0), 0).  Zero means no singular set.
double hausdorff_bound(const ExponentPair& e, int dim, double tol = kDefaultRootTol);

/// max(N - 2N x0 / (N - 2), 0), the expression reached at the end of the
/// covering argument; empty for N <= 2.
std::optional<double> hausdorff_bound_proof_form(const ExponentPair& e, int dim,
                                                 double tol = kDefaultRootTol);

/// alpha = 2(p+1)/(p theta - 1), beta = 2(theta+1)/(p theta - 1), in the caller's order.
ScalingExponents scaling_exponents(const ExponentPair& e);

/// a1 * a2 with r = s - 1 and q + 1 = (theta+1)(r+1)/(p+1).  Requires s > p + 1
/// (canonical p).  a1 a2 > 1 exactly when L(s) < 0.
double stability_product(const ExponentPair& e, double s);

/// K(p, theta) = -(theta+1)^4 / (16 theta (p+1)^2) L(2 theta (p+1)/(theta+1)).
double cowan_polynomial_K(double p, double theta);

struct NamedResidual {
    std::string name;
    double value = 0;
    double tolerance = 0;
    bool passed = true;
};

struct IdentityReport {
    std::vector<NamedResidual> entries;

    bool all_passed() const noexcept;
    /// The failed entry with the largest value/tolerance ratio, or the largest overall.
    const NamedResidual& worst() const;
};

/// Evaluates the algebraic identities relating L, H, t0 and the sign facts
/// of L on [2, s0).  Residuals are relative to the largest monomial magnitude.
/// `l_eval` substitutes for eval_L (negative-control injection).
IdentityReport check_polynomial_identities(const ExponentPair& e, int sample_count,
                                           std::uint64_t seed = 0,
                                           const QuarticEvaluator& l_eval = eval_L);

struct EquivalenceScan {
    int points = 0;
    int skipped = 0;  // |L(s)| below the cut-off
    int disagreements = 0;
    double first_disagreement = 0;
};

/// Scans s over (p+1, 2 s0] and counts points where
/// sign(stability_product - 1) != -sign(L(s)).
EquivalenceScan scan_stability_equivalence(const ExponentPair& e, int points,
                                           double min_abs_l = 1e-6,
                                           const QuarticEvaluator& l_eval = eval_L);

}  // namespace exle
