#include "exle/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "exle/errors.hpp"

namespace exle {

ExponentPair::ExponentPair(double p, double theta) : p_(p), theta_(theta) {
    if (!std::isfinite(p) || !std::isfinite(theta)) {
        throw DomainError("exponents must be finite");
    }
    if (p < 1.0 || theta < 1.0) {
        std::ostringstream os;
        os << "exponents must satisfy p >= 1 and theta >= 1 (got p=" << p << ", theta=" << theta
           << ")";
        throw DomainError(os.str());
    }
    if (p * theta <= 1.0) {
        throw DomainError("p*theta must exceed 1");
    }
}

ExponentPair ExponentPair::canonical() const noexcept {
    return p_ <= theta_ ? *this : swapped();
}

ExponentPair ExponentPair::swapped() const noexcept {
    return ExponentPair(theta_, p_, Unchecked{});
}

double eval_t0(const ExponentPair& e) {
    const auto c = e.canonical();
    const double p = c.p();
    const double th = c.theta();
    const double k = p * th * (p + 1.0) / (th + 1.0);
    const double sk = std::sqrt(k);
    // k >= 1 on the admissible range, so the inner radicand is >= 0 up to round-off.
    return sk + std::sqrt(std::max(0.0, k - sk));
}

namespace {

// L(s) = s^4 - c [ (theta+1) s^2 - (p+theta+2) s + (p+1) ],  c = 16 p theta (p+1)/(theta+1)^2.
struct LCoefficients {
    double c;
    double quad;
    double lin;
    double cst;
};

LCoefficients l_coefficients(const ExponentPair& e) {
    const auto k = e.canonical();
    const double p = k.p();
    const double th = k.theta();
    const double c = 16.0 * p * th * (p + 1.0) / ((th + 1.0) * (th + 1.0));
    return {c, th + 1.0, p + th + 2.0, p + 1.0};
}

// H(x) = x^4 - d [ (p theta - 1)^2 x^2 - (p+theta+2)(p theta - 1) x + (p+1)(theta+1) ],
// d = 16 p theta (p+1)(theta+1) / (p theta - 1)^4.
struct HCoefficients {
    double d;
    double quad;
    double lin;
    double cst;
};

HCoefficients h_coefficients(const ExponentPair& e) {
    const auto k = e.canonical();
    const double p = k.p();
    const double th = k.theta();
    const double m = p * th - 1.0;
    const double m2 = m * m;
    const double d = 16.0 * p * th * (p + 1.0) * (th + 1.0) / (m2 * m2);
    return {d, m2, (p + th + 2.0) * m, (p + 1.0) * (th + 1.0)};
}

}  // namespace

double eval_L(const ExponentPair& e, double s) {
    const auto k = l_coefficients(e);
    const double s2 = s * s;
    return s2 * s2 - k.c * ((k.quad * s - k.lin) * s + k.cst);
}

double eval_L_derivative(const ExponentPair& e, double s) {
    const auto k = l_coefficients(e);
    return 4.0 * s * s * s - k.c * (2.0 * k.quad * s - k.lin);
}

double eval_H(const ExponentPair& e, double x) {
    const auto k = h_coefficients(e);
    const double x2 = x * x;
    return x2 * x2 - k.d * ((k.quad * x - k.lin) * x + k.cst);
}

double monomial_scale_L(const ExponentPair& e, double s) {
    const auto k = l_coefficients(e);
    const double a = std::abs(s);
    return std::max({a * a * a * a, k.c * k.quad * a * a, k.c * k.lin * a, k.c * k.cst});
}

double monomial_scale_H(const ExponentPair& e, double x) {
    const auto k = h_coefficients(e);
    const double a = std::abs(x);
    return std::max({a * a * a * a, k.d * k.quad * a * a, k.d * k.lin * a, k.d * k.cst});
}

double cowan_polynomial_K(double p, double theta) {
    const double p2 = p * p;
    return (((3.0 * p2 - 1.0) * theta + (2.0 * p2 - p)) * theta - 2.0 * (p2 + p)) * theta + p;
}

ScalingExponents scaling_exponents(const ExponentPair& e) {
    const double m = e.product() - 1.0;
    if (!(m > 0.0)) {
        throw DomainError("p*theta must exceed 1");
    }
    return {2.0 * (e.p() + 1.0) / m, 2.0 * (e.theta() + 1.0) / m};
}

double stability_product(const ExponentPair& e, double s) {
    const auto k = e.canonical();
    const double p = k.p();
    const double th = k.theta();
    if (!(s > p + 1.0)) {
        std::ostringstream os;
        os << "stability_product requires s > p+1 = " << p + 1.0 << " (got s=" << s << ")";
        throw DomainError(os.str());
    }
    const double r = s - 1.0;
    const double q1 = (th + 1.0) * (r + 1.0) / (p + 1.0);
    const double q = q1 - 1.0;
    const double root_pt = std::sqrt(p * th);
    const double a1 = 4.0 * q * root_pt / (q1 * q1);
    const double a2 = 4.0 * r * root_pt / ((r + 1.0) * (r + 1.0));
    return a1 * a2;
}

}  // namespace exle
