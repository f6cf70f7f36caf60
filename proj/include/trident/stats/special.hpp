#pragma once

// Special functions backing the p-value computations: the regularized
// incomplete gamma functions (series + Lentz continued fraction), the normal
// CDF, chi-square survival, and Poisson tails.

#include <cmath>
#include <cstdint>
#include <limits>

#include "trident/common.hpp"

namespace trident::stats {

inline double normal_cdf(double x) noexcept {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

namespace detail {

inline constexpr int kMaxIter = 700;
inline constexpr double kEps = 1e-16;
inline constexpr double kTiny = 1e-300;

// Lower regularized P(a,x) by power series; valid for x < a + 1.
inline double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized Q(a,x) by continued fraction; valid for x >= a + 1.
inline double gamma_q_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace detail

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
inline double igamc(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw ParamError("igamc needs a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - detail::gamma_p_series(a, x);
    return detail::gamma_q_cf(a, x);
}

// Regularized lower incomplete gamma P(a, x) = 1 - Q(a, x).
inline double igam(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw ParamError("igam needs a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return detail::gamma_p_series(a, x);
    return 1.0 - detail::gamma_q_cf(a, x);
}

// Survival function of the chi-square distribution with dof degrees.
inline double chi_square_p(double chi2, double dof) {
    return igamc(dof / 2.0, chi2 / 2.0);
}

// P(X <= k) for X ~ Poisson(lambda); identity P(X <= k) = Q(k+1, lambda).
inline double poisson_cdf(std::uint64_t k, double lambda) {
    return igamc(static_cast<double>(k) + 1.0, lambda);
}

// P(X >= k) for X ~ Poisson(lambda).
inline double poisson_sf(std::uint64_t k, double lambda) {
    if (k == 0) return 1.0;
    return igam(static_cast<double>(k), lambda);
}

// Conservative two-sided Poisson p-value: 2 * min(tail probabilities),
// capped at 1. Discrete, hence P(p <= alpha) <= alpha by construction.
inline double poisson_two_sided_p(std::uint64_t k, double lambda) {
    const double lo = poisson_cdf(k, lambda);
    const double hi = poisson_sf(k, lambda);
    const double p = 2.0 * std::min(lo, hi);
    return p > 1.0 ? 1.0 : p;
}

}  // namespace trident::stats
