#pragma once

// Independent reference implementations used to cross-check the library.
// They deliberately take different algorithmic routes: pair enumeration
// instead of merge counting, counting ranks instead of sort-based ranks,
// quadrature instead of the incomplete-beta continued fraction.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "figjudge/rng.hpp"

namespace figjudge::testing {

// Kendall tau-b by O(n^2) enumeration of concordant/discordant/tied pairs.
// Returns nullopt when either side is fully tied.
inline std::optional<double> tau_b_oracle(std::span<const double> x, std::span<const double> y) {
    std::int64_t concordant = 0, discordant = 0, ties_x_only = 0, ties_y_only = 0;
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = x[i] - x[j];
            const double dy = y[i] - y[j];
            if (dx == 0.0 && dy == 0.0)
                continue;
            else if (dx == 0.0)
                ++ties_x_only;
            else if (dy == 0.0)
                ++ties_y_only;
            else if (dx * dy > 0.0)
                ++concordant;
            else
                ++discordant;
        }
    }
    const double lhs = static_cast<double>(concordant + discordant + ties_y_only);
    const double rhs = static_cast<double>(concordant + discordant + ties_x_only);
    if (lhs == 0.0 || rhs == 0.0)
        return std::nullopt;
    return static_cast<double>(concordant - discordant) / std::sqrt(lhs * rhs);
}

// Fractional ranks by counting smaller/equal elements (quadratic).
inline std::vector<double> counting_ranks(std::span<const double> v) {
    std::vector<double> ranks(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        int smaller = 0, equal = 0;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] < v[i])
                ++smaller;
            else if (v[j] == v[i])
                ++equal;
        }
        ranks[i] = 1.0 + smaller + (equal - 1) * 0.5;
    }
    return ranks;
}

// Pearson by the direct sum formula (vs the library's centered two-pass).
inline std::optional<double> pearson_oracle(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        syy += y[i] * y[i];
        sxy += x[i] * y[i];
    }
    const double vx = n * sxx - sx * sx;
    const double vy = n * syy - sy * sy;
    if (vx <= 0.0 || vy <= 0.0)
        return std::nullopt;
    return (n * sxy - sx * sy) / std::sqrt(vx * vy);
}

inline std::optional<double> spearman_oracle(std::span<const double> x, std::span<const double> y) {
    const auto rx = counting_ranks(x);
    const auto ry = counting_ranks(y);
    return pearson_oracle(rx, ry);
}

namespace detail {

inline double simpson(double (*f)(double, double), double nu, double a, double b) {
    const double m = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a, nu) + 4.0 * f(m, nu) + f(b, nu));
}

inline double adaptive_simpson(double (*f)(double, double), double nu, double a, double b, double whole,
                               double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = simpson(f, nu, a, m);
    const double right = simpson(f, nu, m, b);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, nu, a, m, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, nu, m, b, right, tol / 2.0, depth - 1);
}

inline double t_pdf(double x, double nu) {
    const double log_coeff =
        std::lgamma((nu + 1.0) / 2.0) - std::lgamma(nu / 2.0) - 0.5 * std::log(nu * M_PI);
    return std::exp(log_coeff - (nu + 1.0) / 2.0 * std::log1p(x * x / nu));
}

} // namespace detail

// Two-sided Student-t p-value by adaptive-Simpson quadrature of the pdf.
inline double t_two_sided_p_oracle(double t, int df) {
    const double nu = static_cast<double>(df);
    const double a = 0.0, b = std::fabs(t);
    if (b == 0.0)
        return 1.0;
    const double whole = detail::simpson(detail::t_pdf, nu, a, b);
    const double central = detail::adaptive_simpson(detail::t_pdf, nu, a, b, whole, 1e-14, 40);
    return 1.0 - 2.0 * central;
}

// Random paired series with heavy ties (small integer supports), never fully
// tied on either side.
inline std::pair<std::vector<double>, std::vector<double>> random_tied_series(std::uint64_t seed) {
    SplitMix64 rng(seed);
    for (;;) {
        const std::size_t n = 2 + rng.bounded(49); // 2..50
        const int x_support = 2 + static_cast<int>(rng.bounded(6));
        const int y_support = 2 + static_cast<int>(rng.bounded(9));
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = 1.0 + static_cast<double>(rng.bounded(x_support));
            // mix of tied integer levels and occasional continuous values
            y[i] = rng.unit() < 0.8 ? 1.0 + static_cast<double>(rng.bounded(y_support))
                                    : std::round(rng.unit() * 1000.0) / 100.0;
        }
        const auto distinct = [](const std::vector<double>& v) {
            for (std::size_t i = 1; i < v.size(); ++i)
                if (v[i] != v[0])
                    return true;
            return false;
        };
        if (distinct(x) && distinct(y))
            return {std::move(x), std::move(y)};
    }
}

} // namespace figjudge::testing
