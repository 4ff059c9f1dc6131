#pragma once

// One-dimensional quadrature kernels: adaptive composite Gauss-Legendre on
// intervals and the doubling periodic trapezoid rule on the circle.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "qcg/errors.hpp"

namespace qcg {

struct QuadratureSettings {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    std::size_t max_subdivisions = std::size_t{1} << 20;
    std::size_t angular_nodes_initial = 16;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
            throw DomainError("QuadratureSettings: tolerances must be positive");
        }
        if (max_subdivisions < 2 || angular_nodes_initial < 2) {
            throw DomainError("QuadratureSettings: node counts must be >= 2");
        }
    }

    double target(double value) const { return std::max(abs_tol, rel_tol * std::abs(value)); }
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t panels = 0;
};

namespace detail {

inline constexpr std::size_t kPanelOrder = 15;

struct GaussRule {
    std::array<double, kPanelOrder> nodes{};
    std::array<double, kPanelOrder> weights{};
};

// Nodes and weights on [-1, 1] by Newton iteration on P_n.
inline GaussRule make_gauss_legendre() {
    constexpr std::size_t n = kPanelOrder;
    GaussRule rule;
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = pk;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[n / 2] = 0.0;
    }
    return rule;
}

inline const GaussRule& gauss_legendre_15() {
    static const GaussRule rule = make_gauss_legendre();
    return rule;
}

template <class F>
double gauss_panel(F& f, double a, double b) {
    const auto& rule = gauss_legendre_15();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < kPanelOrder; ++i) {
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return half * sum;
}

struct Panel {
    double a;
    double b;
    double whole;  // one rule over [a, b]
    double left;   // rule over [a, m]
    double right;  // rule over [m, b]

    double value() const { return left + right; }
    double error() const { return std::abs(left + right - whole); }
};

struct PanelOrder {
    bool operator()(const Panel& x, const Panel& y) const {
        const double ex = x.error();
        const double ey = y.error();
        return ex != ey ? ex < ey : x.a > y.a;
    }
};

template <class F>
Panel make_panel(F& f, double a, double b, double whole) {
    const double m = 0.5 * (a + b);
    return {a, b, whole, gauss_panel(f, a, m), gauss_panel(f, m, b)};
}

// Neumaier-compensated sum in the order given.
inline double compensated_sum(std::span<const double> terms) {
    double sum = 0.0;
    double c = 0.0;
    for (double t : terms) {
        const double s = sum + t;
        c += std::abs(sum) >= std::abs(t) ? (sum - s) + t : (t - s) + sum;
        sum = s;
    }
    return sum + c;
}

}  // namespace detail

/// Adaptive composite 15-point Gauss-Legendre quadrature of f over [a, b].
///
/// Each panel is compared against its two halves; the panel with the largest
/// discrepancy is bisected until the summed discrepancy meets the settings.
/// Interior breakpoints seed the initial partition. Summation is ordered by
/// panel position, so results do not depend on the refinement history.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, const QuadratureSettings& settings,
                                    std::span<const double> breakpoints = {}) {
    settings.validate();
    if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("integrate_adaptive: need finite a < b");
    }
    std::vector<double> cuts{a};
    for (double x : breakpoints) {
        if (x > a && x < b) {
            cuts.push_back(x);
        }
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<detail::Panel, std::vector<detail::Panel>, detail::PanelOrder> queue;
    double total = 0.0;
    double total_error = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto panel = detail::make_panel(f, cuts[i], cuts[i + 1], detail::gauss_panel(f, cuts[i], cuts[i + 1]));
        total += panel.value();
        total_error += panel.error();
        queue.push(panel);
    }

    std::size_t subdivisions = 0;
    while (total_error > settings.target(total)) {
        const detail::Panel worst = queue.top();
        const double m = 0.5 * (worst.a + worst.b);
        if (subdivisions >= settings.max_subdivisions || !(m > worst.a && m < worst.b)) {
            throw ConvergenceError("integrate_adaptive: tolerance not reached on [" +
                                       std::to_string(a) + ", " + std::to_string(b) + "]",
                                   total, total_error);
        }
        queue.pop();
        const auto lower = detail::make_panel(f, worst.a, m, worst.left);
        const auto upper = detail::make_panel(f, m, worst.b, worst.right);
        total += lower.value() + upper.value() - worst.value();
        total_error += lower.error() + upper.error() - worst.error();
        queue.push(lower);
        queue.push(upper);
        ++subdivisions;
        if (total_error < 0.0) {
            total_error = 0.0;
        }
    }

    std::vector<detail::Panel> panels;
    panels.reserve(queue.size());
    while (!queue.empty()) {
        panels.push_back(queue.top());
        queue.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const detail::Panel& x, const detail::Panel& y) { return x.a < y.a; });
    std::vector<double> values;
    std::vector<double> errors;
    values.reserve(panels.size());
    errors.reserve(panels.size());
    for (const auto& p : panels) {
        values.push_back(p.value());
        errors.push_back(p.error());
    }
    return {detail::compensated_sum(values), detail::compensated_sum(errors), panels.size()};
}

/// Mean of g over [0, 2 pi) by the periodic trapezoid rule, doubling the
/// node count until successive estimates agree.
template <class G>
double periodic_mean(G&& g, const QuadratureSettings& settings) {
    settings.validate();
    std::size_t n = settings.angular_nodes_initial;
    const auto sample_mean = [&](std::size_t count, std::size_t stride, std::size_t offset) {
        double sum = 0.0;
        for (std::size_t k = offset; k < count; k += stride) {
            sum += g(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count));
        }
        return sum;
    };
    double mean = sample_mean(n, 1, 0) / static_cast<double>(n);
    double change = std::numeric_limits<double>::infinity();
    for (;;) {
        if (2 * n > settings.max_subdivisions) {
            throw ConvergenceError("periodic_mean: node budget exhausted", mean, change);
        }
        const double odd = sample_mean(2 * n, 2, 1) / static_cast<double>(n);
        const double refined = 0.5 * (mean + odd);
        change = std::abs(refined - mean);
        mean = refined;
        n *= 2;
        if (change <= settings.target(refined)) {
            return mean;
        }
    }
}

}  // namespace qcg
