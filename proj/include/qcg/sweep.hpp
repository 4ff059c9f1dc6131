#pragma once

// R-grid sweeps producing GrowthReport tables for one of the growth
// statements. Grid points are independent and may be evaluated on several
// threads; results are always collected in grid order.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qcg/bounds.hpp"
#include "qcg/families.hpp"
#include "qcg/field.hpp"
#include "qcg/quadrature.hpp"
#include "qcg/weights.hpp"

namespace qcg {

enum class Statement { lemma3, lemma4, thm2, cor1, cor2 };

inline std::string to_string(Statement s) {
    switch (s) {
        case Statement::lemma3: return "lemma3";
        case Statement::lemma4: return "lemma4";
        case Statement::thm2: return "thm2";
        case Statement::cor1: return "cor1";
        case Statement::cor2: return "cor2";
    }
    return {};
}

inline Statement parse_statement(const std::string& name) {
    for (auto s : {Statement::lemma3, Statement::lemma4, Statement::thm2, Statement::cor1,
                   Statement::cor2}) {
        if (to_string(s) == name) {
            return s;
        }
    }
    throw ParseError("unknown theorem selector '" + name + "'");
}

/// Geometric grid of `count` radii from R_min to R_max inclusive.
inline std::vector<double> geometric_grid(double R_min, double R_max, std::size_t count) {
    if (!(R_min > 0.0) || !(R_max > R_min) || !std::isfinite(R_max) || count < 2) {
        throw DomainError("geometric_grid: need 0 < R_min < R_max and count >= 2");
    }
    std::vector<double> grid(count);
    const double step = std::log(R_max / R_min) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = R_min * std::exp(step * static_cast<double>(i));
    }
    grid.back() = R_max;
    return grid;
}

/// Supplies M(R) and the lower floor of the growth envelope.
struct GrowthSource {
    std::function<double(double)> max_modulus;
    std::optional<double> floor;
};

inline GrowthSource profile_source(const RadialProfile& p, double r0) {
    return {[p](double R) { return family_max_modulus(p, R); }, lemma3_floor(p, r0)};
}

/// rho(r) of the radial homeomorphism with dilatation K taking the
/// contracting branch r rho'/rho = 1/K, normalized by rho(anchor) = anchor.
inline double field_solution_radius(const CoefficientField& field, double anchor, double r,
                                    const QuadratureSettings& quad = {}) {
    if (r == anchor) {
        return anchor;
    }
    const auto breaks = field.breakpoints();
    const auto inv = [&](double t) { return 1.0 / (t * field.radial_value(t)); };
    const double lo = std::min(anchor, r);
    const double hi = std::max(anchor, r);
    const double J = integrate_adaptive(inv, lo, hi, quad, breaks).value;
    return anchor * std::exp(r > anchor ? J : -J);
}

inline GrowthSource field_solution_source(const CoefficientField& field, double r0,
                                          const QuadratureSettings& quad) {
    const double anchor = field.table() ? field.radial_domain().first : r0;
    return {[field, anchor, quad](double R) { return field_solution_radius(field, anchor, R, quad); },
            field_solution_radius(field, anchor, r0, quad)};
}

struct SweepSpec {
    CoefficientField field = CoefficientField::constant(1.0);
    WeightSpec weight = WeightSpec::canonical(0);
    double r0 = 1.0;
    Statement statement = Statement::lemma3;
    /// Hypothesis constant: c for lemma4/thm2/cor1, the circle-average bound K
    /// for cor2. Fitted over the grid when absent.
    std::optional<double> constant;
    double p = 1.0;
    QuadratureSettings quad;
    unsigned threads = 1;
};

struct SweepResult {
    std::vector<GrowthReport> reports;
    /// c or K as used for the ratio column; NaN for lemma3.
    double constant = std::numeric_limits<double>::quiet_NaN();
    /// gamma (thm2), 2 pi / c (cor1), 1 / K (cor2); NaN otherwise.
    double exponent = std::numeric_limits<double>::quiet_NaN();

    bool all_converged() const {
        return std::all_of(reports.begin(), reports.end(),
                           [](const GrowthReport& r) { return r.converged; });
    }
};

namespace detail {

struct GridPoint {
    GrowthReport report;
    double area = 0.0;
    double circle_mean = 0.0;
};

inline double estimate_or_flag(const std::function<double()>& compute, bool& converged) {
    try {
        return compute();
    } catch (const ConvergenceError& e) {
        converged = false;
        return e.estimate();
    }
}

inline GridPoint evaluate_grid_point(const SweepSpec& spec, const GrowthSource& source, double R) {
    GridPoint g;
    auto& rep = g.report;
    rep.R = R;
    rep.floor = source.floor;
    const auto& center = spec.field.center();
    rep.I_R = estimate_or_flag(
        [&] { return normalization_integral(spec.weight, spec.r0, R, spec.quad); }, rep.converged);
    g.area = estimate_or_flag(
        [&] { return annulus_integral(spec.field, spec.weight, AnnulusSpec(center, spec.r0, R), spec.quad); },
        rep.converged);
    if (!(rep.I_R > 0.0) || !(g.area > 0.0)) {
        throw ConditionViolationError("sweep: nonpositive integral at R = " + std::to_string(R));
    }
    rep.Lambda_R = g.area / (rep.I_R * rep.I_R);
    rep.M_R = source.max_modulus(R);
    rep.envelope = lemma3_envelope(rep.M_R, rep.Lambda_R);
    rep.ratio = rep.envelope;
    if (spec.statement == Statement::cor2) {
        g.circle_mean = estimate_or_flag(
            [&] { return circle_average(spec.field, CircleSpec(center, R), spec.quad); },
            rep.converged);
    }
    return g;
}

inline void require_statement_setup(const SweepSpec& spec) {
    const auto is_canonical = [&](int order) {
        return spec.weight.is_canonical() && spec.weight.canonical_order() == order;
    };
    switch (spec.statement) {
        case Statement::thm2:
            if (!spec.weight.is_canonical() ||
                spec.r0 != iterated_exp(spec.weight.canonical_order())) {
                throw DomainError("thm2 requires the canonical weight with r0 = e_N");
            }
            break;
        case Statement::cor1:
        case Statement::cor2:
            if (!is_canonical(0) || spec.r0 != 1.0) {
                throw DomainError(to_string(spec.statement) +
                                  " requires the canonical weight N = 0 with r0 = 1");
            }
            break;
        case Statement::lemma4:
            if (!(spec.p <= 2.0)) {
                throw HypothesisViolationError("lemma4 requires p <= 2");
            }
            break;
        case Statement::lemma3:
            break;
    }
}

}  // namespace detail

/// Evaluates M(R), I(R), Lambda(R), the lemma-3 envelope and the ratio of
/// the selected statement at every grid radius.
inline SweepResult growth_sweep(const SweepSpec& spec, const GrowthSource& source,
                                const std::vector<double>& grid) {
    detail::require_statement_setup(spec);
    if (grid.empty()) {
        throw DomainError("growth_sweep: empty grid");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > spec.r0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
            throw DomainError("growth_sweep: grid must be increasing and exceed r0");
        }
    }

    std::vector<detail::GridPoint> points(grid.size());
    std::vector<std::exception_ptr> failures(grid.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            try {
                points[i] = detail::evaluate_grid_point(spec, source, grid[i]);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(spec.threads, grid.size()));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    for (const auto& f : failures) {
        if (f) {
            std::rethrow_exception(f);
        }
    }

    SweepResult result;
    const auto fitted = [&](auto&& per_point) {
        if (spec.constant) {
            return *spec.constant;
        }
        double best = 0.0;
        for (const auto& g : points) {
            best = std::max(best, per_point(g));
        }
        return best;
    };
    const double two_pi = 2.0 * std::numbers::pi;
    switch (spec.statement) {
        case Statement::lemma3:
            break;
        case Statement::lemma4:
        case Statement::thm2:
        case Statement::cor1: {
            const double p = spec.statement == Statement::lemma4 ? spec.p : 1.0;
            result.constant = fitted(
                [p](const detail::GridPoint& g) { return g.area / std::pow(g.report.I_R, p); });
            if (spec.statement != Statement::lemma4) {
                result.exponent = two_pi / result.constant;
            }
            break;
        }
        case Statement::cor2:
            result.constant = fitted([](const detail::GridPoint& g) { return g.circle_mean; });
            result.exponent = 1.0 / result.constant;
            break;
    }

    result.reports.reserve(points.size());
    for (auto& g : points) {
        auto& rep = g.report;
        switch (spec.statement) {
            case Statement::lemma3:
                break;
            case Statement::lemma4:
                rep.ratio = lemma4_envelope(rep.M_R, rep.I_R, result.constant, spec.p);
                break;
            case Statement::thm2:
                rep.ratio = theorem2_ratio(rep.M_R, rep.R, spec.weight.canonical_order(),
                                           result.exponent);
                break;
            case Statement::cor1:
            case Statement::cor2:
                rep.ratio = corollary_ratio(rep.M_R, rep.R, result.exponent);
                break;
        }
        result.reports.push_back(rep);
    }
    return result;
}

}  // namespace qcg
