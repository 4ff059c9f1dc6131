#pragma once

// Growth bounds at infinity for radial solutions of the Beltrami equation:
// the modulus majorant Lambda(R), the condenser capacity bound, the growth
// envelopes and their liminf verdicts, and the ring Q-homeomorphism check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "qcg/core.hpp"
#include "qcg/families.hpp"
#include "qcg/field.hpp"
#include "qcg/integrate.hpp"
#include "qcg/quadrature.hpp"
#include "qcg/radial_table.hpp"
#include "qcg/weights.hpp"

namespace qcg {

// ---------------------------------------------------------------------------
// Lambda(R)

struct LambdaParts {
    double area_integral;  // int_A K psi^2 dm
    double weight_integral;  // I(R)
    double lambda;
};

/// Lambda(R) = I(R)^{-2} int_{A(z0, r0, R)} K(z) psi^2(|z - z0|) dm(z), with its parts.
inline LambdaParts lambda_parts(const CoefficientField& field, const WeightSpec& w,
                                const PlanePoint& z0, double r0, double R,
                                const QuadratureSettings& quad = {}) {
    const double I = normalization_integral(w, r0, R, quad);
    const double area = annulus_integral(field, w, AnnulusSpec(z0, r0, R), quad);
    return {area, I, area / (I * I)};
}

inline double lambda_bound(const CoefficientField& field, const WeightSpec& w,
                           const PlanePoint& z0, double r0, double R,
                           const QuadratureSettings& quad = {}) {
    const auto parts = lambda_parts(field, w, z0, r0, R, quad);
    if (!(parts.lambda > 0.0) || !std::isfinite(parts.lambda)) {
        throw ConditionViolationError("lambda_bound: Lambda(R) is not positive and finite");
    }
    return parts.lambda;
}

// ---------------------------------------------------------------------------
// Capacity and envelopes

/// cap(A, C) >= 4 pi / ln(m(A) / m(C)).
inline double capacity_lower_bound(double area_A, double area_C) {
    if (!(area_C > 0.0) || !(area_A > area_C) || !std::isfinite(area_A)) {
        throw DegenerateCondenserError("capacity_lower_bound: need m(A) > m(C) > 0");
    }
    return 4.0 * std::numbers::pi / std::log(area_A / area_C);
}

/// M(R) exp(-2 pi / Lambda(R)).
inline double lemma3_envelope(double M_R, double Lambda_R) {
    if (!(Lambda_R > 0.0)) {
        throw DomainError("lemma3_envelope: Lambda must be positive");
    }
    return M_R * std::exp(-2.0 * std::numbers::pi / Lambda_R);
}

/// sqrt(m(f B_{r0}) / pi); a lower bound for the envelope at every R.
inline double lemma3_floor(const RadialProfile& p, double r0) {
    return std::sqrt(family_image_area(p, r0) / std::numbers::pi);
}

/// M(R) exp(-(2 pi / c) I(R)^{2 - p}); meaningful only for p <= 2.
inline double lemma4_envelope(double M_R, double I_R, double c, double p) {
    if (!(p <= 2.0)) {
        throw HypothesisViolationError("lemma4_envelope: exponent p must be <= 2");
    }
    if (!(c > 0.0) || !(I_R > 0.0)) {
        throw DomainError("lemma4_envelope: c and I(R) must be positive");
    }
    return M_R * std::exp(-(2.0 * std::numbers::pi / c) * std::pow(I_R, 2.0 - p));
}

/// M(R) / (ln_N R)^gamma.
inline double theorem2_ratio(double M_R, double R, int order, double gamma) {
    const double base = iterated_log(order, R);
    if (!(base > 0.0)) {
        throw DomainError("theorem2_ratio: ln_N R must be positive");
    }
    return M_R / std::pow(base, gamma);
}

/// M(R) / R^exponent.
inline double corollary_ratio(double M_R, double R, double exponent) {
    if (!(R > 0.0)) {
        throw DomainError("corollary_ratio: R must be positive");
    }
    return M_R / std::pow(R, exponent);
}

// ---------------------------------------------------------------------------
// Radial test functions and the ring inequality

/// eta on (r1, r2); admissible when int eta >= 1.
class RadialTestFunction {
public:
    static RadialTestFunction piecewise_linear(RadialTable knots) {
        for (double v : knots.values()) {
            if (!(v >= 0.0)) {
                throw DomainError("test function: values must be nonnegative");
            }
        }
        return RadialTestFunction(std::move(knots));
    }

    /// eta(t) = scale / t.
    static RadialTestFunction scaled_reciprocal(double scale) {
        return RadialTestFunction(ScaledReciprocal{scale});
    }

    static RadialTestFunction constant(double value) { return RadialTestFunction(Constant{value}); }

    /// eta(t) = scale / (t K(t)); minimizes int K eta^2 dm among admissible eta.
    static RadialTestFunction inverse_dilatation(const CoefficientField& field, double scale) {
        return RadialTestFunction(InverseDilatation{field, scale});
    }

    double operator()(double t) const {
        return std::visit(
            [t](const auto& k) -> double {
                using T = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<T, RadialTable>) {
                    return k.interpolate_linear(t);
                } else if constexpr (std::is_same_v<T, ScaledReciprocal>) {
                    return k.scale / t;
                } else if constexpr (std::is_same_v<T, Constant>) {
                    return k.value;
                } else {
                    return k.scale / (t * k.field.radial_value(t));
                }
            },
            kind_);
    }

    std::vector<double> breakpoints() const {
        if (const auto* t = std::get_if<RadialTable>(&kind_)) {
            return t->abscissae();
        }
        if (const auto* f = std::get_if<InverseDilatation>(&kind_)) {
            return f->field.breakpoints();
        }
        return {};
    }

    /// int_{r1}^{r2} eta(t) dt; exact for piecewise-linear samples.
    double integral(double r1, double r2, const QuadratureSettings& quad = {}) const {
        if (const auto* t = std::get_if<RadialTable>(&kind_)) {
            if (t->front() == r1 && t->back() == r2) {
                const auto& x = t->abscissae();
                const auto& y = t->values();
                std::vector<double> pieces;
                for (std::size_t i = 0; i + 1 < x.size(); ++i) {
                    pieces.push_back(0.5 * (x[i + 1] - x[i]) * (y[i] + y[i + 1]));
                }
                return detail::compensated_sum(pieces);
            }
        }
        const auto breaks = breakpoints();
        return integrate_adaptive(*this, r1, r2, quad, breaks).value;
    }

private:
    struct ScaledReciprocal {
        double scale;
    };
    struct Constant {
        double value;
    };
    struct InverseDilatation {
        CoefficientField field;
        double scale;
    };
    using Kind = std::variant<RadialTable, ScaledReciprocal, Constant, InverseDilatation>;

    explicit RadialTestFunction(Kind kind) : kind_(std::move(kind)) {}

    Kind kind_;
};

/// eta(t) = 1 / (t K(t) J), J = int_{r1}^{r2} dt / (t K(t)); normalized to int eta = 1.
inline RadialTestFunction extremal_test_function(const CoefficientField& field, double r1,
                                                 double r2, const QuadratureSettings& quad = {}) {
    const auto breaks = field.breakpoints();
    const double J = integrate_adaptive(
                         [&](double t) { return 1.0 / (t * field.radial_value(t)); }, r1, r2,
                         quad, breaks)
                         .value;
    return RadialTestFunction::inverse_dilatation(field, 1.0 / J);
}

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
inline double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Nonnegative piecewise-linear eta on [r1, r2] with 4 to 16 knots and
/// values rescaled so that int eta = 1 exactly.
inline RadialTestFunction random_admissible_test_function(std::mt19937_64& rng, double r1,
                                                          double r2) {
    const std::size_t knots = 4 + static_cast<std::size_t>(rng() % 13);
    std::vector<double> x{r1, r2};
    while (x.size() < knots) {
        const double t = r1 + (r2 - r1) * unit_uniform(rng);
        if (t > r1 && t < r2 && std::find(x.begin(), x.end(), t) == x.end()) {
            x.push_back(t);
        }
    }
    std::sort(x.begin(), x.end());
    std::vector<double> y(knots);
    double area = 0.0;
    do {
        for (auto& v : y) {
            v = unit_uniform(rng);
        }
        area = 0.0;
        for (std::size_t i = 0; i + 1 < knots; ++i) {
            area += 0.5 * (x[i + 1] - x[i]) * (y[i] + y[i + 1]);
        }
    } while (!(area > 0.0));
    for (auto& v : y) {
        v /= area;
    }
    return RadialTestFunction::piecewise_linear(RadialTable(std::move(x), std::move(y)));
}

struct RingCheckRow {
    double lhs;
    double rhs;
    bool holds;
};

/// Compares the modulus of the image ring f(A) with int_A K eta^2 dm for
/// each admissible eta.
inline std::vector<RingCheckRow> ring_inequality_check(const RadialProfile& p,
                                                       const AnnulusSpec& ann,
                                                       const std::vector<RadialTestFunction>& etas,
                                                       const QuadratureSettings& quad = {}) {
    if (!(ann.center() == p.center())) {
        throw DomainError("ring_inequality_check: annulus not centered at the profile center");
    }
    const double r1 = ann.r_inner();
    const double r2 = ann.r_outer();
    const double slack = 10.0 * quad.rel_tol;
    for (std::size_t i = 0; i < etas.size(); ++i) {
        const double mass = etas[i].integral(r1, r2, quad);
        if (!(mass >= 1.0 - slack)) {
            throw AdmissibilityError(i, mass);
        }
    }
    const auto field = CoefficientField::from_profile(p);
    const double lhs = family_ring_modulus(p, r1, r2);
    std::vector<RingCheckRow> rows;
    rows.reserve(etas.size());
    for (const auto& eta : etas) {
        const double rhs =
            detail::annulus_integral_with(field, eta, ann.center(), r1, r2, eta.breakpoints(), quad)
                .value;
        rows.push_back({lhs, rhs, lhs <= rhs * (1.0 + slack)});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Reports and verdicts

struct GrowthReport {
    double R = 0.0;
    double M_R = 0.0;
    double I_R = 0.0;
    double Lambda_R = 0.0;
    double envelope = 0.0;
    /// The quantity checked by the selected statement; equals envelope for lemma3.
    double ratio = 0.0;
    std::optional<double> floor;
    bool converged = true;

    friend bool operator==(const GrowthReport&, const GrowthReport&) = default;
};

enum class VerdictKind { bounded_below, tends_to_zero, inconclusive };

inline std::string to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::bounded_below: return "bounded-below";
        case VerdictKind::tends_to_zero: return "tends-to-zero";
        case VerdictKind::inconclusive: return "inconclusive";
    }
    return {};
}

struct Verdict {
    VerdictKind kind;
    double tail_min;
    double threshold;
};

enum class VerdictQuantity { envelope, ratio };

inline constexpr std::size_t kMinVerdictReports = 8;
inline constexpr double kDefaultTailFraction = 0.25;

/// Finite-grid estimate of the liminf of the envelope (or ratio) column.
inline Verdict liminf_verdict(const std::vector<GrowthReport>& reports, double tail_fraction,
                              std::optional<double> floor,
                              VerdictQuantity quantity = VerdictQuantity::envelope) {
    if (reports.size() < kMinVerdictReports) {
        throw InsufficientGridError("liminf_verdict: at least " +
                                    std::to_string(kMinVerdictReports) + " reports are required");
    }
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
        throw DomainError("liminf_verdict: tail fraction must lie in (0, 1]");
    }
    for (std::size_t i = 1; i < reports.size(); ++i) {
        if (!(reports[i].R > reports[i - 1].R)) {
            throw DomainError("liminf_verdict: reports must be sorted by increasing R");
        }
    }
    const auto value = [quantity](const GrowthReport& r) {
        return quantity == VerdictQuantity::envelope ? r.envelope : r.ratio;
    };
    const auto n = reports.size();
    const auto tail = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n)));
    const std::size_t start = n - std::min(tail, n);

    double tail_min = value(reports[start]);
    bool decreasing = true;
    for (std::size_t i = start + 1; i < n; ++i) {
        tail_min = std::min(tail_min, value(reports[i]));
        decreasing = decreasing && value(reports[i]) <= value(reports[i - 1]);
    }
    const double threshold = floor ? 0.5 * *floor : 1e-6;

    VerdictKind kind = VerdictKind::inconclusive;
    if (tail_min >= threshold) {
        kind = VerdictKind::bounded_below;
    } else if (decreasing && tail_min < 1e-3 * value(reports.front())) {
        kind = VerdictKind::tends_to_zero;
    }
    return {kind, tail_min, threshold};
}

}  // namespace qcg
