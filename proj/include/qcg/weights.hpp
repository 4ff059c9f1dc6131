#pragma once

// Iterated exponentials and logarithms, radial weights psi(t) and the
// normalization integral I(R) = int_{r0}^{R} psi(t) dt.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qcg/errors.hpp"
#include "qcg/integrate.hpp"
#include "qcg/radial_table.hpp"

namespace qcg {

/// Largest canonical weight order; e_4 = exp(e_3) is not representable.
inline constexpr int kMaxCanonicalOrder = 3;

/// e_0 = 1, e_{k+1} = exp(e_k).
inline double iterated_exp(int k) {
    if (k < 0) {
        throw DomainError("iterated_exp: k must be nonnegative");
    }
    double value = 1.0;
    for (int i = 0; i < k; ++i) {
        value = std::exp(value);
    }
    if (!std::isfinite(value)) {
        throw OverflowError("iterated_exp: e_" + std::to_string(k) + " overflows");
    }
    return value;
}

/// ln_0 t = t, ln_{k+1} t = ln(ln_k t). Requires every intermediate ln_j t,
/// j < k, to be strictly positive.
inline double iterated_log(int k, double t) {
    if (k < 0) {
        throw DomainError("iterated_log: k must be nonnegative");
    }
    if (!std::isfinite(t)) {
        throw DomainError("iterated_log: t must be finite");
    }
    double value = t;
    for (int i = 0; i < k; ++i) {
        if (!(value > 0.0)) {
            throw DomainError("iterated_log: ln_" + std::to_string(k) + " undefined at t = " +
                              std::to_string(t));
        }
        value = std::log(value);
    }
    return value;
}

/// Radial weight psi(t) >= 0.
class WeightSpec {
public:
    struct CanonicalIteratedLog {
        int order;
    };
    struct Reciprocal {};
    struct Constant {
        double value;
    };

    /// psi(t) = 1 / prod_{k=0}^{N} ln_k t, defined for t > e_{N-1}.
    static WeightSpec canonical(int order) {
        if (order < 0 || order > kMaxCanonicalOrder) {
            throw DomainError("canonical weight: order must lie in [0, " +
                              std::to_string(kMaxCanonicalOrder) + "]");
        }
        return WeightSpec(CanonicalIteratedLog{order});
    }

    static WeightSpec reciprocal() { return WeightSpec(Reciprocal{}); }

    static WeightSpec constant(double value) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw DomainError("constant weight: value must be positive and finite");
        }
        return WeightSpec(Constant{value});
    }

    /// Samples (t, psi) interpolated linearly in t.
    static WeightSpec tabulated(RadialTable table) {
        if (!(table.front() > 0.0)) {
            throw ParseError("tabulated weight: abscissae must be positive");
        }
        for (double v : table.values()) {
            if (!(v >= 0.0)) {
                throw ParseError("tabulated weight: values must be nonnegative");
            }
        }
        return WeightSpec(std::move(table));
    }

    bool is_canonical() const noexcept { return std::holds_alternative<CanonicalIteratedLog>(kind_); }
    int canonical_order() const {
        return std::get<CanonicalIteratedLog>(kind_).order;
    }
    const RadialTable* table() const noexcept { return std::get_if<RadialTable>(&kind_); }

    std::string describe() const {
        if (const auto* c = std::get_if<CanonicalIteratedLog>(&kind_)) {
            return "canonical(N=" + std::to_string(c->order) + ")";
        }
        if (std::holds_alternative<Reciprocal>(kind_)) {
            return "reciprocal";
        }
        if (const auto* c = std::get_if<Constant>(&kind_)) {
            return "constant(" + std::to_string(c->value) + ")";
        }
        return "tabulated";
    }

    /// Lower edge of the domain. Canonical and reciprocal weights exclude it.
    double lower_edge() const {
        if (const auto* c = std::get_if<CanonicalIteratedLog>(&kind_)) {
            return c->order == 0 ? 0.0 : iterated_exp(c->order - 1);
        }
        if (const auto* t = std::get_if<RadialTable>(&kind_)) {
            return t->front();
        }
        return 0.0;
    }

    double upper_edge() const {
        if (const auto* t = std::get_if<RadialTable>(&kind_)) {
            return t->back();
        }
        return std::numeric_limits<double>::infinity();
    }

    /// True when psi blows up at the lower edge.
    bool singular_at_lower_edge() const noexcept {
        return std::holds_alternative<CanonicalIteratedLog>(kind_) ||
               std::holds_alternative<Reciprocal>(kind_);
    }

    bool in_domain(double t) const {
        if (const auto* tab = std::get_if<RadialTable>(&kind_)) {
            return tab->contains(t);
        }
        return t > lower_edge() && std::isfinite(t);
    }

    std::vector<double> breakpoints() const {
        if (const auto* t = std::get_if<RadialTable>(&kind_)) {
            return t->abscissae();
        }
        return {};
    }

    double value_unchecked(double t) const {
        if (const auto* c = std::get_if<CanonicalIteratedLog>(&kind_)) {
            double product = t;
            double lk = t;
            for (int k = 1; k <= c->order; ++k) {
                lk = std::log(lk);
                product *= lk;
            }
            return 1.0 / product;
        }
        if (std::holds_alternative<Reciprocal>(kind_)) {
            return 1.0 / t;
        }
        if (const auto* c = std::get_if<Constant>(&kind_)) {
            return c->value;
        }
        return std::get<RadialTable>(kind_).interpolate_linear(t);
    }

private:
    using Kind = std::variant<CanonicalIteratedLog, Reciprocal, Constant, RadialTable>;

    explicit WeightSpec(Kind kind) : kind_(std::move(kind)) {}

    Kind kind_;
};

inline double eval_weight(const WeightSpec& w, double t) {
    if (!w.in_domain(t)) {
        throw DomainError("eval_weight: t = " + std::to_string(t) + " outside the domain of " +
                          w.describe());
    }
    return w.value_unchecked(t);
}

/// Effective lower integration limit: nudged off r0 when the weight is
/// singular exactly there.
inline double effective_lower_limit(const WeightSpec& w, double r0) {
    if (w.singular_at_lower_edge() && r0 == w.lower_edge()) {
        return r0 + 1e-14 * r0;
    }
    return r0;
}

namespace detail {

inline void require_weight_interval(const WeightSpec& w, double r0, double R, const char* who) {
    if (!(r0 > 0.0) || !(R > r0) || !std::isfinite(R)) {
        throw DomainError(std::string(who) + ": need 0 < r0 < R < inf");
    }
    if (r0 < w.lower_edge() || R > w.upper_edge()) {
        throw DomainError(std::string(who) + ": [" + std::to_string(r0) + ", " + std::to_string(R) +
                          "] leaves the domain of " + w.describe());
    }
}

}  // namespace detail

/// I(R) = int_{r0}^{R} psi(t) dt, required to be positive and finite.
inline double normalization_integral(const WeightSpec& w, double r0, double R,
                                     const QuadratureSettings& quad = {}) {
    detail::require_weight_interval(w, r0, R, "normalization_integral");
    const double lower = effective_lower_limit(w, r0);
    const auto breaks = w.breakpoints();
    const auto result = integrate_adaptive([&](double t) { return w.value_unchecked(t); }, lower, R,
                                           quad, breaks);
    if (!(result.value > 0.0) || !std::isfinite(result.value)) {
        throw ConditionViolationError("normalization_integral: I(R) = " +
                                      std::to_string(result.value) + " is not in (0, inf)");
    }
    return result.value;
}

struct Lemma5Result {
    double numeric;
    double closed_form;
    double abs_error;
};

/// Quadrature of the canonical weight over [e_N, R] against ln_{N+1} R.
inline Lemma5Result lemma5_check(int order, double R, const QuadratureSettings& quad = {}) {
    const auto weight = WeightSpec::canonical(order);
    const double lower = iterated_exp(order);
    if (!(R > lower)) {
        throw DomainError("lemma5_check: R must exceed e_N");
    }
    const double numeric = normalization_integral(weight, lower, R, quad);
    const double closed = iterated_log(order + 1, R);
    return {numeric, closed, std::abs(numeric - closed)};
}

}  // namespace qcg
