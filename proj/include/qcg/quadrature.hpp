#pragma once

// Integrals of dilatation fields over annuli and circles, in polar form:
//
//   int_A K(z) psi^2(|z - z0|) dm(z) = int_{r1}^{r2} psi^2(t) t ( int_0^{2pi} K(z0 + t e^{i theta}) dtheta ) dt
//
// The radial direction is adaptive Gauss-Legendre, the angular direction a
// doubling periodic trapezoid rule.

#include <numbers>
#include <string>
#include <vector>

#include "qcg/core.hpp"
#include "qcg/field.hpp"
#include "qcg/integrate.hpp"
#include "qcg/weights.hpp"

namespace qcg {

namespace detail {

inline void require_same_center(const CoefficientField& field, const PlanePoint& center,
                                const char* who) {
    if (!(field.center() == center) && field.kind() != FieldKind::constant) {
        throw DomainError(std::string(who) + ": region is not centered at the field center");
    }
}

inline void require_field_radii(const CoefficientField& field, double r1, double r2,
                                const char* who) {
    const auto [lo, hi] = field.radial_domain();
    if (r1 < lo || r2 > hi) {
        throw DomainError(std::string(who) + ": radii leave the field domain");
    }
}

/// Angular mean of K on the circle |z - center| = t.
inline double angular_mean(const CoefficientField& field, const PlanePoint& center, double t,
                           const QuadratureSettings& quad) {
    return periodic_mean(
        [&](double theta) { return eval_dilatation(field, polar_point(center, t, theta)); }, quad);
}

/// int_{lower}^{upper} psi^2(t) t (int K dtheta) dt for an arbitrary radial psi.
template <class Psi>
QuadratureResult annulus_integral_with(const CoefficientField& field, Psi&& psi,
                                       const PlanePoint& center, double lower, double upper,
                                       std::vector<double> breakpoints,
                                       const QuadratureSettings& quad) {
    const auto field_breaks = field.breakpoints();
    breakpoints.insert(breakpoints.end(), field_breaks.begin(), field_breaks.end());
    const auto integrand = [&](double t) {
        const double w = psi(t);
        return w * w * t * 2.0 * std::numbers::pi * angular_mean(field, center, t, quad);
    };
    return integrate_adaptive(integrand, lower, upper, quad, breakpoints);
}

}  // namespace detail

/// int over the annulus of K(z) psi^2(|z - z0|) dm(z).
inline double annulus_integral(const CoefficientField& field, const WeightSpec& w,
                               const AnnulusSpec& ann, const QuadratureSettings& quad = {}) {
    detail::require_same_center(field, ann.center(), "annulus_integral");
    detail::require_field_radii(field, ann.r_inner(), ann.r_outer(), "annulus_integral");
    detail::require_weight_interval(w, ann.r_inner(), ann.r_outer(), "annulus_integral");
    const double lower = effective_lower_limit(w, ann.r_inner());
    return detail::annulus_integral_with(
               field, [&](double t) { return w.value_unchecked(t); }, ann.center(), lower,
               ann.r_outer(), w.breakpoints(), quad)
        .value;
}

/// (1 / 2 pi R) int over the circle of K |dz|.
inline double circle_average(const CoefficientField& field, const CircleSpec& circ,
                             const QuadratureSettings& quad = {}) {
    detail::require_same_center(field, circ.center(), "circle_average");
    detail::require_field_radii(field, circ.radius(), circ.radius(), "circle_average");
    return detail::angular_mean(field, circ.center(), circ.radius(), quad);
}

}  // namespace qcg
