#pragma once

// Dilatation fields K(z) >= 1. Every representable field is radial about its
// own center.

#include <cmath>
#include <limits>
#include <utility>
#include <variant>
#include <vector>

#include "qcg/core.hpp"
#include "qcg/families.hpp"
#include "qcg/radial_table.hpp"

namespace qcg {

enum class FieldKind { constant, from_radial_profile, tabulated_radial };

class CoefficientField {
public:
    static CoefficientField constant(double K, PlanePoint center = {}) {
        if (!(K >= 1.0) || !std::isfinite(K)) {
            throw InvalidDilatationError("constant field: K must be finite and >= 1");
        }
        return CoefficientField(K, center);
    }

    static CoefficientField from_profile(const RadialProfile& profile) {
        return CoefficientField(profile, profile.center());
    }

    /// Samples (radius, K); K is interpolated linearly in log-radius.
    static CoefficientField tabulated(RadialTable table, PlanePoint center = {}) {
        if (!(table.front() > 0.0)) {
            throw ParseError("tabulated field: radii must be positive");
        }
        for (double K : table.values()) {
            if (!(K >= 1.0)) {
                throw ParseError("tabulated field: K values must be >= 1");
            }
        }
        return CoefficientField(std::move(table), center);
    }

    FieldKind kind() const noexcept { return static_cast<FieldKind>(payload_.index()); }
    const PlanePoint& center() const noexcept { return center_; }
    double scale() const noexcept { return scale_; }

    /// The field lambda * K. Requires lambda >= 1 so that the result stays >= 1.
    CoefficientField scaled(double lambda) const {
        if (!(lambda >= 1.0) || !std::isfinite(lambda)) {
            throw InvalidDilatationError("scaled field: lambda must be finite and >= 1");
        }
        CoefficientField copy = *this;
        copy.scale_ *= lambda;
        return copy;
    }

    /// Same field re-centered at a new point.
    CoefficientField recentered(PlanePoint center) const {
        CoefficientField copy = *this;
        copy.center_ = center;
        if (const auto* p = std::get_if<RadialProfile>(&copy.payload_)) {
            copy.payload_ = rebuild(*p, center);
        }
        return copy;
    }

    /// Closed radius range on which the field may be evaluated.
    std::pair<double, double> radial_domain() const {
        if (const auto* t = std::get_if<RadialTable>(&payload_)) {
            return {t->front(), t->back()};
        }
        return {0.0, std::numeric_limits<double>::infinity()};
    }

    /// Radii where K is not smooth; quadrature splits panels there.
    std::vector<double> breakpoints() const {
        if (const auto* p = std::get_if<RadialProfile>(&payload_)) {
            return p->kinks();
        }
        if (const auto* t = std::get_if<RadialTable>(&payload_)) {
            return t->abscissae();
        }
        return {};
    }

    const RadialProfile* profile() const noexcept { return std::get_if<RadialProfile>(&payload_); }
    const RadialTable* table() const noexcept { return std::get_if<RadialTable>(&payload_); }

    /// K at distance r from the center.
    double radial_value(double r) const {
        double K = 1.0;
        if (const auto* c = std::get_if<double>(&payload_)) {
            K = *c;
        } else if (const auto* p = std::get_if<RadialProfile>(&payload_)) {
            if (!(r > 0.0)) {
                throw UndefinedAtCenterError("field: dilatation undefined at the center");
            }
            K = family_dilatation(*p, r);
        } else {
            K = std::get<RadialTable>(payload_).interpolate_log(r);
        }
        return scale_ * K;
    }

private:
    using Payload = std::variant<double, RadialProfile, RadialTable>;

    CoefficientField(Payload payload, PlanePoint center)
        : payload_(std::move(payload)), center_(center) {}

    static RadialProfile rebuild(const RadialProfile& p, PlanePoint center) {
        switch (p.kind()) {
            case ProfileKind::identity: return RadialProfile::identity(center);
            case ProfileKind::power: return RadialProfile::power(p.parameter(), center);
            case ProfileKind::log_stretch: return RadialProfile::log_stretch(p.parameter(), center);
        }
        return p;
    }

    Payload payload_;
    PlanePoint center_;
    double scale_ = 1.0;
};

/// K_mu(z) for a stored field.
inline double eval_radial_dilatation(const CoefficientField& field, double r,
                                     double k_max = kDefaultKMax) {
    const auto [lo, hi] = field.radial_domain();
    if (!(r >= lo && r <= hi)) {
        throw DomainError("eval_dilatation: radius " + std::to_string(r) +
                          " outside the field domain");
    }
    const double K = field.radial_value(r);
    if (!(K <= k_max)) {
        throw OverflowError("eval_dilatation: K exceeds K_max");
    }
    return K;
}

inline double eval_dilatation(const CoefficientField& field, const PlanePoint& z,
                              double k_max = kDefaultKMax) {
    return eval_radial_dilatation(field, distance(z, field.center()), k_max);
}

}  // namespace qcg
