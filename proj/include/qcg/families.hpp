#pragma once

// Exactly solvable radial stretches f(z) = rho(|z - z0|) (z - z0)/|z - z0| + f(z0).
//
// Every profile in the catalog satisfies r rho'(r) / rho(r) <= 1, so the
// dilatation of the map is rho / (r rho').

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "qcg/core.hpp"
#include "qcg/errors.hpp"

namespace qcg {

enum class ProfileKind { identity, power, log_stretch };

class RadialProfile {
public:
    static RadialProfile identity(PlanePoint center = {}) {
        return RadialProfile(ProfileKind::identity, 1.0, center);
    }

    /// rho(r) = r^alpha, alpha in (0, 1].
    static RadialProfile power(double alpha, PlanePoint center = {}) {
        if (!(alpha > 0.0 && alpha <= 1.0)) {
            throw DomainError("power profile: alpha must lie in (0, 1]");
        }
        return RadialProfile(ProfileKind::power, alpha, center);
    }

    /// rho(r) = r/e on [0, e] and (ln r)^gamma beyond, gamma in (0, 1].
    static RadialProfile log_stretch(double gamma, PlanePoint center = {}) {
        if (!(gamma > 0.0 && gamma <= 1.0)) {
            throw DomainError("log-stretch profile: gamma must lie in (0, 1]");
        }
        return RadialProfile(ProfileKind::log_stretch, gamma, center);
    }

    ProfileKind kind() const noexcept { return kind_; }
    /// alpha for power, gamma for log-stretch, 1 for identity.
    double parameter() const noexcept { return parameter_; }
    const PlanePoint& center() const noexcept { return center_; }

    std::string name() const {
        switch (kind_) {
            case ProfileKind::identity: return "identity";
            case ProfileKind::power: return "power";
            case ProfileKind::log_stretch: return "log-stretch";
        }
        return {};
    }

    /// Radii where rho fails to be smooth.
    std::vector<double> kinks() const {
        if (kind_ == ProfileKind::log_stretch) {
            return {std::numbers::e};
        }
        return {};
    }

private:
    RadialProfile(ProfileKind kind, double parameter, PlanePoint center)
        : kind_(kind), parameter_(parameter), center_(center) {}

    ProfileKind kind_;
    double parameter_;
    PlanePoint center_;
};

inline double profile_value(const RadialProfile& p, double r) {
    if (!(r >= 0.0)) {
        throw DomainError("profile_value: r must be nonnegative");
    }
    switch (p.kind()) {
        case ProfileKind::identity: return r;
        case ProfileKind::power: return std::pow(r, p.parameter());
        case ProfileKind::log_stretch:
            return r <= std::numbers::e ? r / std::numbers::e : std::pow(std::log(r), p.parameter());
    }
    return r;
}

/// ln rho(r), evaluated without forming rho so that ring moduli stay exact.
inline double log_profile_value(const RadialProfile& p, double r) {
    if (!(r > 0.0)) {
        throw DomainError("log_profile_value: r must be positive");
    }
    switch (p.kind()) {
        case ProfileKind::identity: return std::log(r);
        case ProfileKind::power: return p.parameter() * std::log(r);
        case ProfileKind::log_stretch:
            return r <= std::numbers::e ? std::log(r) - 1.0
                                        : p.parameter() * std::log(std::log(r));
    }
    return std::log(r);
}

/// Logarithmic derivative r rho'(r) / rho(r). At the log-stretch splice the
/// right limit is used.
inline double profile_stretch(const RadialProfile& p, double r) {
    if (!(r > 0.0)) {
        throw DomainError("profile_stretch: r must be positive");
    }
    switch (p.kind()) {
        case ProfileKind::identity: return 1.0;
        case ProfileKind::power: return p.parameter();
        case ProfileKind::log_stretch:
            return r < std::numbers::e ? 1.0 : p.parameter() / std::log(r);
    }
    return 1.0;
}

inline double family_dilatation(const RadialProfile& p, double r) {
    const double a = profile_stretch(p, r);
    return a <= 1.0 ? 1.0 / a : a;
}

/// mu(z) = ((z - z0) / conj(z - z0)) (a - 1) / (a + 1),  a = r rho'/rho.
inline BeltramiValue family_mu(const RadialProfile& p, const PlanePoint& z) {
    const double dx = z.re() - p.center().re();
    const double dy = z.im() - p.center().im();
    const double r = std::hypot(dx, dy);
    if (r == 0.0) {
        throw UndefinedAtCenterError("family_mu: mu is undefined at the center");
    }
    const double a = profile_stretch(p, r);
    if (a == 1.0) {
        return {};
    }
    const double theta = std::atan2(dy, dx);
    // |a - 1| / (a + 1) has complement 2 min(a, 1) / (a + 1)
    const double complement = 2.0 * std::min(a, 1.0) / (a + 1.0);
    const double phase = a < 1.0 ? 2.0 * theta + std::numbers::pi : 2.0 * theta;
    return BeltramiValue::from_complement(complement, phase);
}

/// M(R, f) = max over |z - z0| = R of |f(z) - f(z0)|; attained everywhere on the circle.
inline double family_max_modulus(const RadialProfile& p, double R) {
    if (!(R > 0.0)) {
        throw DomainError("family_max_modulus: R must be positive");
    }
    return profile_value(p, R);
}

/// Lebesgue measure of f(B(z0, r)).
inline double family_image_area(const RadialProfile& p, double r) {
    if (!(r > 0.0)) {
        throw DomainError("family_image_area: r must be positive");
    }
    const double rho = profile_value(p, r);
    return std::numbers::pi * rho * rho;
}

/// Modulus of the curves joining the boundary circles of f(A(z0, r1, r2)),
/// the round ring A(f(z0), rho(r1), rho(r2)).
inline double family_ring_modulus(const RadialProfile& p, double r1, double r2) {
    if (!(r1 > 0.0) || !(r2 > r1)) {
        throw DomainError("family_ring_modulus: need 0 < r1 < r2");
    }
    return 2.0 * std::numbers::pi / (log_profile_value(p, r2) - log_profile_value(p, r1));
}

struct CatalogEntry {
    std::string_view name;
    std::string_view parameter;
    std::string_view description;
};

inline constexpr CatalogEntry kFamilyCatalog[] = {
    {"identity", "-", "rho(r) = r; conformal, K = 1"},
    {"power", "alpha in (0,1]", "rho(r) = r^alpha; K = 1/alpha"},
    {"log-stretch", "gamma in (0,1]",
     "rho(r) = r/e for r <= e, (ln r)^gamma beyond; K = ln(r)/gamma for r > e"},
};

}  // namespace qcg
