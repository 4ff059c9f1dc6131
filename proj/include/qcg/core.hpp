#pragma once

// Plane geometry and Beltrami-coefficient primitives.

#include <cmath>
#include <complex>
#include <numbers>

#include "qcg/errors.hpp"

namespace qcg {

inline constexpr double kDefaultDegenerateEps = 1e-12;
inline constexpr double kDefaultKMax = 1e12;

class PlanePoint {
public:
    constexpr PlanePoint() = default;
    PlanePoint(double re, double im) : re_(re), im_(im) {
        if (!std::isfinite(re) || !std::isfinite(im)) {
            throw DomainError("PlanePoint: coordinates must be finite");
        }
    }

    double re() const noexcept { return re_; }
    double im() const noexcept { return im_; }
    std::complex<double> complex() const noexcept { return {re_, im_}; }

    friend bool operator==(const PlanePoint&, const PlanePoint&) = default;

private:
    double re_ = 0.0;
    double im_ = 0.0;
};

inline double distance(const PlanePoint& a, const PlanePoint& b) noexcept {
    return std::hypot(a.re() - b.re(), a.im() - b.im());
}

/// The point center + r * exp(i theta).
inline PlanePoint polar_point(const PlanePoint& center, double r, double theta) {
    return {center.re() + r * std::cos(theta), center.im() + r * std::sin(theta)};
}

/// Open ring { z : r_inner < |z - center| < r_outer }.
class AnnulusSpec {
public:
    AnnulusSpec(PlanePoint center, double r_inner, double r_outer)
        : center_(center), r_inner_(r_inner), r_outer_(r_outer) {
        if (!(r_inner > 0.0) || !(r_outer > r_inner) || !std::isfinite(r_outer)) {
            throw DomainError("AnnulusSpec: need 0 < r_inner < r_outer < inf");
        }
    }

    const PlanePoint& center() const noexcept { return center_; }
    double r_inner() const noexcept { return r_inner_; }
    double r_outer() const noexcept { return r_outer_; }

private:
    PlanePoint center_;
    double r_inner_;
    double r_outer_;
};

class CircleSpec {
public:
    CircleSpec(PlanePoint center, double radius) : center_(center), radius_(radius) {
        if (!(radius > 0.0) || !std::isfinite(radius)) {
            throw DomainError("CircleSpec: radius must be positive and finite");
        }
    }

    const PlanePoint& center() const noexcept { return center_; }
    double radius() const noexcept { return radius_; }

private:
    PlanePoint center_;
    double radius_;
};

/// A value of the complex coefficient mu with |mu| < 1.
///
/// Alongside (re, im) the complement 1 - |mu| is stored. Near the degenerate
/// edge 1 - |mu| cancels catastrophically when recomputed from re and im, so
/// producers that know it in closed form (inverse dilatation, radial maps)
/// pass it in directly.
class BeltramiValue {
public:
    BeltramiValue() = default;

    BeltramiValue(double re, double im) : re_(re), im_(im) {
        if (!std::isfinite(re) || !std::isfinite(im)) {
            throw DomainError("BeltramiValue: components must be finite");
        }
        complement_ = 1.0 - std::hypot(re, im);
        if (!(complement_ > 0.0)) {
            throw DegenerateCoefficientError("BeltramiValue: |mu| must be < 1");
        }
    }

    /// mu = (1 - complement) * exp(i phase), with complement in (0, 1].
    static BeltramiValue from_complement(double complement, double phase) {
        if (!(complement > 0.0) || complement > 1.0 || !std::isfinite(phase)) {
            throw DomainError("BeltramiValue: complement must lie in (0, 1]");
        }
        BeltramiValue mu;
        const double modulus = 1.0 - complement;
        mu.re_ = modulus * std::cos(phase);
        mu.im_ = modulus * std::sin(phase);
        mu.complement_ = complement;
        return mu;
    }

    double re() const noexcept { return re_; }
    double im() const noexcept { return im_; }
    std::complex<double> complex() const noexcept { return {re_, im_}; }
    double modulus() const noexcept { return 1.0 - complement_; }
    /// 1 - |mu|, kept to full relative precision.
    double complement() const noexcept { return complement_; }

private:
    double re_ = 0.0;
    double im_ = 0.0;
    double complement_ = 1.0;
};

/// K = (1 + |mu|) / (1 - |mu|).
inline double dilatation_from_mu(const BeltramiValue& mu,
                                 double eps_degenerate = kDefaultDegenerateEps) {
    const double gap = mu.complement();
    if (gap <= eps_degenerate) {
        throw DegenerateCoefficientError("dilatation_from_mu: |mu| >= 1 - eps");
    }
    return (2.0 - gap) / gap;
}

/// Inverse of dilatation_from_mu with a prescribed argument of mu.
inline BeltramiValue mu_from_dilatation(double K, double phase) {
    if (!(K >= 1.0) || !std::isfinite(K)) {
        throw InvalidDilatationError("mu_from_dilatation: K must be finite and >= 1");
    }
    if (!std::isfinite(phase)) {
        throw DomainError("mu_from_dilatation: phase must be finite");
    }
    // 1 - (K-1)/(K+1) = 2/(K+1)
    return BeltramiValue::from_complement(2.0 / (K + 1.0), phase);
}

}  // namespace qcg
