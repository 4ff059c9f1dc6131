#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qcg/weights.hpp"

using namespace qcg;

namespace {
constexpr double e = std::numbers::e;
}

TEST(IteratedExp, Values) {
    EXPECT_EQ(iterated_exp(0), 1.0);
    EXPECT_DOUBLE_EQ(iterated_exp(1), e);
    EXPECT_NEAR(iterated_exp(2), 15.154262241479264, 1e-13);
    EXPECT_NEAR(iterated_exp(3), 3814279.1047602206, 1e-6);
}

TEST(IteratedExp, FourthIterateOverflows) {
    EXPECT_THROW(iterated_exp(4), OverflowError);
    EXPECT_THROW(iterated_exp(-1), DomainError);
}

TEST(IteratedLog, Values) {
    EXPECT_EQ(iterated_log(0, 7.0), 7.0);
    EXPECT_EQ(iterated_log(0, -3.0), -3.0);
    EXPECT_DOUBLE_EQ(iterated_log(1, e), 1.0);
    EXPECT_NEAR(iterated_log(2, std::exp(e)), 1.0, 1e-15);
}

TEST(IteratedLog, DomainEdges) {
    EXPECT_THROW(iterated_log(1, 0.0), DomainError);
    EXPECT_THROW(iterated_log(1, -1.0), DomainError);
    EXPECT_THROW(iterated_log(2, 1.0), DomainError);  // ln 1 = 0, ln 0 undefined
    EXPECT_THROW(iterated_log(2, 0.5), DomainError);
    EXPECT_THROW(iterated_log(3, e), DomainError);
    EXPECT_NO_THROW(iterated_log(3, e * 1.01));
}

TEST(IteratedLog, PropertyStrictlyIncreasing) {
    for (int k = 1; k <= 4; ++k) {
        double t = k >= 2 ? iterated_exp(k - 2) * 1.001 : 0.01;
        double prev = iterated_log(k, t);
        for (int i = 0; i < 200; ++i) {
            t *= 1.3;
            const double v = iterated_log(k, t);
            EXPECT_GT(v, prev);
            prev = v;
        }
    }
}

TEST(Weight, CanonicalValues) {
    EXPECT_DOUBLE_EQ(eval_weight(WeightSpec::canonical(0), 2.0), 0.5);
    EXPECT_NEAR(eval_weight(WeightSpec::canonical(1), e * e), 0.067667641618306346, 1e-17);
    EXPECT_EQ(eval_weight(WeightSpec::constant(1.0), 123.0), 1.0);
    EXPECT_DOUBLE_EQ(eval_weight(WeightSpec::reciprocal(), 4.0), 0.25);
}

TEST(Weight, CanonicalDomainGuard) {
    const auto w1 = WeightSpec::canonical(1);
    EXPECT_THROW(eval_weight(w1, 1.0), DomainError);
    EXPECT_NO_THROW(eval_weight(w1, 1.5));  // below r0 = e_1 but inside the domain
    const auto w2 = WeightSpec::canonical(2);
    EXPECT_THROW(eval_weight(w2, e), DomainError);
    EXPECT_GT(eval_weight(w2, 3.0), 0.0);
    EXPECT_THROW(WeightSpec::canonical(4), DomainError);
}

TEST(Weight, TabulatedLinearInterpolation) {
    const auto w = WeightSpec::tabulated(RadialTable({1.0, 3.0}, {2.0, 0.0}));
    EXPECT_DOUBLE_EQ(eval_weight(w, 2.0), 1.0);
    EXPECT_THROW(eval_weight(w, 4.0), DomainError);
    EXPECT_NEAR(normalization_integral(w, 1.0, 3.0), 2.0, 1e-14);
    EXPECT_THROW(WeightSpec::tabulated(RadialTable({1.0, 2.0}, {1.0, -1.0})), ParseError);
}

TEST(NormalizationIntegral, Examples) {
    EXPECT_NEAR(normalization_integral(WeightSpec::constant(1.0), 1.0, 3.0), 2.0, 1e-14);
    EXPECT_NEAR(normalization_integral(WeightSpec::canonical(0), 1.0, e), 1.0, 1e-12);
    EXPECT_NEAR(normalization_integral(WeightSpec::canonical(1), e, std::exp(e)), 1.0, 1e-12);
}

TEST(NormalizationIntegral, Errors) {
    EXPECT_THROW(normalization_integral(WeightSpec::canonical(0), 2.0, 1.0), DomainError);
    EXPECT_THROW(normalization_integral(WeightSpec::canonical(2), 2.0, 10.0), DomainError);
    const auto zero = WeightSpec::tabulated(RadialTable({1.0, 2.0}, {0.0, 0.0}));
    EXPECT_THROW(normalization_integral(zero, 1.0, 2.0), ConditionViolationError);
}

TEST(NormalizationIntegral, MatchesIndependentOracle) {
    const auto w = WeightSpec::canonical(2);
    const double r0 = 20.0;
    for (double R : {25.0, 400.0, 1e5, 1e9}) {
        const double oracle = test::log_simpson([&](double t) { return eval_weight(w, t); }, r0, R);
        EXPECT_NEAR(normalization_integral(w, r0, R), oracle, 1e-10 * oracle);
    }
}

TEST(NormalizationIntegral, PropertyMonotoneAndAdditive) {
    const auto w = WeightSpec::canonical(1);
    const double r0 = 3.0;
    double prev = 0.0;
    for (double R = 3.5; R < 1e8; R *= 2.7) {
        const double I = normalization_integral(w, r0, R);
        EXPECT_GT(I, prev);
        prev = I;
    }
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(1.0, 18.0);
    for (int i = 0; i < 20; ++i) {
        const double a = std::exp(u(rng));
        const double b = std::exp(u(rng));
        const double R1 = std::min(a, b) + r0;
        const double R2 = std::max(a, b) + r0 + 1.0;
        const double whole = normalization_integral(w, r0, R2);
        const double split = normalization_integral(w, r0, R1) + normalization_integral(w, R1, R2);
        EXPECT_NEAR(split, whole, 1e-9 * whole);
    }
}

TEST(Lemma5, Examples) {
    const auto r0 = lemma5_check(0, e);
    EXPECT_NEAR(r0.numeric, 1.0, 1e-10);
    EXPECT_DOUBLE_EQ(r0.closed_form, 1.0);
    EXPECT_LE(r0.abs_error, 1e-8);

    const auto r1 = lemma5_check(1, std::exp(e));
    EXPECT_NEAR(r1.closed_form, 1.0, 1e-15);
    EXPECT_LE(r1.abs_error, 1e-8);

    const auto r2 = lemma5_check(2, iterated_exp(3));
    EXPECT_NEAR(r2.closed_form, 1.0, 1e-15);
    EXPECT_LE(r2.abs_error, 1e-6);
}

TEST(Lemma5, Errors) {
    EXPECT_THROW(lemma5_check(1, e), DomainError);
    EXPECT_THROW(lemma5_check(4, 1e300), DomainError);
}

TEST(Lemma5, PropertySubstitutionIdentity) {
    std::mt19937_64 rng(17);
    for (int N = 0; N <= 3; ++N) {
        const double lo = std::log(iterated_exp(N));
        const double hi = N < 3 ? std::log(10.0 * iterated_exp(N + 1)) : std::log(1e300);
        std::uniform_real_distribution<double> u(lo, hi);
        for (int i = 0; i < 20; ++i) {
            double R = std::exp(u(rng));
            if (!(R > iterated_exp(N))) {
                continue;
            }
            const auto r = lemma5_check(N, R);
            EXPECT_LE(r.abs_error, std::max(1e-8, 1e-8 * r.closed_form)) << "N=" << N << " R=" << R;
        }
    }
}
