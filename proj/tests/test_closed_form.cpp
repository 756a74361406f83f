#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "corank/closed_form.hpp"

using namespace corank;

namespace {

const double kPi = std::numbers::pi;
const ConstantEstimate kI1 = ConstantEstimate::exact_value(std::sqrt(kPi / 2.0));
const ConstantEstimate kI11 = ConstantEstimate::exact_value(1.0);
const ConstantEstimate kI12 = ConstantEstimate::exact_value(std::numbers::sqrt2 / 3.0);
const ConstantEstimate kI12Published = ConstantEstimate::exact_value(std::numbers::sqrt2 / 2.0);

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// sqrt(pi) Gamma((n+1)/2) / Gamma(n/2)
double real_mu1(int n) { return std::exp(0.5 * std::log(kPi) + std::lgamma(0.5 * (n + 1)) - std::lgamma(0.5 * n)); }

// n sqrt(2/pi) Gamma((n+1)/2) / Gamma((n+2)/2)
double sym_mu1(int n)
{
    return n * std::sqrt(2.0 / kPi) * std::exp(std::lgamma(0.5 * (n + 1)) - std::lgamma(0.5 * (n + 2)));
}

} // namespace

TEST(MatrixSpace, Dimensions)
{
    EXPECT_EQ(MatrixSpace(SpaceKind::RealGeneral, 4).N(), 16);
    EXPECT_EQ(MatrixSpace(SpaceKind::RealSymmetric, 4).N(), 10);
    EXPECT_EQ(MatrixSpace(SpaceKind::ComplexGeneral, 4).N(), 32);
    EXPECT_EQ(MatrixSpace(SpaceKind::ComplexSymmetric, 4).N(), 20);
    EXPECT_EQ(MatrixSpace(SpaceKind::RealGeneral, 4).c(3), 9);
    EXPECT_EQ(MatrixSpace(SpaceKind::RealSymmetric, 4).c(3), 6);
    EXPECT_EQ(MatrixSpace(SpaceKind::ComplexGeneral, 4).c(3), 18);
    EXPECT_EQ(MatrixSpace(SpaceKind::ComplexSymmetric, 4).c(3), 12);
    EXPECT_THROW((void)MatrixSpace(SpaceKind::RealGeneral, 4).c(5), DomainError);
    EXPECT_THROW((void)MatrixSpace(SpaceKind::RealGeneral, 4).c(0), DomainError);
    EXPECT_THROW(MatrixSpace(SpaceKind::RealGeneral, 0), DomainError);
}

TEST(ComplexDegree, Examples)
{
    EXPECT_EQ(complex_degree(5, 1), 5);
    EXPECT_EQ(complex_degree(2, 2), 1);
    EXPECT_EQ(complex_degree(4, 2), 20);
    EXPECT_THROW(complex_degree(3, 4), DomainError);
    EXPECT_THROW(complex_degree(3, 0), DomainError);
}

TEST(ComplexSymDegree, Examples)
{
    EXPECT_EQ(complex_sym_degree(3, 2), 4);
    EXPECT_EQ(complex_sym_degree(7, 1), 7);
    EXPECT_EQ(complex_sym_degree(2, 2), 1);
    EXPECT_THROW(complex_sym_degree(2, 3), DomainError);
}

TEST(Degrees, PositiveIntegersAndKnownFamilies)
{
    for (int n = 1; n <= 30; ++n) {
        for (int mu = 1; mu <= n; ++mu) {
            EXPECT_GT(complex_degree(n, mu), 0);
            EXPECT_GT(complex_sym_degree(n, mu), 0);
            EXPECT_NEAR(ln_big(complex_degree(n, mu)), ln_complex_degree(n, mu),
                        1e-10 * std::max(1.0, ln_complex_degree(n, mu)));
        }
        EXPECT_EQ(complex_degree(n, n), 1);
        EXPECT_EQ(complex_sym_degree(n, n), 1);
        if (n >= 2) {
            EXPECT_EQ(complex_sym_degree(n, 2), BigInt(n) * (n - 1) * (n + 1) / 6);
        }
    }
}

TEST(RealVolumeRatio, MuOneIdentity)
{
    EXPECT_NEAR(real_volume_ratio(2, 1, kI1).value.value(), kPi / 2.0, 1e-14);
    for (int n = 2; n <= 500; ++n) {
        const auto r = real_volume_ratio(n, 1, kI1);
        EXPECT_NEAR(r.value.ln(), std::log(real_mu1(n)), 1e-9) << n;
        EXPECT_FALSE(r.relative_stderr.has_value());
        EXPECT_NEAR(real_volume_ratio(n, 1, kI1, TubeNormalization::AsPublished).value.ln(), r.value.ln(), 1e-13);
    }
    const int n = 10000;
    EXPECT_LT(rel(real_volume_ratio(n, 1, kI1).value.value() / std::sqrt(double(n)), std::sqrt(kPi / 2)), 1e-3);
}

TEST(RealVolumeRatio, RankOneSegreVolume)
{
    // Rank-one 3x3 matrices of norm one: the Segre product S^2 x S^2 / +-1,
    // of volume |S^2|^2 / 2, against |S^4|.
    const ConstantEstimate I2 = ConstantEstimate::exact_value(kPi / 16.0);
    const double segre = std::pow(4 * kPi, 2) / 2.0 / (8.0 * kPi * kPi / 3.0);
    EXPECT_NEAR(real_volume_ratio(3, 2, I2).value.value(), segre, 1e-12);
    EXPECT_NEAR(segre, 3.0, 1e-12);
    // The published prefactor is smaller by c = mu^2.
    EXPECT_NEAR(real_volume_ratio(3, 2, I2, TubeNormalization::AsPublished).value.value(), segre / 4.0, 1e-12);
}

TEST(RealVolumeRatio, UncertaintyPropagates)
{
    const ConstantEstimate est{0.2, 0.002, false, 1000, 3};
    const auto r = real_volume_ratio(5, 2, est);
    ASSERT_TRUE(r.relative_stderr.has_value());
    EXPECT_NEAR(*r.relative_stderr, 0.01, 1e-15);
    EXPECT_NEAR(*r.stderr_value(), 0.01 * r.value.value(), 1e-12);
}

TEST(SymVolumeRatio, MuOne)
{
    EXPECT_NEAR(sym_volume_ratio(2, 1, kI11).value.value(), std::numbers::sqrt2, 1e-14);
    for (int n = 2; n <= 500; n += 2)
        EXPECT_NEAR(sym_volume_ratio(n, 1, kI11).value.ln(), std::log(sym_mu1(n)), 1e-9) << n;
}

TEST(SymVolumeRatio, RankOneVeroneseVolume)
{
    // Rank-one symmetric 2x2 and 3x3 matrices of norm one: a Veronese
    // embedding of RP^{n-1}; volume ratio 2^{(n-1)/2}.
    EXPECT_NEAR(sym_volume_ratio(2, 1, kI11).value.value(), std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(sym_volume_ratio(3, 2, kI12).value.value(), 2.0, 1e-13);
}

TEST(SymVolumeRatio, BothI12Branches)
{
    // n(n-1) Gamma(n/2) / (3 sqrt(pi) Gamma((n+1)/2)) under the published
    // prefactor with I_{1,2} = sqrt(2)/2; twice that under Weyl with sqrt(2)/3.
    for (int n = 3; n <= 99; n += 2) {
        const double lit = n * (n - 1.0) * std::exp(std::lgamma(0.5 * n) - std::lgamma(0.5 * (n + 1))) /
                           (3.0 * std::sqrt(kPi));
        const double pub =
            sym_volume_ratio(n, 2, kI12Published, std::nullopt, TubeNormalization::AsPublished).value.value();
        const double weyl = sym_volume_ratio(n, 2, kI12).value.value();
        EXPECT_LT(rel(pub, lit), 1e-9) << n;
        EXPECT_LT(rel(weyl, 2.0 * lit), 1e-9) << n;
    }
    EXPECT_NEAR(sym_volume_ratio(3, 2, kI12Published, std::nullopt, TubeNormalization::AsPublished).value.value(),
                1.0, 1e-13);
}

TEST(SymVolumeRatio, EvenParityNeedsMoment)
{
    EXPECT_THROW(sym_volume_ratio(4, 2, kI12), MomentUnavailable);
    const ConstantEstimate m{1.5, 0.015, false, 1000, 1};
    const auto r = sym_volume_ratio(4, 2, kI12, m);
    ASSERT_TRUE(r.relative_stderr.has_value());
    EXPECT_NEAR(*r.relative_stderr, 0.01, 1e-14);
    // n = mu: empty GOE, moment 1.
    EXPECT_NO_THROW(sym_volume_ratio(2, 2, kI12));
}

TEST(GoeMoment, ClosedForm)
{
    EXPECT_NEAR(goe_abs_det_moment(1, 1).value(), std::sqrt(2.0 / kPi), 1e-15);
    EXPECT_NEAR(goe_abs_det_moment(1, 2).value(), 1.0, 1e-15);
    // E det(GOE(3))^2 by Wick expansion of the determinant is 15/4.
    EXPECT_NEAR(goe_abs_det_moment(3, 2).value(), 3.75, 1e-13);
    EXPECT_NEAR(goe_abs_det_moment(5, 2).value(), 32.8125, 1e-11);
    EXPECT_THROW(goe_abs_det_moment(2, 1), MomentUnavailable);
    EXPECT_THROW(goe_abs_det_moment(0, 1), MomentUnavailable);
}

TEST(Selberg, Constants)
{
    EXPECT_NEAR(selberg_C1(0).ln(), 0.0, 0.0);
    EXPECT_NEAR(selberg_C1(1).value(), 1.0 / std::sqrt(2 * kPi), 1e-15);
    EXPECT_NEAR(selberg_C1(2).value(), std::sqrt(kPi) / (4 * kPi), 1e-15);
    EXPECT_NEAR(selberg_C(1).value(), std::sqrt(2.0 / kPi), 1e-15);
    EXPECT_NEAR(selberg_C(2).value(), 0.5, 1e-15);
    EXPECT_THROW(selberg_C(0), DomainError);
    EXPECT_THROW(selberg_C1(-1), DomainError);
}

TEST(GapLimits, SmallCases)
{
    // P{|x| <= eps} ~ eps sqrt(2/pi) for a standard normal.
    EXPECT_NEAR(real_gap_limit(1, 1, std::sqrt(kPi / 2)).value(), std::sqrt(2 / kPi), 1e-15);
    EXPECT_NEAR(sym_gap_limit(1, 1, 1.0, LogValue(0.0)).value(), std::sqrt(2 / kPi), 1e-15);
    // P{chi^2_4 <= eps^2} ~ eps^4 / 8.
    EXPECT_NEAR(real_gap_limit(2, 2, kPi / 16).value(), 0.125, 1e-15);
}

TEST(AbsoluteVolume, Examples)
{
    for (int n = 2; n <= 6; ++n) {
        const auto r = complex_volume_ratio(SpaceKind::ComplexGeneral, n, 1);
        const double expect = std::log(2.0 * n) + (n * n - 1.0) * std::log(kPi) - std::lgamma(n * n - 1.0);
        EXPECT_NEAR(absolute_volume(r).ln(), expect, 1e-11);
    }
    EXPECT_NEAR(absolute_volume(real_volume_ratio(2, 1, kI1)).value(), 2 * kPi * kPi, 1e-12);
    EXPECT_NEAR(absolute_volume(sym_volume_ratio(2, 1, kI11)).value(), 2 * std::sqrt(2.0) * kPi, 1e-12);
    EXPECT_THROW(absolute_volume(real_volume_ratio(2, 2, ConstantEstimate::exact_value(kPi / 16))), DomainError);
}

TEST(VolumeRatios, MonotoneInN)
{
    const ConstantEstimate I2 = ConstantEstimate::exact_value(kPi / 16);
    for (int mu = 1; mu <= 2; ++mu) {
        double prev = 0;
        for (int n = mu + 1; n <= 200; ++n) {
            const double v = real_volume_ratio(n, mu, mu == 1 ? kI1 : I2).value.ln();
            EXPECT_GT(v, prev) << "real n=" << n;
            prev = v;
        }
        prev = -1e300;
        for (int n = mu + 1; n <= 200; n += 2) {
            const double v = sym_volume_ratio(n, mu, mu == 1 ? kI11 : kI12).value.ln();
            EXPECT_GT(v, prev) << "sym n=" << n;
            prev = v;
        }
    }
}

TEST(LnBig, LargeValues)
{
    BigInt x = 1;
    for (int i = 0; i < 3000; ++i)
        x *= 3;
    EXPECT_NEAR(ln_big(x), 3000 * std::log(3.0), 1e-9);
    EXPECT_THROW(ln_big(BigInt(0)), DomainError);
}
