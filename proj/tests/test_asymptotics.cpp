#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "corank/asymptotics.hpp"

using namespace corank;

namespace {

std::vector<std::pair<int, LogValue>> synthetic(int lo, int hi, int count, double (*ln_f)(double))
{
    std::vector<std::pair<int, LogValue>> out;
    for (int i = 0; i < count; ++i) {
        const int n = lo + (hi - lo) * i / (count - 1);
        out.emplace_back(n, LogValue(ln_f(double(n))));
    }
    return out;
}

} // namespace

TEST(FitExponent, Synthetic)
{
    auto sq = fit_exponent(synthetic(10, 1000, 30, [](double n) { return 2.0 * std::log(n); }));
    EXPECT_NEAR(sq.exponent, 2.0, 1e-9);
    EXPECT_NEAR(sq.ln_constant, 0.0, 1e-8);
    EXPECT_NEAR(sq.r_squared, 1.0, 1e-12);
    auto k = fit_exponent(synthetic(10, 1000, 30, [](double) { return 1.7; }));
    EXPECT_NEAR(k.exponent, 0.0, 1e-9);
    auto lg = fit_exponent(synthetic(100, 1000, 30, [](double n) { return 3.0 * std::log(n) - std::log(std::log(n)); }));
    EXPECT_GT(lg.exponent, 2.8);
    EXPECT_LT(lg.exponent, 3.0);
}

TEST(FitExponent, Errors)
{
    EXPECT_THROW(fit_exponent(synthetic(10, 20, 4, [](double n) { return std::log(n); })), DomainError);
    std::vector<std::pair<int, LogValue>> bad = {{1, LogValue(0)}, {3, LogValue(0)}, {2, LogValue(0)},
                                                 {4, LogValue(0)}, {5, LogValue(0)}};
    EXPECT_THROW(fit_exponent(bad), DomainError);
}

TEST(Growth, RealMuOne)
{
    const auto r = verify_growth(SpaceKind::RealGeneral, 1, 100, 2000);
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(r.fit.exponent, 0.5, 0.01);
    EXPECT_NEAR(r.constant_at_max, std::sqrt(std::numbers::pi / 2), 0.01);
}

TEST(Growth, SymmetricMuTwoPublishedBranch)
{
    GrowthOptions opt;
    opt.i12 = I12Branch::Published;
    opt.normalization = TubeNormalization::AsPublished;
    const auto r = verify_growth(SpaceKind::RealSymmetric, 2, 101, 2001, opt);
    EXPECT_TRUE(r.pass);
    for (int n : r.n_values)
        EXPECT_EQ((n - 2) % 2, 1);
    EXPECT_NEAR(r.constant_at_max, std::sqrt(2.0 / (9.0 * std::numbers::pi)), 0.005);
    // Weyl with I_{1,2} = sqrt(2)/3 doubles the constant.
    const auto w = verify_growth(SpaceKind::RealSymmetric, 2, 101, 2001);
    EXPECT_NEAR(w.constant_at_max / r.constant_at_max, 2.0, 1e-9);
}

TEST(Growth, ComplexMuTwo)
{
    const auto r = verify_growth(SpaceKind::ComplexGeneral, 2, 50, 500);
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(r.fit.exponent, 4.0, 0.05);
}

TEST(Growth, EveryKindAndSmallMu)
{
    GrowthOptions opt;
    opt.constant_samples = 20000;
    for (auto kind : {SpaceKind::RealGeneral, SpaceKind::RealSymmetric, SpaceKind::ComplexGeneral,
                      SpaceKind::ComplexSymmetric})
        for (int mu = 1; mu <= 3; ++mu) {
            const auto r = verify_growth(kind, mu, 200, 5000, opt);
            EXPECT_TRUE(r.pass) << to_string(kind) << " mu=" << mu << " exponent " << r.fit.exponent;
        }
}

TEST(Growth, SymmetricIsSquareRootOfComplexSymmetricRate)
{
    for (int mu = 1; mu <= 4; ++mu) {
        EXPECT_DOUBLE_EQ(target_exponent(SpaceKind::RealSymmetric, mu),
                         0.5 * target_exponent(SpaceKind::ComplexSymmetric, mu));
        EXPECT_DOUBLE_EQ(target_exponent(SpaceKind::RealGeneral, mu),
                         0.5 * target_exponent(SpaceKind::ComplexGeneral, mu));
    }
}

TEST(Growth, EmptyRange)
{
    EXPECT_THROW(growth_grid(SpaceKind::RealGeneral, 3, 2, 3, 10), DomainError);
    EXPECT_THROW(growth_grid(SpaceKind::RealGeneral, 1, 10, 5, 10), DomainError);
}
