#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "corank/montecarlo.hpp"

using namespace corank;

TEST(Philox, KnownAnswerVectors)
{
    using P = Philox4x32;
    EXPECT_EQ(P::generate({0, 0, 0, 0}, {0, 0}), (P::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
    EXPECT_EQ(P::generate({~0u, ~0u, ~0u, ~0u}, {~0u, ~0u}),
              (P::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
    EXPECT_EQ(P::generate({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}),
              (P::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(CounterRng, StreamsAreDeterministicAndDistinct)
{
    CounterRng a(7, 3), b(7, 3), c(7, 4), d(8, 3);
    for (int i = 0; i < 100; ++i) {
        const auto x = a();
        EXPECT_EQ(x, b());
        EXPECT_NE(x, c());
        EXPECT_NE(x, d());
    }
}

TEST(CounterRng, UniformIsOpenInterval)
{
    CounterRng r(1, 0);
    double lo = 1, hi = 0, sum = 0;
    const int N = 200000;
    for (int i = 0; i < N; ++i) {
        const double u = r.uniform();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    EXPECT_GT(lo, 0.0);
    EXPECT_LT(hi, 1.0);
    EXPECT_NEAR(sum / N, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / N));
}

TEST(CounterRng, NormalMoments)
{
    CounterRng r(2, 0);
    const int N = 400000;
    double m1 = 0, m2 = 0, m4 = 0;
    for (int i = 0; i < N; ++i) {
        const double z = r.normal();
        m1 += z;
        m2 += z * z;
        m4 += z * z * z * z;
    }
    EXPECT_NEAR(m1 / N, 0.0, 4.0 / std::sqrt(double(N)));
    EXPECT_NEAR(m2 / N, 1.0, 4.0 * std::sqrt(2.0 / N));
    EXPECT_NEAR(m4 / N, 3.0, 4.0 * std::sqrt(96.0 / N));
}

TEST(CounterRng, WorksWithStdDistributions)
{
    CounterRng r(3, 0);
    std::uniform_int_distribution<int> d(0, 9);
    for (int i = 0; i < 1000; ++i) {
        const int v = d(r);
        EXPECT_GE(v, 0);
        EXPECT_LE(v, 9);
    }
}

TEST(MomentAccumulator, MergeMatchesSinglePass)
{
    MomentAccumulator all, a, b;
    for (int i = 0; i < 1000; ++i) {
        const double x = std::sin(i * 0.37) * 5 + i * 0.01;
        all.add(x);
        (i < 313 ? a : b).add(x);
    }
    a.merge(b);
    EXPECT_EQ(a.count, all.count);
    EXPECT_NEAR(a.mean, all.mean, 1e-12);
    EXPECT_NEAR(a.variance(), all.variance(), 1e-10);
}

TEST(MonteCarloMean, BitIdenticalAcrossWorkerCounts)
{
    auto f = [](CounterRng& r) { return r.normal() * r.uniform(); };
    const auto one = monte_carlo_mean(50000, 11, f, 1);
    const auto three = monte_carlo_mean(50000, 11, f, 3);
    const auto eight = monte_carlo_mean(50000, 11, f, 8);
    EXPECT_EQ(one.mean, three.mean);
    EXPECT_EQ(one.mean, eight.mean);
    EXPECT_EQ(one.stderr_, eight.stderr_);
    EXPECT_EQ(one.samples, 50000u);
    EXPECT_EQ(one.seed, 11u);
}

TEST(MonteCarloMean, StandardErrorDefinition)
{
    auto f = [](CounterRng& r) { return r.uniform(); };
    const auto e = monte_carlo_mean(100000, 5, f);
    EXPECT_NEAR(e.stderr_, std::sqrt(1.0 / 12.0 / 100000.0), 0.02 * std::sqrt(1.0 / 12.0 / 100000.0));
}

TEST(SampleMap, OrderIndependentOfWorkers)
{
    auto f = [](CounterRng& r) { return r.uniform(); };
    const auto a = sample_map<double>(10000, 9, f, 1);
    const auto b = sample_map<double>(10000, 9, f, 4);
    EXPECT_EQ(a, b);
}

TEST(WorkerCount, Environment)
{
    ::setenv("CORANK_WORKERS", "3", 1);
    EXPECT_EQ(worker_count(), 3);
    ::setenv("CORANK_WORKERS", "zero", 1);
    EXPECT_THROW(worker_count(), DomainError);
    ::setenv("CORANK_WORKERS", "0", 1);
    EXPECT_THROW(worker_count(), DomainError);
    ::unsetenv("CORANK_WORKERS");
    EXPECT_GE(worker_count(), 1);
}
