#pragma once

// Reproducible Monte Carlo machinery.
//
// Samples are grouped in fixed blocks of kBlockSize.  Block b draws from the
// Philox4x32-10 stream keyed by the run seed with counter high word b, so a
// sample's random numbers depend only on (seed, sample index).  Workers pull
// blocks from a shared counter and block partials are merged in block order:
// results are bit-identical for every worker count.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "corank/errors.hpp"

namespace corank {

//---------------------------------------------------------------------------//
// Philox4x32-10 (Salmon et al., SC'11).
//---------------------------------------------------------------------------//
struct Philox4x32
{
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static constexpr Counter round(Counter c, Key k)
    {
        const std::uint64_t p0 = std::uint64_t(kMul0) * c[0];
        const std::uint64_t p1 = std::uint64_t(kMul1) * c[2];
        return {std::uint32_t(p1 >> 32) ^ c[1] ^ k[0], std::uint32_t(p1),
                std::uint32_t(p0 >> 32) ^ c[3] ^ k[1], std::uint32_t(p0)};
    }

    static constexpr Counter generate(Counter c, Key k)
    {
        c = round(c, k);
        for (int r = 1; r < 10; ++r) {
            k[0] += kWeyl0;
            k[1] += kWeyl1;
            c = round(c, k);
        }
        return c;
    }
};

/// Counter-based generator for one stream.  Satisfies
/// UniformRandomBitGenerator; normal() is Box-Muller so that results do not
/// depend on the standard library's distribution implementations.
class CounterRng
{
  public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)}, stream_(stream)
    {
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type(0); }

    result_type operator()()
    {
        if (used_ >= 2) {
            const Philox4x32::Counter ctr{std::uint32_t(draw_), std::uint32_t(draw_ >> 32),
                                          std::uint32_t(stream_), std::uint32_t(stream_ >> 32)};
            block_ = Philox4x32::generate(ctr, key_);
            ++draw_;
            used_ = 0;
        }
        const result_type hi = block_[2 * used_];
        const result_type lo = block_[2 * used_ + 1];
        ++used_;
        return (hi << 32) | lo;
    }

    /// Uniform on the open interval (0, 1).
    double uniform()
    {
        return (double((*this)() >> 11) + 0.5) * 0x1p-53;
    }

    double normal()
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double theta = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

  private:
    Philox4x32::Key key_;
    std::uint64_t stream_;
    std::uint64_t draw_ = 0;
    Philox4x32::Counter block_{};
    int used_ = 2;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

//---------------------------------------------------------------------------//
// Estimates
//---------------------------------------------------------------------------//
struct MCEstimate
{
    double mean = 0.0;
    double stderr_ = 0.0; ///< sample standard deviation / sqrt(samples)
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

/// Streaming mean/variance (Welford) with the parallel merge of Chan et al.
struct MomentAccumulator
{
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x)
    {
        ++count;
        const double d = x - mean;
        mean += d / double(count);
        m2 += d * (x - mean);
    }

    void merge(const MomentAccumulator& o)
    {
        if (o.count == 0)
            return;
        if (count == 0) {
            *this = o;
            return;
        }
        const double n = double(count) + double(o.count);
        const double d = o.mean - mean;
        mean += d * double(o.count) / n;
        m2 += o.m2 + d * d * double(count) * double(o.count) / n;
        count += o.count;
    }

    [[nodiscard]] double variance() const { return count > 1 ? m2 / double(count - 1) : 0.0; }

    [[nodiscard]] MCEstimate estimate(std::uint64_t seed) const
    {
        return {mean, count > 0 ? std::sqrt(variance() / double(count)) : 0.0, count, seed};
    }
};

inline MCEstimate estimate_from_values(const std::vector<double>& values, std::uint64_t seed)
{
    MomentAccumulator acc;
    for (double v : values)
        acc.add(v);
    return acc.estimate(seed);
}

//---------------------------------------------------------------------------//
// Parallel drivers
//---------------------------------------------------------------------------//
inline constexpr std::uint64_t kBlockSize = 4096;

/// Worker count from CORANK_WORKERS (positive integer), else all cores.
inline int worker_count()
{
    if (const char* env = std::getenv("CORANK_WORKERS"); env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v < 1)
            throw DomainError(std::string("CORANK_WORKERS must be a positive integer, got '") + env + "'");
        return int(std::min<long>(v, 1024));
    }
    return int(std::max(1u, std::thread::hardware_concurrency()));
}

/// Calls block_fn(block_index, first_sample, count, rng) for every block,
/// spread over worker threads.  block_fn must only write to state owned by
/// its block.
template <class BlockFn>
void for_each_block(std::uint64_t samples, std::uint64_t seed, BlockFn&& block_fn, int workers = 0)
{
    const std::uint64_t blocks = (samples + kBlockSize - 1) / kBlockSize;
    if (blocks == 0)
        return;
    if (workers <= 0)
        workers = worker_count();
    workers = int(std::min<std::uint64_t>(std::uint64_t(workers), blocks));

    auto run_block = [&](std::uint64_t b) {
        CounterRng rng(seed, b);
        const std::uint64_t first = b * kBlockSize;
        block_fn(b, first, std::min(kBlockSize, samples - first), rng);
    };
    if (workers == 1) {
        for (std::uint64_t b = 0; b < blocks; ++b)
            run_block(b);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::uint64_t b = next++; b < blocks; b = next++)
                run_block(b);
        });
    for (auto& t : pool)
        t.join();
}

/// Mean and standard error of fn(rng) over `samples` draws.
template <class Fn>
MCEstimate monte_carlo_mean(std::uint64_t samples, std::uint64_t seed, Fn&& fn, int workers = 0)
{
    const std::uint64_t blocks = (samples + kBlockSize - 1) / kBlockSize;
    std::vector<MomentAccumulator> partial(blocks);
    for_each_block(
        samples, seed,
        [&](std::uint64_t b, std::uint64_t, std::uint64_t count, CounterRng& rng) {
            MomentAccumulator acc;
            for (std::uint64_t i = 0; i < count; ++i)
                acc.add(fn(rng));
            partial[b] = acc;
        },
        workers);
    MomentAccumulator total;
    for (const auto& p : partial)
        total.merge(p);
    return total.estimate(seed);
}

/// Per-sample values of fn(rng), in sample order.  Used when several
/// statistics must share the same draws (common random numbers).
template <class T, class Fn>
std::vector<T> sample_map(std::uint64_t samples, std::uint64_t seed, Fn&& fn, int workers = 0)
{
    std::vector<T> out(samples);
    for_each_block(
        samples, seed,
        [&](std::uint64_t, std::uint64_t first, std::uint64_t count, CounterRng& rng) {
            for (std::uint64_t i = 0; i < count; ++i)
                out[first + i] = fn(rng);
        },
        workers);
    return out;
}

inline void require_samples(std::uint64_t samples, std::uint64_t minimum, const char* what)
{
    if (samples < minimum)
        throw DomainError(std::string(what) + ": need at least " + std::to_string(minimum) +
                          " samples, got " + std::to_string(samples));
}

} // namespace corank
