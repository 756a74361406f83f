#pragma once

// The structure constants I_mu and I_{1,mu}: Vandermonde-type integrals over
// the unit ball, by Monte Carlo and by deterministic grid quadrature.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "corank/errors.hpp"
#include "corank/montecarlo.hpp"
#include "corank/specfun.hpp"

namespace corank {

/// Uniform point in the unit ball of R^dim: Gaussian direction times U^{1/dim}.
/// positive_orthant folds onto R^dim_+ by absolute values.
inline void sample_unit_ball(int dim, bool positive_orthant, CounterRng& rng, double* out)
{
    double norm2 = 0.0;
    for (int i = 0; i < dim; ++i) {
        out[i] = rng.normal();
        norm2 += out[i] * out[i];
    }
    const double r = std::pow(rng.uniform(), 1.0 / dim) / std::sqrt(norm2);
    for (int i = 0; i < dim; ++i)
        out[i] = positive_orthant ? std::abs(out[i] * r) : out[i] * r;
}

inline std::vector<double> sample_unit_ball(int dim, bool positive_orthant, CounterRng& rng)
{
    if (dim < 1)
        throw DomainError("sample_unit_ball: dim must be >= 1");
    std::vector<double> x(static_cast<std::size_t>(dim));
    sample_unit_ball(dim, positive_orthant, rng, x.data());
    return x;
}

/// Volume of the unit ball in R^d.
inline double ln_ball_volume(int d) { return 0.5 * d * std::log(std::numbers::pi) - ln_gamma(0.5 * d + 1.0); }

/// prod_{i<j} |x_i^2 - x_j^2|
inline double vandermonde_squares(const double* x, int m)
{
    double p = 1.0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            p *= std::abs(x[i] * x[i] - x[j] * x[j]);
    return p;
}

/// prod_{i<j} |x_i - x_j|
inline double vandermonde(const double* x, int m)
{
    double p = 1.0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            p *= std::abs(x[i] - x[j]);
    return p;
}

/// Sampling variants used by the invariance checks; all estimate the same
/// integral.  Antithetic averages each draw with its image under a sign flip
/// of the first coordinate; Reversed fills coordinates in reverse order.
enum class BallSampling { Plain, Antithetic, Reversed };

namespace detail {

constexpr int kMaxStructureMu = 16;

inline void check_structure_args(int mu, std::uint64_t samples, const char* what)
{
    if (mu < 1 || mu > kMaxStructureMu)
        throw DomainError(std::string(what) + ": mu must be in [1, " + std::to_string(kMaxStructureMu) + "]");
    require_samples(samples, 100, what);
}

template <class Integrand>
MCEstimate ball_mean(int mu, bool orthant, std::uint64_t samples, std::uint64_t seed, BallSampling variant,
                     Integrand f)
{
    return monte_carlo_mean(samples, seed, [&](CounterRng& rng) {
        double x[kMaxStructureMu] = {};
        sample_unit_ball(mu, orthant, rng, x);
        if (variant == BallSampling::Reversed)
            for (int i = 0; i < mu / 2; ++i)
                std::swap(x[i], x[mu - 1 - i]);
        double v = f(x, mu);
        if (variant == BallSampling::Antithetic) {
            x[0] = -x[0];
            v = 0.5 * (v + f(x, mu));
        }
        return v;
    });
}

inline MCEstimate scaled(MCEstimate e, double factor)
{
    e.mean *= factor;
    e.stderr_ *= factor;
    return e;
}

} // namespace detail

/// I_mu = pi^{mu/2} 2^{-mu^2/2} int_{B cap R^mu_+} prod_{i<j} |s_i^2 - s_j^2| ds.
inline MCEstimate I_mu(int mu, std::uint64_t samples, std::uint64_t seed, BallSampling variant = BallSampling::Plain)
{
    detail::check_structure_args(mu, samples, "I_mu");
    if (mu == 1)
        return {std::sqrt(std::numbers::pi / 2.0), 0.0, samples, seed};
    const double factor = std::exp(0.5 * mu * std::log(std::numbers::pi) - 0.5 * mu * mu * std::numbers::ln2 +
                                   ln_ball_volume(mu) - mu * std::numbers::ln2);
    return detail::scaled(detail::ball_mean(mu, true, samples, seed, variant, vandermonde_squares), factor);
}

/// I_{1,mu} = 2^{-mu} int_{B cap R^mu} prod_{i<j} |l_i - l_j| dl.
inline MCEstimate I_1mu(int mu, std::uint64_t samples, std::uint64_t seed, BallSampling variant = BallSampling::Plain)
{
    detail::check_structure_args(mu, samples, "I_1mu");
    if (mu == 1)
        return {1.0, 0.0, samples, seed};
    const double factor = std::exp(ln_ball_volume(mu) - mu * std::numbers::ln2);
    return detail::scaled(detail::ball_mean(mu, false, samples, seed, variant, vandermonde), factor);
}

/// Midpoint-rule tensor-grid quadrature of the same integrals, mu <= 3.
/// `points` is the number of cells per axis over [-1,1] (or [0,1] for the
/// orthant).  The error estimate is the difference from a half-resolution
/// grid.
struct QuadratureResult
{
    double value = 0.0;
    double error_estimate = 0.0;
    long points_per_axis = 0;
};

namespace detail {

template <class Integrand>
double grid_integral(int mu, bool orthant, long points, Integrand f)
{
    const double lo = orthant ? 0.0 : -1.0;
    const double h = (1.0 - lo) / double(points);
    double x[3];
    double sum = 0.0;
    auto mid = [&](long i) { return lo + (double(i) + 0.5) * h; };
    if (mu == 1) {
        for (long i = 0; i < points; ++i) {
            x[0] = mid(i);
            sum += f(x, 1);
        }
    } else if (mu == 2) {
        for (long i = 0; i < points; ++i) {
            x[0] = mid(i);
            double row = 0.0;
            for (long j = 0; j < points; ++j) {
                x[1] = mid(j);
                if (x[0] * x[0] + x[1] * x[1] <= 1.0)
                    row += f(x, 2);
            }
            sum += row;
        }
    } else {
        for (long i = 0; i < points; ++i) {
            x[0] = mid(i);
            for (long j = 0; j < points; ++j) {
                x[1] = mid(j);
                const double r2 = x[0] * x[0] + x[1] * x[1];
                if (r2 > 1.0)
                    continue;
                for (long k = 0; k < points; ++k) {
                    x[2] = mid(k);
                    if (r2 + x[2] * x[2] <= 1.0)
                        sum += f(x, 3);
                }
            }
        }
    }
    return sum * std::pow(h, mu);
}

template <class Integrand>
QuadratureResult grid_quadrature(int mu, bool orthant, long points, double factor, Integrand f)
{
    if (mu < 1 || mu > 3)
        throw DomainError("grid quadrature supports mu in {1,2,3}");
    if (points < 4)
        throw DomainError("grid quadrature needs at least 4 points per axis");
    const double fine = factor * grid_integral(mu, orthant, points, f);
    const double coarse = factor * grid_integral(mu, orthant, points / 2, f);
    return {fine, std::abs(fine - coarse), points};
}

} // namespace detail

inline QuadratureResult I_mu_quadrature(int mu, long points)
{
    const double factor = std::exp(0.5 * mu * std::log(std::numbers::pi) - 0.5 * mu * mu * std::numbers::ln2);
    return detail::grid_quadrature(mu, true, points, factor, vandermonde_squares);
}

inline QuadratureResult I_1mu_quadrature(int mu, long points)
{
    return detail::grid_quadrature(mu, false, points, std::ldexp(1.0, -mu), vandermonde);
}

} // namespace corank
