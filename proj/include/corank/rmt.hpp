#pragma once

// Random-matrix samplers and Monte Carlo estimators: small-ball
// probabilities, their eps -> 0 limit, GOE determinant moments and Selberg
// normalizations.
//
// Scale convention: Ginibre entries are N(0,1); GOE has N(0,1) diagonal and
// N(0,1/2) off-diagonal entries.  Both are the standard Gaussian for the
// Frobenius inner product, which is the convention of the spectral densities
// normalized by selberg_C and selberg_C1.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "corank/closed_form.hpp"
#include "corank/errors.hpp"
#include "corank/linalg.hpp"
#include "corank/montecarlo.hpp"
#include "corank/structure_constants.hpp"

namespace corank {

inline DenseMatrix sample_ginibre(int n, CounterRng& rng)
{
    DenseMatrix q(n);
    for (double& x : q.data())
        x = rng.normal();
    return q;
}

inline SymmetricMatrix sample_goe(int n, CounterRng& rng)
{
    SymmetricMatrix q(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            q(i, j) = i == j ? rng.normal() : rng.normal() * (1.0 / std::numbers::sqrt2);
    return q;
}

/// Sum of the mu smallest squared singular values.
inline double smallest_squares_sum(const DenseMatrix& q, int mu)
{
    if (mu < 1 || mu > q.n())
        throw DomainError("smallest_squares_sum: need 1 <= mu <= n");
    Spectrum s = singular_values(q);
    double t = 0.0;
    for (int i = 0; i < mu; ++i)
        t += s.values[std::size_t(i)] * s.values[std::size_t(i)];
    return t;
}

/// Sum of the mu smallest squared eigenvalues.
inline double smallest_squares_sum(const SymmetricMatrix& q, int mu)
{
    if (mu < 1 || mu > q.n())
        throw DomainError("smallest_squares_sum: need 1 <= mu <= n");
    Spectrum s = eigenvalues_sym(q);
    for (double& x : s.values)
        x *= x;
    std::partial_sort(s.values.begin(), s.values.begin() + mu, s.values.end());
    double t = 0.0;
    for (int i = 0; i < mu; ++i)
        t += s.values[std::size_t(i)];
    return t;
}

/// One Gaussian sample of the space; returns (sum of mu smallest squared
/// spectrum values, squared Frobenius norm).
struct CorankSample
{
    double small = 0.0;
    double norm2 = 0.0;
};

namespace detail {

inline void require_real(const MatrixSpace& space, const char* what)
{
    if (is_complex(space.kind))
        throw DomainError(std::string(what) + ": only RealGeneral and RealSymmetric spaces are sampled");
}

} // namespace detail

inline CorankSample sample_corank_statistic(const MatrixSpace& space, int mu, CounterRng& rng)
{
    if (space.kind == SpaceKind::RealGeneral) {
        const DenseMatrix q = sample_ginibre(space.n, rng);
        const double f = q.frobenius();
        return {smallest_squares_sum(q, mu), f * f};
    }
    const SymmetricMatrix q = sample_goe(space.n, rng);
    const double f = q.frobenius();
    return {smallest_squares_sum(q, mu), f * f};
}

inline std::vector<CorankSample> sample_corank_statistics(const MatrixSpace& space, int mu, std::uint64_t samples,
                                                          std::uint64_t seed)
{
    detail::require_real(space, "sample_corank_statistics");
    space.check_mu(mu);
    return sample_map<CorankSample>(samples, seed,
                                    [&](CounterRng& rng) { return sample_corank_statistic(space, mu, rng); });
}

/// Binomial estimate of P{indicator} from a count.
inline MCEstimate binomial_estimate(std::uint64_t hits, std::uint64_t samples, std::uint64_t seed)
{
    const double p = double(hits) / double(samples);
    return {p, std::sqrt(p * (1.0 - p) / double(samples)), samples, seed};
}

/// p_mu(eps): probability that the mu smallest squared spectrum values of a
/// Gaussian matrix sum to at most eps^2.
inline MCEstimate estimate_small_ball(const MatrixSpace& space, int mu, double eps, std::uint64_t samples,
                                      std::uint64_t seed)
{
    if (!(eps > 0.0))
        throw DomainError("estimate_small_ball: eps must be > 0");
    require_samples(samples, 1, "estimate_small_ball");
    const auto stats = sample_corank_statistics(space, mu, samples, seed);
    std::uint64_t hits = 0;
    for (const auto& s : stats)
        hits += s.small <= eps * eps;
    return binomial_estimate(hits, samples, seed);
}

/// p_mu over a grid of eps, all from the same samples.
inline std::vector<MCEstimate> small_ball_curve(const std::vector<CorankSample>& stats,
                                                const std::vector<double>& eps_grid, std::uint64_t seed)
{
    std::vector<MCEstimate> out;
    for (double e : eps_grid) {
        std::uint64_t hits = 0;
        for (const auto& s : stats)
            hits += s.small <= e * e;
        out.push_back(binomial_estimate(hits, stats.size(), seed));
    }
    return out;
}

struct LimitFitPoint
{
    double eps = 0.0;
    MCEstimate probability;
};

/// Result of the eps -> 0 extrapolation of p(eps) / eps^c.
struct LimitRatio
{
    MCEstimate intercept;  ///< lim p(eps) / eps^c
    double correction = 0; ///< b in p / eps^c = a + b eps^2
    double slope = 0;      ///< free weighted log-log slope of p against eps
    double slope_stderr = 0;
    long c = 0;
    std::vector<LimitFitPoint> points;
};

namespace detail {

inline void check_eps_grid(const std::vector<double>& g, std::size_t min_points, double max_eps, const char* what)
{
    if (g.size() < min_points)
        throw DomainError(std::string(what) + ": eps grid needs at least " + std::to_string(min_points) + " points");
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!(g[i] > 0.0) || g[i] > max_eps)
            throw DomainError(std::string(what) + ": eps values must lie in (0, " + std::to_string(max_eps) + "]");
        if (i > 0 && !(g[i] < g[i - 1]))
            throw DomainError(std::string(what) + ": eps grid must be strictly decreasing");
    }
}

// Weighted least squares of y_k = a + b x_k with weights w_k; returns the
// row vector L with a = sum_k L_k y_k.
inline std::vector<double> intercept_functional(const std::vector<double>& x, const std::vector<double>& w)
{
    double s0 = 0, s1 = 0, s2 = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        s0 += w[k];
        s1 += w[k] * x[k];
        s2 += w[k] * x[k] * x[k];
    }
    const double det = s0 * s2 - s1 * s1;
    if (!(std::abs(det) > 1e-300))
        throw NumericError("limit fit: design matrix is singular");
    std::vector<double> L(x.size());
    for (std::size_t k = 0; k < x.size(); ++k)
        L[k] = w[k] * (s2 - s1 * x[k]) / det;
    return L;
}

inline std::vector<double> slope_functional(const std::vector<double>& x, const std::vector<double>& w)
{
    double s0 = 0, s1 = 0, s2 = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        s0 += w[k];
        s1 += w[k] * x[k];
        s2 += w[k] * x[k] * x[k];
    }
    const double det = s0 * s2 - s1 * s1;
    std::vector<double> L(x.size());
    for (std::size_t k = 0; k < x.size(); ++k)
        L[k] = w[k] * (s0 * x[k] - s1) / det;
    return L;
}

} // namespace detail

/// Fits p(eps)/eps^c = a + b eps^2 on common-random-number estimates of
/// p(eps); `stat(i)` must return the statistic compared against eps^2 for
/// sample i.  The standard error of a comes from per-sample linear scores of
/// the fit, so it accounts for the correlation across the grid.
template <class Stat>
LimitRatio fit_limit_ratio(std::size_t samples, Stat stat, long c, const std::vector<double>& eps_grid,
                           std::uint64_t seed)
{
    const std::size_t K = eps_grid.size();
    std::vector<std::uint64_t> hits(K, 0);
    for (std::size_t i = 0; i < samples; ++i) {
        const double s = stat(i);
        for (std::size_t k = 0; k < K; ++k)
            hits[k] += s <= eps_grid[k] * eps_grid[k];
    }
    if (hits[K - 1] == 0) {
        std::ostringstream os;
        os << "insufficient samples: no hits at eps=" << eps_grid[K - 1] << " with " << samples << " samples";
        std::size_t j = K - 1;
        while (j > 0 && hits[j] == 0)
            --j;
        if (hits[j] > 0) {
            const double p_min = double(hits[j]) / double(samples) * std::pow(eps_grid[K - 1] / eps_grid[j], double(c));
            os << "; need about " << std::uint64_t(std::ceil(100.0 / p_min)) << " samples for 100 hits";
        }
        throw NumericError(os.str());
    }
    const double S = double(samples);
    std::vector<double> x(K), w(K), lx(K), ly(K), lw(K);
    LimitRatio out;
    out.c = c;
    for (std::size_t k = 0; k < K; ++k) {
        const double p = double(hits[k]) / S;
        const double ec = std::pow(eps_grid[k], double(c));
        x[k] = eps_grid[k] * eps_grid[k];
        w[k] = ec * ec * S / std::max(p * (1.0 - p), 1.0 / S);
        lx[k] = std::log(eps_grid[k]);
        ly[k] = hits[k] > 0 ? std::log(p) : 0.0;
        lw[k] = double(hits[k]) / std::max(1.0 - p, 1.0 / S);
        out.points.push_back({eps_grid[k], binomial_estimate(hits[k], samples, seed)});
    }
    const auto L = detail::intercept_functional(x, w);
    std::vector<double> coef(K);
    for (std::size_t k = 0; k < K; ++k)
        coef[k] = L[k] / std::pow(eps_grid[k], double(c));

    // a = mean_i score_i with score_i = sum_k coef_k [stat_i <= eps_k^2].
    MomentAccumulator acc;
    // The hit set of a sample is a prefix of the decreasing grid.
    std::vector<double> prefix(K + 1, 0.0);
    for (std::size_t k = 0; k < K; ++k)
        prefix[k + 1] = prefix[k] + coef[k];
    for (std::size_t i = 0; i < samples; ++i) {
        const double s = stat(i);
        std::size_t t = 0;
        while (t < K && s <= eps_grid[t] * eps_grid[t])
            ++t;
        acc.add(prefix[t]);
    }
    out.intercept = acc.estimate(seed);

    double b = 0.0;
    {
        double s0 = 0, s1 = 0, s2 = 0, t0 = 0, t1 = 0;
        for (std::size_t k = 0; k < K; ++k) {
            const double y = double(hits[k]) / S / std::pow(eps_grid[k], double(c));
            s0 += w[k];
            s1 += w[k] * x[k];
            s2 += w[k] * x[k] * x[k];
            t0 += w[k] * y;
            t1 += w[k] * x[k] * y;
        }
        b = (s0 * t1 - s1 * t0) / (s0 * s2 - s1 * s1);
    }
    out.correction = b;

    std::vector<double> fx, fy, fw;
    for (std::size_t k = 0; k < K; ++k)
        if (hits[k] > 0) {
            fx.push_back(lx[k]);
            fy.push_back(ly[k]);
            fw.push_back(lw[k]);
        }
    if (fx.size() >= 2) {
        const auto Ls = detail::slope_functional(fx, fw);
        double slope = 0.0, var = 0.0;
        for (std::size_t k = 0; k < fx.size(); ++k) {
            slope += Ls[k] * fy[k];
            var += Ls[k] * Ls[k] / fw[k];
        }
        out.slope = slope;
        out.slope_stderr = std::sqrt(var);
    }
    return out;
}

/// lim p_mu(eps) / eps^c by extrapolation over a decreasing eps grid.
inline LimitRatio estimate_limit_ratio(const MatrixSpace& space, int mu, const std::vector<double>& eps_grid,
                                       std::uint64_t samples, std::uint64_t seed)
{
    detail::check_eps_grid(eps_grid, 4, 0.5, "estimate_limit_ratio");
    const auto stats = sample_corank_statistics(space, mu, samples, seed);
    return fit_limit_ratio(
        stats.size(), [&](std::size_t i) { return stats[i].small; }, space.c(mu), eps_grid, seed);
}

/// E |det Q|^mu for Q in GOE(n), through the log-sum of |eigenvalues|.
inline MCEstimate estimate_abs_det_moment(int n, int mu, std::uint64_t samples, std::uint64_t seed)
{
    if (n < 1 || mu < 1)
        throw DomainError("estimate_abs_det_moment: need n >= 1 and mu >= 1");
    require_samples(samples, 2, "estimate_abs_det_moment");
    return monte_carlo_mean(samples, seed, [&](CounterRng& rng) {
        const Spectrum s = eigenvalues_sym(sample_goe(n, rng));
        double ln = 0.0;
        for (double l : s.values)
            ln += std::log(std::abs(l));
        return std::exp(mu * ln);
    });
}

enum class SelbergKind { SingularValue, Eigenvalue };

/// Estimates a Selberg normalization integral with N(0, I_n) sampling and
/// returns its ratio to the closed form (ideally 1).
///   SingularValue: int_{R^n_+} e^{-|s|^2/2} prod |s_i^2 - s_j^2| = 1 / C(n)
///   Eigenvalue:    int_{R^n}   e^{-|l|^2/2} prod |l_i - l_j|     = 1 / C_1(n)
inline MCEstimate selberg_mc_check(SelbergKind kind, int n, std::uint64_t samples, std::uint64_t seed)
{
    constexpr int kMaxN = 6;
    if (n < 1 || n > kMaxN)
        throw DomainError("selberg_mc_check: n must be in [1, 6]; the Vandermonde statistic's variance grows "
                          "too fast beyond that for a plain Monte Carlo check");
    require_samples(samples, 2, "selberg_mc_check");
    const double ln_gauss = 0.5 * n * std::log(2.0 * std::numbers::pi);
    const double ln_closed = kind == SelbergKind::SingularValue ? selberg_C(n).ln() : selberg_C1(n).ln();
    const double factor =
        std::exp(ln_gauss + ln_closed - (kind == SelbergKind::SingularValue ? n * std::numbers::ln2 : 0.0));
    MCEstimate e = monte_carlo_mean(samples, seed, [&](CounterRng& rng) {
        double x[kMaxN] = {};
        for (int i = 0; i < n; ++i)
            x[i] = rng.normal();
        return kind == SelbergKind::SingularValue ? vandermonde_squares(x, n) : vandermonde(x, n);
    });
    e.mean *= factor;
    e.stderr_ *= factor;
    return e;
}

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
inline double ks_statistic(std::vector<double> a, std::vector<double> b)
{
    if (a.empty() || b.empty())
        throw DomainError("ks_statistic: samples must be non-empty");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v)
            ++i;
        while (j < b.size() && b[j] <= v)
            ++j;
        d = std::max(d, std::abs(double(i) / double(a.size()) - double(j) / double(b.size())));
    }
    return d;
}

/// Critical value of the two-sample KS statistic at significance alpha.
inline double ks_critical(double alpha, std::size_t na, std::size_t nb)
{
    const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    return c * std::sqrt(double(na + nb) / (double(na) * double(nb)));
}

} // namespace corank
