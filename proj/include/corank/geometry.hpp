#pragma once

// Tube geometry around the corank strata: Eckart-Young distances, tube
// fractions on the sphere, and the cone/cylinder correction factor.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "corank/closed_form.hpp"
#include "corank/errors.hpp"
#include "corank/linalg.hpp"
#include "corank/montecarlo.hpp"
#include "corank/rmt.hpp"
#include "corank/specfun.hpp"

namespace corank {

/// Frobenius distance from Q to the matrices of corank >= mu: the root of
/// the sum of the mu smallest squared singular values.
inline double dist_to_corank(const DenseMatrix& q, int mu) { return std::sqrt(smallest_squares_sum(q, mu)); }

/// Distance within Sym(n, R): the mu smallest squared eigenvalues.
inline double dist_to_corank(const SymmetricMatrix& q, int mu) { return std::sqrt(smallest_squares_sum(q, mu)); }

inline double dist_to_corank(const DenseMatrix& q, int mu, const MatrixSpace& space)
{
    if (space.kind != SpaceKind::RealGeneral || space.n != q.n())
        throw DomainError("dist_to_corank: dense matrix of size " + std::to_string(q.n()) +
                          " does not belong to space " + to_string(space.kind) + "(n=" + std::to_string(space.n) +
                          ")");
    space.check_mu(mu);
    return dist_to_corank(q, mu);
}

inline double dist_to_corank(const SymmetricMatrix& q, int mu, const MatrixSpace& space)
{
    if (space.kind != SpaceKind::RealSymmetric || space.n != q.n())
        throw DomainError("dist_to_corank: symmetric matrix of size " + std::to_string(q.n()) +
                          " does not belong to space " + to_string(space.kind) + "(n=" + std::to_string(space.n) +
                          ")");
    space.check_mu(mu);
    return dist_to_corank(q, mu);
}

struct TubeQuery
{
    MatrixSpace space;
    int mu = 1;
    double eps = 0.1;

    TubeQuery(MatrixSpace s, int m, double e) : space(s), mu(m), eps(e)
    {
        if (is_complex(s.kind))
            throw DomainError("TubeQuery: only real spaces are sampled");
        s.check_mu(m);
        if (!(e > 0.0) || e > 1.0)
            throw DomainError("TubeQuery: eps must lie in (0, 1]");
    }
};

/// Fraction of the sphere within angular-sine distance eps of the stratum:
/// P{dist(Q, corank mu)^2 <= eps^2 |Q|^2} for Gaussian Q.  entry_scale
/// multiplies every sampled entry and cannot change the result.
inline MCEstimate tube_fraction(const TubeQuery& q, std::uint64_t samples, std::uint64_t seed,
                                double entry_scale = 1.0)
{
    require_samples(samples, 1, "tube_fraction");
    const double s2 = entry_scale * entry_scale;
    const auto stats = sample_corank_statistics(q.space, q.mu, samples, seed);
    std::uint64_t hits = 0;
    for (const auto& s : stats)
        hits += s.small * s2 <= q.eps * q.eps * (s.norm2 * s2);
    return binomial_estimate(hits, samples, seed);
}

/// 2^{c/2} Gamma(N/2) / Gamma((N-c)/2): the ratio of cone to cylinder
/// neighbourhood probabilities of a codimension-c cone in R^N.
inline LogValue cone_cylinder_factor(long N, long c)
{
    if (c <= 0 || c >= N)
        throw DomainError("cone_cylinder_factor: need 0 < c < N, got N=" + std::to_string(N) +
                          " c=" + std::to_string(c));
    return LogValue(0.5 * double(c) * std::numbers::ln2 + ln_gamma(0.5 * double(N)) - ln_gamma(0.5 * double(N - c)));
}

struct ConeCylinderResult
{
    MCEstimate ratio; ///< P{cone} / P{cylinder}, delta-method stderr
    MCEstimate cone;
    MCEstimate cylinder;
    double expected = 0.0;
};

/// P{dist <= eps |Q|} / P{dist <= eps} from one set of samples.
inline ConeCylinderResult cone_cylinder_ratio(const MatrixSpace& space, int mu, double eps, std::uint64_t samples,
                                              std::uint64_t seed)
{
    if (!(eps > 0.0))
        throw DomainError("cone_cylinder_ratio: eps must be > 0");
    require_samples(samples, 100, "cone_cylinder_ratio");
    const auto stats = sample_corank_statistics(space, mu, samples, seed);
    std::uint64_t na = 0, nb = 0;
    for (const auto& s : stats) {
        na += s.small <= eps * eps * s.norm2;
        nb += s.small <= eps * eps;
    }
    if (na == 0 || nb == 0)
        throw NumericError("cone_cylinder_ratio: no hits at eps=" + std::to_string(eps) + "; increase samples");
    const double S = double(samples);
    const double A = double(na) / S;
    const double B = double(nb) / S;
    const double r = A / B;
    MomentAccumulator acc;
    for (const auto& s : stats) {
        const double a = s.small <= eps * eps * s.norm2 ? 1.0 : 0.0;
        const double b = s.small <= eps * eps ? 1.0 : 0.0;
        acc.add(a - r * b);
    }
    ConeCylinderResult out;
    out.ratio = {r, std::sqrt(acc.variance() / S) / B, samples, seed};
    out.cone = binomial_estimate(na, samples, seed);
    out.cylinder = binomial_estimate(nb, samples, seed);
    out.expected = cone_cylinder_factor(space.N(), space.c(mu)).value();
    return out;
}

struct TubeVolumeResult
{
    MCEstimate ratio; ///< estimate of |Sigma^mu cap V| / |S^{N-c-1}|
    LimitRatio fit;   ///< extrapolation of the tube fraction / eps^c
};

/// Volume ratio from tube fractions: |Sigma| = c |S^{N-1}| a / |S^{c-1}|
/// with a = lim P{A_mu(eps)} / eps^c, divided by |S^{N-c-1}|.
inline TubeVolumeResult intrinsic_volume_via_tube(const MatrixSpace& space, int mu, const std::vector<double>& eps_grid,
                                                  std::uint64_t samples, std::uint64_t seed)
{
    detail::check_eps_grid(eps_grid, 4, 0.5, "intrinsic_volume_via_tube");
    const long N = space.N();
    const long c = space.c(mu);
    if (N - c - 1 < 0)
        throw DomainError("intrinsic_volume_via_tube: stratum is empty on the sphere");
    const auto stats = sample_corank_statistics(space, mu, samples, seed);
    LimitRatio fit = fit_limit_ratio(
        stats.size(), [&](std::size_t i) { return stats[i].small / stats[i].norm2; }, c, eps_grid, seed);
    if (!(fit.intercept.mean > 0.0) || fit.intercept.stderr_ > fit.intercept.mean) {
        std::ostringstream os;
        os << "intrinsic_volume_via_tube: ill-conditioned extrapolation (intercept " << fit.intercept.mean << " +- "
           << fit.intercept.stderr_ << ");";
        for (const auto& p : fit.points)
            os << " eps=" << p.eps << ": p=" << p.probability.mean << "+-" << p.probability.stderr_;
        throw NumericError(os.str());
    }
    const double factor = std::exp(std::log(double(c)) + ln_sphere_volume(int(N - 1)).ln() -
                                   ln_sphere_volume(int(c - 1)).ln() - ln_sphere_volume(int(N - c - 1)).ln());
    MCEstimate r = fit.intercept;
    r.mean *= factor;
    r.stderr_ *= factor;
    return {r, fit};
}

} // namespace corank
