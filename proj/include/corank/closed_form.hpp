#pragma once

// Closed-form degrees, volume ratios, normalization constants and GOE
// determinant moments for the corank strata of the four matrix spaces.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>

#include "corank/errors.hpp"
#include "corank/montecarlo.hpp"
#include "corank/specfun.hpp"

namespace corank {

using BigInt = boost::multiprecision::cpp_int;

enum class SpaceKind { RealGeneral, RealSymmetric, ComplexGeneral, ComplexSymmetric };

inline std::string to_string(SpaceKind k)
{
    switch (k) {
    case SpaceKind::RealGeneral: return "real";
    case SpaceKind::RealSymmetric: return "sym";
    case SpaceKind::ComplexGeneral: return "complex";
    case SpaceKind::ComplexSymmetric: return "complex-sym";
    }
    return "?";
}

inline SpaceKind parse_space(const std::string& s)
{
    if (s == "real")
        return SpaceKind::RealGeneral;
    if (s == "sym")
        return SpaceKind::RealSymmetric;
    if (s == "complex")
        return SpaceKind::ComplexGeneral;
    if (s == "complex-sym")
        return SpaceKind::ComplexSymmetric;
    throw DomainError("unknown space '" + s + "' (expected real|sym|complex|complex-sym)");
}

inline bool is_symmetric(SpaceKind k) { return k == SpaceKind::RealSymmetric || k == SpaceKind::ComplexSymmetric; }
inline bool is_complex(SpaceKind k) { return k == SpaceKind::ComplexGeneral || k == SpaceKind::ComplexSymmetric; }

/// One of the four ambient spaces at size n.
struct MatrixSpace
{
    SpaceKind kind = SpaceKind::RealGeneral;
    int n = 1;

    MatrixSpace() = default;
    MatrixSpace(SpaceKind k, int size) : kind(k), n(size)
    {
        if (size < 1)
            throw DomainError("MatrixSpace: n must be >= 1, got " + std::to_string(size));
    }

    /// Real dimension of the size-m space of this kind.
    [[nodiscard]] static long dimension(SpaceKind k, long m)
    {
        const long base = is_symmetric(k) ? m * (m + 1) / 2 : m * m;
        return is_complex(k) ? 2 * base : base;
    }

    /// Ambient real dimension N.
    [[nodiscard]] long N() const { return dimension(kind, n); }

    /// Real codimension of the corank-mu stratum; independent of n.
    [[nodiscard]] long c(int mu) const
    {
        check_mu(mu);
        return dimension(kind, mu);
    }

    void check_mu(int mu) const
    {
        if (mu < 1 || mu > n)
            throw DomainError("corank mu must satisfy 1 <= mu <= n, got n=" + std::to_string(n) +
                              " mu=" + std::to_string(mu));
    }
};

/// A structure constant or moment: exact, or a Monte Carlo estimate.
struct ConstantEstimate
{
    double value = 0.0;
    double stderr_ = 0.0;
    bool exact = true;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    static ConstantEstimate exact_value(double v) { return {v, 0.0, true, 0, 0}; }
    static ConstantEstimate from(const MCEstimate& e) { return {e.mean, e.stderr_, false, e.samples, e.seed}; }

    [[nodiscard]] double relative_stderr() const { return exact ? 0.0 : stderr_ / value; }
};

/// Leading tube coefficient normalization.  Weyl uses the volume of the
/// c-ball, eps^c |S^{c-1}| / c; AsPublished keeps the published prefactor
/// 2^{c/2-1} Gamma(c/2), which is smaller by a factor c.  The two agree
/// whenever c = 1.
enum class TubeNormalization { Weyl, AsPublished };

/// |Sigma^mu cap V| / |S^{N-c-1}|.
struct VolumeRatio
{
    LogValue value;
    std::optional<double> relative_stderr; ///< present iff an input was estimated
    MatrixSpace space;
    int mu = 1;
    TubeNormalization normalization = TubeNormalization::Weyl;

    [[nodiscard]] std::optional<double> stderr_value() const
    {
        if (!relative_stderr)
            return std::nullopt;
        return *relative_stderr * value.value();
    }
};

//---------------------------------------------------------------------------//
// Big integers
//---------------------------------------------------------------------------//

namespace detail {

inline BigInt range_product(long lo, long hi)
{
    BigInt p = 1;
    for (long j = lo; j <= hi; ++j)
        p *= j;
    return p;
}

inline BigInt binomial_big(long n, long k)
{
    if (k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    BigInt c = 1;
    for (long i = 1; i <= k; ++i)
        c = c * (n - k + i) / i;
    return c;
}

inline BigInt exact_quotient(const BigInt& num, const BigInt& den, const char* what)
{
    BigInt q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (r != 0 || q <= 0)
        throw InternalError(std::string(what) + ": product is not a positive integer");
    return q;
}

} // namespace detail

/// Natural log of a positive big integer.
inline double ln_big(const BigInt& x)
{
    if (x <= 0)
        throw DomainError("ln_big: argument must be positive");
    const auto bits = long(boost::multiprecision::msb(x));
    if (bits < 900)
        return std::log(x.convert_to<double>());
    const long shift = bits - 900;
    const BigInt top = x >> shift;
    return std::log(top.convert_to<double>()) + double(shift) * std::numbers::ln2;
}

/// Degree of the corank-mu stratum of n x n complex matrices:
/// prod_{k<mu} (n+k)! k! / ((n-mu+k)! (mu+k)!).
inline BigInt complex_degree(int n, int mu)
{
    MatrixSpace(SpaceKind::ComplexGeneral, n).check_mu(mu);
    BigInt num = 1, den = 1;
    for (long k = 0; k < mu; ++k) {
        num *= detail::range_product(n - mu + k + 1, n + k);
        den *= detail::range_product(k + 1, mu + k);
    }
    return detail::exact_quotient(num, den, "complex_degree");
}

/// Degree of the corank-mu stratum of complex symmetric matrices:
/// prod_{k<mu} C(n+k, mu-k) / C(2k+1, k).
inline BigInt complex_sym_degree(int n, int mu)
{
    MatrixSpace(SpaceKind::ComplexSymmetric, n).check_mu(mu);
    BigInt num = 1, den = 1;
    for (long k = 0; k < mu; ++k) {
        num *= detail::binomial_big(n + k, mu - k);
        den *= detail::binomial_big(2 * k + 1, k);
    }
    return detail::exact_quotient(num, den, "complex_sym_degree");
}

/// ln complex_degree through ln_gamma; an independent floating route.
inline double ln_complex_degree(int n, int mu)
{
    MatrixSpace(SpaceKind::ComplexGeneral, n).check_mu(mu);
    double s = 0.0;
    for (int k = 0; k < mu; ++k)
        s += ln_gamma(n + k + 1.0) + ln_gamma(k + 1.0) - ln_gamma(n - mu + k + 1.0) - ln_gamma(mu + k + 1.0);
    return s;
}

//---------------------------------------------------------------------------//
// Normalization constants and moments
//---------------------------------------------------------------------------//

/// C(n), with C(n)^{-1} = 2^{n^2/2} pi^{-n/2} prod_{j<=n} Gamma(j/2) Gamma(j/2+1);
/// the normalization of the singular-value density of n x n Ginibre.
inline LogValue selberg_C(int n)
{
    if (n < 1)
        throw DomainError("selberg_C: n must be >= 1");
    double inv = 0.5 * double(n) * double(n) * std::numbers::ln2 - 0.5 * n * std::log(std::numbers::pi);
    for (int j = 1; j <= n; ++j)
        inv += ln_gamma(0.5 * j) + ln_gamma(0.5 * j + 1.0);
    return LogValue(-inv);
}

/// C_1(n) = (2 pi)^{-n/2} prod_{j<=n} Gamma(3/2) / Gamma(1+j/2); the GOE(n)
/// eigenvalue density normalization.  C_1(0) = 1.
inline LogValue selberg_C1(int n)
{
    if (n < 0)
        throw DomainError("selberg_C1: n must be >= 0");
    double s = -0.5 * n * std::log(2.0 * std::numbers::pi);
    for (int j = 1; j <= n; ++j)
        s += ln_gamma(1.5) - ln_gamma(1.0 + 0.5 * j);
    return LogValue(s);
}

/// E |det Q|^mu for Q in GOE(k), k = 2m+1 odd.
inline LogValue goe_abs_det_moment(int k, int mu)
{
    if (mu < 1)
        throw DomainError("goe_abs_det_moment: mu must be >= 1");
    if (k < 1 || k % 2 == 0)
        throw MomentUnavailable("goe_abs_det_moment: closed form needs odd k >= 1, got k=" + std::to_string(k) +
                                "; use the Monte Carlo estimator estimate_abs_det_moment");
    const int m = (k - 1) / 2;
    double s = ln_gamma(0.5 * (mu + 1)) + 0.5 * (mu + 1) * std::numbers::ln2 -
               0.5 * std::log(2.0 * std::numbers::pi);
    for (int i = 0; i < m; ++i)
        s += ln_gamma(i + mu + 1.5) - ln_gamma(i + 1.5);
    return LogValue(s);
}

/// Exact I_mu where known: mu = 1 gives sqrt(pi/2), mu = 2 gives pi/16.
inline std::optional<double> known_I_mu(int mu)
{
    if (mu == 1)
        return std::sqrt(std::numbers::pi / 2.0);
    if (mu == 2)
        return std::numbers::pi / 16.0;
    return std::nullopt;
}

/// Candidate closed values of I_{1,2}.  Definition is 2^{-2} times the ball
/// integral of |l1 - l2| evaluated in polar coordinates; Published is the
/// literature value sqrt(2)/2.
enum class I12Branch { Definition, Published };

inline std::optional<double> known_I_1mu(int mu, I12Branch branch = I12Branch::Definition)
{
    if (mu == 1)
        return 1.0;
    if (mu == 2)
        return branch == I12Branch::Definition ? std::numbers::sqrt2 / 3.0 : std::numbers::sqrt2 / 2.0;
    return std::nullopt;
}

//---------------------------------------------------------------------------//
// Small-ball limits and volume ratios
//---------------------------------------------------------------------------//

/// lim g_mu(eps) / eps^{mu^2} for n x n Ginibre: the probability that a fixed
/// set of mu singular values lies in the eps-ball.
inline LogValue real_gap_limit(int n, int mu, double I_mu)
{
    MatrixSpace(SpaceKind::RealGeneral, n).check_mu(mu);
    double s = std::log(I_mu);
    for (int j = 1; j <= n - mu; ++j)
        s += ln_gamma(0.5 * j + 1.0) + ln_gamma(0.5 * j + mu);
    for (int j = 1; j <= n; ++j)
        s -= ln_gamma(0.5 * j) + ln_gamma(0.5 * j + 1.0);
    return LogValue(s);
}

/// lim g_mu(eps) / eps^{mu(mu+1)/2} for GOE(n), given E|det GOE(n-mu)|^mu.
inline LogValue sym_gap_limit(int n, int mu, double I_1mu, LogValue det_moment)
{
    MatrixSpace(SpaceKind::RealSymmetric, n).check_mu(mu);
    return LogValue(mu * std::numbers::ln2 + std::log(I_1mu) + selberg_C1(n).ln() - selberg_C1(n - mu).ln() +
                    det_moment.ln());
}

/// Closed-form E|det GOE(n-mu)|^mu when available (n-mu odd, or n = mu).
inline std::optional<LogValue> closed_det_moment(int n, int mu)
{
    const int k = n - mu;
    if (k == 0)
        return LogValue(0.0);
    if (k % 2 == 1)
        return goe_abs_det_moment(k, mu);
    return std::nullopt;
}

/// Factor turning C(n,mu) * lim g_mu / eps^c into the volume ratio.
inline double ln_tube_prefactor(long c, TubeNormalization norm)
{
    const double h = 0.5 * double(c);
    return norm == TubeNormalization::Weyl ? h * std::numbers::ln2 + ln_gamma(h + 1.0)
                                           : (h - 1.0) * std::numbers::ln2 + ln_gamma(h);
}

inline VolumeRatio real_volume_ratio(int n, int mu, const ConstantEstimate& I_mu,
                                     TubeNormalization norm = TubeNormalization::Weyl)
{
    const MatrixSpace space(SpaceKind::RealGeneral, n);
    const long c = space.c(mu);
    if (!(I_mu.value > 0.0))
        throw DomainError("real_volume_ratio: I_mu must be positive");
    const double ln = ln_tube_prefactor(c, norm) + ln_binomial(n, mu) + real_gap_limit(n, mu, I_mu.value).ln();
    VolumeRatio r{LogValue(ln), std::nullopt, space, mu, norm};
    if (!I_mu.exact)
        r.relative_stderr = I_mu.relative_stderr();
    return r;
}

/// The symmetric ratio through the GOE determinant moment.  For even n - mu
/// the moment must be supplied (e.g. from estimate_abs_det_moment).
inline VolumeRatio sym_volume_ratio(int n, int mu, const ConstantEstimate& I_1mu,
                                    std::optional<ConstantEstimate> det_moment = std::nullopt,
                                    TubeNormalization norm = TubeNormalization::Weyl)
{
    const MatrixSpace space(SpaceKind::RealSymmetric, n);
    const long c = space.c(mu);
    if (!(I_1mu.value > 0.0))
        throw DomainError("sym_volume_ratio: I_{1,mu} must be positive");
    ConstantEstimate moment = ConstantEstimate::exact_value(1.0);
    LogValue ln_moment;
    if (!det_moment) {
        const auto closed = closed_det_moment(n, mu);
        if (!closed)
            throw MomentUnavailable("sym_volume_ratio: E|det GOE(" + std::to_string(n - mu) + ")|^" +
                                    std::to_string(mu) +
                                    " has no closed form for even n - mu; supply a Monte Carlo moment");
        ln_moment = *closed;
    } else {
        moment = *det_moment;
        if (!(moment.value > 0.0))
            throw DomainError("sym_volume_ratio: determinant moment must be positive");
        ln_moment = LogValue::from_value(moment.value);
    }
    const double ln =
        ln_tube_prefactor(c, norm) + ln_binomial(n, mu) + sym_gap_limit(n, mu, I_1mu.value, ln_moment).ln();
    VolumeRatio r{LogValue(ln), std::nullopt, space, mu, norm};
    if (!I_1mu.exact || !moment.exact)
        r.relative_stderr = std::hypot(I_1mu.relative_stderr(), moment.relative_stderr());
    return r;
}

/// Complex strata: the ratio is the degree.
inline VolumeRatio complex_volume_ratio(SpaceKind kind, int n, int mu)
{
    if (!is_complex(kind))
        throw DomainError("complex_volume_ratio: space must be complex");
    const BigInt d = kind == SpaceKind::ComplexGeneral ? complex_degree(n, mu) : complex_sym_degree(n, mu);
    return {LogValue(ln_big(d)), std::nullopt, MatrixSpace(kind, n), mu, TubeNormalization::Weyl};
}

/// |Sigma^mu cap V| = ratio * |S^{N-c-1}|.
inline LogValue absolute_volume(const VolumeRatio& r)
{
    const long d = r.space.N() - r.space.c(r.mu) - 1;
    if (d < 0)
        throw DomainError("absolute_volume: stratum is empty on the sphere (N - c - 1 = " + std::to_string(d) + ")");
    return r.value * ln_sphere_volume(int(d));
}

/// C(n, mu) * lim g_mu / eps^c = lim p_mu(eps) / eps^c.
inline LogValue small_ball_limit(SpaceKind kind, int n, int mu, double structure_constant,
                                 std::optional<double> det_moment = std::nullopt)
{
    if (kind == SpaceKind::RealGeneral)
        return LogValue(ln_binomial(n, mu)) * real_gap_limit(n, mu, structure_constant);
    if (kind == SpaceKind::RealSymmetric) {
        LogValue m;
        if (det_moment)
            m = LogValue::from_value(*det_moment);
        else if (const auto closed = closed_det_moment(n, mu))
            m = *closed;
        else
            throw MomentUnavailable("small_ball_limit: even n - mu needs a supplied determinant moment");
        return LogValue(ln_binomial(n, mu)) * sym_gap_limit(n, mu, structure_constant, m);
    }
    throw DomainError("small_ball_limit: only real spaces have a Gaussian small-ball model here");
}

} // namespace corank
