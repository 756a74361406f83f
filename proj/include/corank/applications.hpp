#pragma once

// Applications: real roots of random symmetric pencils, singular points of
// random determinantal surfaces, and the leading Betti-number estimate.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "corank/closed_form.hpp"
#include "corank/errors.hpp"
#include "corank/linalg.hpp"
#include "corank/montecarlo.hpp"
#include "corank/rmt.hpp"
#include "corank/specfun.hpp"
#include "corank/sturm.hpp"

namespace corank {

struct PencilCount
{
    int n = 0;
    int real_roots = 0; ///< distinct real projective roots of det(x0 Q0 + x1 Q1)
    bool degenerate = false;
    std::string reason; ///< why a sample was flagged degenerate
};

struct PencilOptions
{
    int extra_nodes = 9;            ///< interpolation nodes beyond n + 1
    double alias_tolerance = 1e-8;  ///< bound on coefficients that must vanish
    double zero_tolerance = 1e-13;  ///< |p(+-1)| or |det Q1| below this is degenerate
    /// The coefficients carry double rounding, so a remainder below 1e-13
    /// of its dividend is a repeated root rather than two close ones.
    SturmOptions sturm{1e-28, 1e-13};
};

/// Coefficients (lowest degree first) of p(t) = det(Q0 + t Q1), scaled by a
/// positive constant.  Determinants at K roots of unity are transformed back
/// by an inverse DFT; coefficients of degree > n are the alias check.
struct PencilPolynomial
{
    std::vector<double> coefficients; ///< degree n
    double alias = 0.0;               ///< max |spurious coefficient| / max |coefficient|
};

inline PencilPolynomial pencil_polynomial(const SymmetricMatrix& q0, const SymmetricMatrix& q1,
                                          const PencilOptions& opt = {})
{
    using C = std::complex<double>;
    const int n = q0.n();
    if (q1.n() != n)
        throw DomainError("pencil_polynomial: Q0 and Q1 must have the same size");
    const int K = n + 1 + opt.extra_nodes;
    std::vector<LogDet<C>> dets(static_cast<std::size_t>(K));
    std::vector<C> m(std::size_t(n) * std::size_t(n));
    double max_ln = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < K; ++k) {
        const C w = std::polar(1.0, 2.0 * std::numbers::pi * k / K);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m[std::size_t(i * n + j)] = q0(i, j) + w * q1(i, j);
        dets[std::size_t(k)] = log_det<C>(m, n);
        max_ln = std::max(max_ln, dets[std::size_t(k)].ln_abs);
    }
    std::vector<C> v(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        const auto& d = dets[std::size_t(k)];
        v[std::size_t(k)] = std::isfinite(d.ln_abs) ? std::exp(d.ln_abs - max_ln) * d.phase : C(0);
    }
    std::vector<C> c(static_cast<std::size_t>(K));
    for (int j = 0; j < K; ++j) {
        C s = 0;
        for (int k = 0; k < K; ++k)
            s += v[std::size_t(k)] * std::polar(1.0, -2.0 * std::numbers::pi * double((long(j) * k) % K) / K);
        c[std::size_t(j)] = s / double(K);
    }
    PencilPolynomial out;
    double cmax = 0.0, spurious = 0.0;
    for (int j = 0; j <= n; ++j)
        cmax = std::max(cmax, std::abs(c[std::size_t(j)].real()));
    for (int j = 0; j < K; ++j) {
        spurious = std::max(spurious, std::abs(c[std::size_t(j)].imag()));
        if (j > n)
            spurious = std::max(spurious, std::abs(c[std::size_t(j)]));
    }
    out.alias = cmax > 0.0 ? spurious / cmax : std::numeric_limits<double>::infinity();
    out.coefficients.resize(std::size_t(n + 1));
    for (int j = 0; j <= n; ++j)
        out.coefficients[std::size_t(j)] = c[std::size_t(j)].real();
    return out;
}

namespace detail {

inline PencilCount count_pencil_once(const SymmetricMatrix& q0, const SymmetricMatrix& q1, const PencilOptions& opt)
{
    PencilCount out;
    out.n = q0.n();
    const PencilPolynomial pp = pencil_polynomial(q0, q1, opt);
    const auto& a = pp.coefficients;
    const int n = out.n;
    auto flag = [&](std::string why) {
        out.degenerate = true;
        out.reason = std::move(why);
        return out;
    };
    if (!(pp.alias <= opt.alias_tolerance)) {
        std::ostringstream os;
        os << "interpolation check failed (alias " << pp.alias << ")";
        return flag(os.str());
    }
    double scale = 0.0, p_plus = 0.0, p_minus = 0.0;
    for (int j = 0; j <= n; ++j) {
        scale += std::abs(a[std::size_t(j)]);
        p_plus += a[std::size_t(j)];
        p_minus += (j % 2 ? -1.0 : 1.0) * a[std::size_t(j)];
    }
    if (std::abs(a[std::size_t(n)]) <= opt.zero_tolerance * scale)
        return flag("det Q1 is numerically zero (root at infinity)");
    if (std::abs(p_plus) <= opt.zero_tolerance * scale || std::abs(p_minus) <= opt.zero_tolerance * scale)
        return flag("root at t = +-1 to working precision");

    std::vector<Quad> fwd(a.size()), rev(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        fwd[j] = Quad(a[j]);
        rev[a.size() - 1 - j] = Quad(a[j]);
    }
    const auto cf = SturmChain::build(fwd, opt.sturm);
    const auto cr = SturmChain::build(rev, opt.sturm);
    if (!cf || !cr)
        return flag("numerically repeated root in the Sturm chain");
    const int inner = cf->count(Quad(-1), Quad(1));
    const int outer = cr->count(Quad(-1), Quad(1));
    out.real_roots = inner + outer;
    if (out.real_roots < 0 || out.real_roots > n || (out.real_roots - n) % 2 != 0)
        return flag("inconsistent Sturm count " + std::to_string(out.real_roots));
    return out;
}

} // namespace detail

/// Real projective roots of det(x0 Q0 + x1 Q1): the roots of p(t) in
/// (-1, 1] plus the roots of the reversed polynomial in (-1, 1), which are
/// the reciprocals of the roots with |t| > 1.  A root at t = +-1 or at
/// infinity is moved away by rotating the basis of the pencil, which leaves
/// the projective root count unchanged; only a pencil that stays singular
/// under every rotation tried (or has a repeated root) is degenerate.
inline PencilCount count_real_roots_pencil(const SymmetricMatrix& q0, const SymmetricMatrix& q1,
                                           const PencilOptions& opt = {})
{
    if (q1.n() != q0.n())
        throw DomainError("count_real_roots_pencil: Q0 and Q1 must have the same size");
    const double f0 = q0.frobenius(), f1 = q1.frobenius();
    if (!(f0 > 0.0) || !(f1 > 0.0)) {
        PencilCount z;
        z.n = q0.n();
        z.degenerate = true;
        z.reason = "zero matrix in the pencil";
        return z;
    }
    SymmetricMatrix u0 = q0, u1 = q1;
    u0 *= 1.0 / f0;
    u1 *= 1.0 / f1;
    PencilCount out = detail::count_pencil_once(u0, u1, opt);
    constexpr double kAngles[] = {0.3217505543966422, 0.5880026035475675, 0.1973955598498808};
    for (double phi : kAngles) {
        if (!out.degenerate || out.reason.find("repeated") != std::string::npos ||
            out.reason.find("inconsistent") != std::string::npos)
            break;
        const double c = std::cos(phi), s = std::sin(phi);
        SymmetricMatrix r0(q0.n()), r1(q0.n());
        for (int i = 0; i < q0.n(); ++i)
            for (int j = i; j < q0.n(); ++j) {
                r0(i, j) = c * u0(i, j) + s * u1(i, j);
                r1(i, j) = -s * u0(i, j) + c * u1(i, j);
            }
        out = detail::count_pencil_once(r0, r1, opt);
    }
    return out;
}

/// n sqrt(2/pi) Gamma((n+1)/2) / Gamma((n+2)/2): the mean number of real
/// projective roots of det(x0 Q0 + x1 Q1) for independent GOE(n) Q0, Q1,
/// n >= 2.  At n = 1 the pencil has exactly one root and the formula does
/// not apply.
inline LogValue expected_pencil_real_roots(int n)
{
    if (n < 1)
        throw DomainError("expected_pencil_real_roots: n must be >= 1");
    return LogValue(std::log(double(n)) + 0.5 * std::log(2.0 / std::numbers::pi) + ln_gamma(0.5 * (n + 1)) -
                    ln_gamma(0.5 * (n + 2)));
}

struct PencilExperiment
{
    MCEstimate mean;             ///< over non-degenerate samples
    std::uint64_t degenerate = 0;
    std::uint64_t attempted = 0;
    std::string first_degenerate_reason;
};

inline PencilExperiment mc_pencil_experiment(int n, std::uint64_t samples, std::uint64_t seed,
                                             const PencilOptions& opt = {})
{
    if (n < 1)
        throw DomainError("mc_pencil_experiment: n must be >= 1");
    require_samples(samples, 2, "mc_pencil_experiment");
    const auto counts = sample_map<PencilCount>(samples, seed, [&](CounterRng& rng) {
        const SymmetricMatrix q0 = sample_goe(n, rng);
        const SymmetricMatrix q1 = sample_goe(n, rng);
        return count_real_roots_pencil(q0, q1, opt);
    });
    PencilExperiment out;
    out.attempted = samples;
    MomentAccumulator acc;
    for (const auto& c : counts) {
        if (c.degenerate) {
            if (out.degenerate++ == 0)
                out.first_degenerate_reason = c.reason;
            continue;
        }
        acc.add(double(c.real_roots));
    }
    if (double(out.degenerate) > 0.01 * double(samples)) {
        std::ostringstream os;
        os << "mc_pencil_experiment: " << out.degenerate << " of " << samples
           << " pencils degenerate (limit 1%); first reason: " << out.first_degenerate_reason;
        throw NumericError(os.str());
    }
    out.mean = acc.estimate(seed);
    return out;
}

/// Which counting convention a pencil experiment supports: each root of
/// the pencil is one projective point but two antipodal points on the
/// sphere of the pencil's plane.
struct PencilConvention
{
    double z_projective = 0.0; ///< (mean - E) / stderr
    double z_spherical = 0.0;  ///< (mean - 2E) / stderr
    bool projective_supported = false;
};

inline PencilConvention pencil_convention(int n, const MCEstimate& mean)
{
    const double e = expected_pencil_real_roots(n).value();
    const double se = std::max(mean.stderr_, 1e-12);
    PencilConvention out{(mean.mean - e) / se, (mean.mean - 2.0 * e) / se, false};
    out.projective_supported = std::abs(out.z_projective) < std::abs(out.z_spherical);
    return out;
}

/// Expected number of real singular points of a random determinantal
/// surface det(x0 Q0 + ... + x3 Q3) = 0 in RP^3, Q_i in GOE(n), n odd.
struct SingularPointCount
{
    LogValue published;     ///< n(n-1) Gamma(n/2) / (3 sqrt(pi) Gamma((n+1)/2))
    LogValue corrected;     ///< sym_volume_ratio(n, 2) with I_{1,2} = sqrt(2)/3
    BigInt complex_count;   ///< n(n-1)(n+1)/6
};

inline SingularPointCount expected_singular_points(int n)
{
    if (n < 3 || n % 2 == 0)
        throw DomainError("expected_singular_points: needs odd n >= 3 (closed form only for n - 2 odd), got " +
                          std::to_string(n));
    SingularPointCount out;
    out.published = LogValue(std::log(double(n) * (n - 1)) + ln_gamma(0.5 * n) -
                             std::log(3.0 * std::sqrt(std::numbers::pi)) - ln_gamma(0.5 * (n + 1)));
    out.corrected =
        sym_volume_ratio(n, 2, ConstantEstimate::exact_value(*known_I_1mu(2, I12Branch::Definition))).value;
    out.complex_count = complex_sym_degree(n, 2);
    return out;
}

/// n + (2/sqrt(pi)) sqrt(n): leading terms of the expected total Betti
/// number of an intersection of two random quadrics (asymptotic estimate).
inline double expected_betti_leading(int n)
{
    if (n < 1)
        throw DomainError("expected_betti_leading: n must be >= 1");
    return double(n) + 2.0 / std::sqrt(std::numbers::pi) * std::sqrt(double(n));
}

} // namespace corank
