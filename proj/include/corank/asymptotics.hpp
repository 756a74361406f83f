#pragma once

// Growth exponents of the volume ratios and degrees by log-log regression.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "corank/closed_form.hpp"
#include "corank/errors.hpp"
#include "corank/specfun.hpp"
#include "corank/structure_constants.hpp"

namespace corank {

struct ExponentFit
{
    double exponent = 0.0;
    double ln_constant = 0.0; ///< intercept of ln v = exponent ln n + ln_constant
    double r_squared = 0.0;
    double max_residual = 0.0;
};

inline ExponentFit fit_exponent(const std::vector<std::pair<int, LogValue>>& pairs)
{
    if (pairs.size() < 5)
        throw DomainError("fit_exponent: need at least 5 points, got " + std::to_string(pairs.size()));
    for (std::size_t i = 1; i < pairs.size(); ++i)
        if (pairs[i].first <= pairs[i - 1].first)
            throw DomainError("fit_exponent: n must be strictly increasing");
    if (pairs.front().first < 1)
        throw DomainError("fit_exponent: n must be positive");
    const double m = double(pairs.size());
    double sx = 0, sy = 0;
    for (const auto& [n, v] : pairs) {
        sx += std::log(double(n));
        sy += v.ln();
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& [n, v] : pairs) {
        const double dx = std::log(double(n)) - mx, dy = v.ln() - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    ExponentFit f;
    f.exponent = sxy / sxx;
    f.ln_constant = my - f.exponent * mx;
    double sse = 0.0;
    for (const auto& [n, v] : pairs) {
        const double r = v.ln() - (f.exponent * std::log(double(n)) + f.ln_constant);
        sse += r * r;
        f.max_residual = std::max(f.max_residual, std::abs(r));
    }
    f.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
    return f;
}

/// mu^2/2, mu(mu+1)/4, mu^2, mu(mu+1)/2 for real, symmetric, complex,
/// complex symmetric.
inline double target_exponent(SpaceKind kind, int mu)
{
    switch (kind) {
    case SpaceKind::RealGeneral: return 0.5 * mu * mu;
    case SpaceKind::RealSymmetric: return 0.25 * mu * (mu + 1);
    case SpaceKind::ComplexGeneral: return double(mu) * mu;
    case SpaceKind::ComplexSymmetric: return 0.5 * mu * (mu + 1);
    }
    return 0.0;
}

struct GrowthOptions
{
    double tolerance = 0.05;
    int points = 40;                   ///< n values, geometrically spaced
    std::uint64_t constant_samples = 200000; ///< MC size for unknown I_mu, I_{1,mu}
    std::uint64_t seed = 1;
    I12Branch i12 = I12Branch::Definition;
    TubeNormalization normalization = TubeNormalization::Weyl;
};

struct GrowthReport
{
    SpaceKind kind{};
    int mu = 1;
    double target = 0.0;
    ExponentFit fit;
    bool pass = false;
    double tolerance = 0.0;
    double constant_at_max = 0.0; ///< v(n_max) / n_max^target
    double fitted_constant = 0.0; ///< exp(ln_constant) of the free fit
    std::string constant_note;    ///< how the structure constant was obtained
    std::vector<int> n_values;
};

/// The n values used for a growth fit: geometric spacing in [n_min, n_max],
/// n >= mu + 1, and n - mu odd for the symmetric real space.
inline std::vector<int> growth_grid(SpaceKind kind, int mu, int n_min, int n_max, int points)
{
    if (n_min < 1 || n_max < n_min)
        throw DomainError("growth n range must satisfy 1 <= n_min <= n_max");
    std::vector<int> ns;
    const double lo = std::log(double(n_min)), hi = std::log(double(n_max));
    for (int i = 0; i < points; ++i) {
        int n = int(std::lround(std::exp(lo + (hi - lo) * i / std::max(1, points - 1))));
        if (kind == SpaceKind::RealSymmetric && (n - mu) % 2 == 0)
            n += n + 1 <= n_max ? 1 : -1;
        if (n < std::max(n_min, mu + 1) || n > n_max)
            continue;
        if (kind == SpaceKind::RealSymmetric && (n - mu) % 2 == 0)
            continue;
        if (ns.empty() || n > ns.back())
            ns.push_back(n);
    }
    if (ns.empty())
        throw DomainError("verify_growth: no admissible n in [" + std::to_string(n_min) + ", " +
                          std::to_string(n_max) + "]");
    return ns;
}

inline GrowthReport verify_growth(SpaceKind kind, int mu, int n_min, int n_max, const GrowthOptions& opt = {})
{
    GrowthReport rep;
    rep.kind = kind;
    rep.mu = mu;
    rep.target = target_exponent(kind, mu);
    rep.tolerance = opt.tolerance;
    rep.n_values = growth_grid(kind, mu, n_min, n_max, opt.points);

    ConstantEstimate constant = ConstantEstimate::exact_value(1.0);
    if (kind == SpaceKind::RealGeneral) {
        if (const auto k = known_I_mu(mu)) {
            constant = ConstantEstimate::exact_value(*k);
            rep.constant_note = "I_mu exact";
        } else {
            constant = ConstantEstimate::from(I_mu(mu, opt.constant_samples, opt.seed));
            rep.constant_note = "I_mu Monte Carlo";
        }
    } else if (kind == SpaceKind::RealSymmetric) {
        if (const auto k = known_I_1mu(mu, opt.i12)) {
            constant = ConstantEstimate::exact_value(*k);
            rep.constant_note = mu == 2 && opt.i12 == I12Branch::Published ? "I_{1,2} published value"
                                                                            : "I_{1,mu} exact";
        } else {
            constant = ConstantEstimate::from(I_1mu(mu, opt.constant_samples, opt.seed));
            rep.constant_note = "I_{1,mu} Monte Carlo";
        }
    } else {
        rep.constant_note = "exact degree";
    }

    std::vector<std::pair<int, LogValue>> pairs;
    for (int n : rep.n_values) {
        LogValue v;
        switch (kind) {
        case SpaceKind::RealGeneral: v = real_volume_ratio(n, mu, constant, opt.normalization).value; break;
        case SpaceKind::RealSymmetric:
            v = sym_volume_ratio(n, mu, constant, std::nullopt, opt.normalization).value;
            break;
        default: v = complex_volume_ratio(kind, n, mu).value; break;
        }
        pairs.emplace_back(n, v);
    }
    rep.fit = fit_exponent(pairs);
    rep.pass = std::abs(rep.fit.exponent - rep.target) <= opt.tolerance;
    const auto& [nmax, vmax] = pairs.back();
    rep.constant_at_max = std::exp(vmax.ln() - rep.target * std::log(double(nmax)));
    rep.fitted_constant = std::exp(rep.fit.ln_constant);
    return rep;
}

} // namespace corank
