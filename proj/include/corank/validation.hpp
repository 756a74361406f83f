#pragma once

// Monte Carlo validation suites: each check compares an estimator with its
// closed-form counterpart at a pinned tolerance.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "corank/applications.hpp"
#include "corank/closed_form.hpp"
#include "corank/geometry.hpp"
#include "corank/rmt.hpp"
#include "corank/structure_constants.hpp"

namespace corank {

struct CheckResult
{
    std::string suite;
    std::string name;
    double observed = 0.0;
    double expected = 0.0;
    double stderr_ = 0.0;
    double tolerance = 0.0; ///< absolute; pass iff |observed - expected| <= tolerance
    bool pass = false;
    std::string note;
};

struct ValidationConfig
{
    std::uint64_t samples = 1'000'000;      ///< per Monte Carlo check
    std::uint64_t constant_samples = 10'000'000; ///< I_{1,2} arbitration
    std::uint64_t pencil_samples = 10'000;
    std::uint64_t seed = 20240611;
    long quadrature_points = 2000;
    std::vector<double> eps_grid{0.3, 0.2, 0.14, 0.1, 0.07, 0.05};
};

/// k standard errors plus a relative allowance; the 1e-12 relative floor
/// only absorbs rounding in exact (zero-variance) branches.
inline CheckResult make_check(std::string suite, std::string name, double observed, double expected, double se,
                              double k_sigma, double rel_tol, std::string note = {})
{
    CheckResult r{std::move(suite), std::move(name), observed, expected, se, 0.0, false, std::move(note)};
    r.tolerance = k_sigma * se + std::max(rel_tol, 1e-12) * std::abs(expected);
    r.pass = std::isfinite(observed) && std::abs(observed - expected) <= r.tolerance;
    return r;
}

inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t tag) { return seed * 1000003ULL + tag; }

//---------------------------------------------------------------------------//
// I_{1,2} arbitration
//---------------------------------------------------------------------------//

struct I12Arbitration
{
    MCEstimate monte_carlo;
    QuadratureResult quadrature;
    double definition_value = 0.0; ///< sqrt(2)/3
    double published_value = 0.0;  ///< sqrt(2)/2
    bool mc_agrees_with_quadrature = false;
    I12Branch supported = I12Branch::Definition;
};

inline I12Arbitration arbitrate_I12(std::uint64_t samples, std::uint64_t seed, long grid_points)
{
    I12Arbitration a;
    a.monte_carlo = I_1mu(2, samples, seed);
    a.quadrature = I_1mu_quadrature(2, grid_points);
    a.definition_value = *known_I_1mu(2, I12Branch::Definition);
    a.published_value = *known_I_1mu(2, I12Branch::Published);
    const double se = std::hypot(a.monte_carlo.stderr_, a.quadrature.error_estimate);
    a.mc_agrees_with_quadrature = std::abs(a.monte_carlo.mean - a.quadrature.value) <= 3.0 * se;
    a.supported = std::abs(a.quadrature.value - a.definition_value) < std::abs(a.quadrature.value - a.published_value)
                      ? I12Branch::Definition
                      : I12Branch::Published;
    return a;
}

//---------------------------------------------------------------------------//
// Suites
//---------------------------------------------------------------------------//

inline std::vector<CheckResult> suite_constants(const ValidationConfig& cfg)
{
    std::vector<CheckResult> out;
    const auto a = arbitrate_I12(cfg.constant_samples, sub_seed(cfg.seed, 1), cfg.quadrature_points);
    const double se = std::hypot(a.monte_carlo.stderr_, a.quadrature.error_estimate);
    out.push_back(make_check("constants", "I_1mu(2) monte-carlo vs quadrature", a.monte_carlo.mean,
                             a.quadrature.value, se, 3.0, 0.0,
                             std::string("supported value: ") +
                                 (a.supported == I12Branch::Definition ? "sqrt(2)/3 (quadrature)" : "sqrt(2)/2")));
    out.push_back(make_check("constants", "I_1mu(2) quadrature vs sqrt(2)/3", a.quadrature.value, a.definition_value,
                             a.quadrature.error_estimate, 3.0, 0.0));
    const auto i2 = I_mu(2, cfg.samples, sub_seed(cfg.seed, 2));
    out.push_back(make_check("constants", "I_mu(2) monte-carlo vs pi/16", i2.mean, *known_I_mu(2), i2.stderr_, 3.0, 0.0));
    return out;
}

inline std::vector<CheckResult> suite_smallball(const ValidationConfig& cfg)
{
    std::vector<CheckResult> out;
    const std::uint64_t S = cfg.samples;
    {
        const auto e = estimate_small_ball(MatrixSpace(SpaceKind::RealSymmetric, 1), 1, 0.1, S, sub_seed(cfg.seed, 10));
        out.push_back(make_check("smallball", "sym n=1 mu=1 eps=0.1 vs erf(eps/sqrt2)", e.mean,
                                 std::erf(0.1 / std::numbers::sqrt2), e.stderr_, 3.0, 0.0));
    }
    {
        const auto e = estimate_small_ball(MatrixSpace(SpaceKind::RealGeneral, 2), 2, 0.2, S, sub_seed(cfg.seed, 11));
        const double x = 0.5 * 0.04; // chi-square(4) CDF at eps^2
        out.push_back(make_check("smallball", "general n=2 mu=2 eps=0.2 vs chi-square(4)", e.mean,
                                 1.0 - std::exp(-x) * (1.0 + x), e.stderr_, 3.0, 0.0));
        const double lead = std::pow(0.2, 4) * small_ball_limit(SpaceKind::RealGeneral, 2, 2, *known_I_mu(2)).value();
        out.push_back(make_check("smallball", "general n=2 mu=2 eps=0.2 vs leading order", e.mean, lead, e.stderr_, 3.0,
                                 0.10));
    }
    {
        const auto e =
            estimate_small_ball(MatrixSpace(SpaceKind::RealGeneral, 3), 1, 10.0 * std::sqrt(3.0), 100000,
                                sub_seed(cfg.seed, 12));
        CheckResult r{"smallball", "eps = 10 sqrt(n) covers almost surely", e.mean, 0.999, e.stderr_, 0.0,
                      e.mean >= 0.999, "pass iff estimate >= 0.999"};
        out.push_back(r);
    }
    struct Case
    {
        SpaceKind kind;
        int n, mu;
        double constant;
        const char* name;
    };
    const Case cases[] = {
        {SpaceKind::RealGeneral, 3, 1, *known_I_mu(1), "limit ratio general n=3 mu=1"},
        {SpaceKind::RealSymmetric, 4, 1, *known_I_1mu(1), "limit ratio sym n=4 mu=1"},
        {SpaceKind::RealSymmetric, 3, 2, *known_I_1mu(2, I12Branch::Definition),
         "limit ratio sym n=3 mu=2 (I_{1,2}=sqrt(2)/3)"},
    };
    std::uint64_t tag = 20;
    for (const auto& c : cases) {
        const MatrixSpace space(c.kind, c.n);
        const auto r = estimate_limit_ratio(space, c.mu, cfg.eps_grid, S, sub_seed(cfg.seed, tag++));
        const double expected = small_ball_limit(c.kind, c.n, c.mu, c.constant).value();
        std::string note = "free log-log slope " + std::to_string(r.slope) + " (c=" + std::to_string(r.c) + ")";
        out.push_back(make_check("smallball", c.name, r.intercept.mean, expected, r.intercept.stderr_, 3.0, 0.05, note));
    }
    {
        const MatrixSpace space(SpaceKind::RealSymmetric, 4);
        const auto r = estimate_limit_ratio(space, 1, cfg.eps_grid, S, sub_seed(cfg.seed, 21));
        out.push_back(make_check("smallball", "log-log slope sym n=4 mu=1", r.slope, 1.0, 0.0, 0.0, 0.10));
    }
    {
        const MatrixSpace space(SpaceKind::RealSymmetric, 3);
        const auto r = estimate_limit_ratio(space, 3, cfg.eps_grid, S, sub_seed(cfg.seed, 30));
        // mu = n: p_3(eps) = P{|Q| <= eps}, chi-square with 6 degrees of freedom.
        const double chi_limit = 1.0 / (std::pow(2.0, 3.0) * std::tgamma(4.0));
        out.push_back(make_check("smallball", "limit ratio sym n=3 mu=3 vs chi-square(6)", r.intercept.mean, chi_limit,
                                 r.intercept.stderr_, 3.0, 0.05));
    }
    return out;
}

inline std::vector<CheckResult> suite_tube(const ValidationConfig& cfg)
{
    std::vector<CheckResult> out;
    const auto c1 = ConstantEstimate::exact_value(1.0);
    const auto I1 = ConstantEstimate::exact_value(*known_I_mu(1));
    {
        const auto r = intrinsic_volume_via_tube(MatrixSpace(SpaceKind::RealGeneral, 2), 1, cfg.eps_grid, cfg.samples,
                                                 sub_seed(cfg.seed, 40));
        out.push_back(make_check("tube", "tube route general n=2 mu=1", r.ratio.mean,
                                 real_volume_ratio(2, 1, I1).value.value(), r.ratio.stderr_, 3.0, 0.05));
    }
    {
        const auto r = intrinsic_volume_via_tube(MatrixSpace(SpaceKind::RealSymmetric, 2), 1, cfg.eps_grid,
                                                 cfg.samples, sub_seed(cfg.seed, 41));
        out.push_back(make_check("tube", "tube route sym n=2 mu=1", r.ratio.mean,
                                 sym_volume_ratio(2, 1, c1).value.value(), r.ratio.stderr_, 3.0, 0.05));
    }
    {
        const auto r = intrinsic_volume_via_tube(MatrixSpace(SpaceKind::RealSymmetric, 3), 2, cfg.eps_grid,
                                                 cfg.samples, sub_seed(cfg.seed, 42));
        const auto def = ConstantEstimate::exact_value(*known_I_1mu(2, I12Branch::Definition));
        const auto pub = ConstantEstimate::exact_value(*known_I_1mu(2, I12Branch::Published));
        const double weyl = sym_volume_ratio(3, 2, def).value.value();
        const double published =
            sym_volume_ratio(3, 2, pub, std::nullopt, TubeNormalization::AsPublished).value.value();
        out.push_back(make_check("tube", "tube route sym n=3 mu=2 (arbitration)", r.ratio.mean, weyl, r.ratio.stderr_,
                                 3.0, 0.05,
                                 "published-formula value " + std::to_string(published) + " is " +
                                     std::to_string(std::abs(r.ratio.mean - published) / r.ratio.stderr_) +
                                     " stderr away"));
    }
    {
        const auto r = intrinsic_volume_via_tube(MatrixSpace(SpaceKind::RealGeneral, 3), 2, cfg.eps_grid, cfg.samples,
                                                 sub_seed(cfg.seed, 43));
        const auto I2 = ConstantEstimate::exact_value(*known_I_mu(2));
        out.push_back(make_check("tube", "tube route general n=3 mu=2", r.ratio.mean,
                                 real_volume_ratio(3, 2, I2).value.value(), r.ratio.stderr_, 3.0, 0.05,
                                 "published-formula value " +
                                     std::to_string(
                                         real_volume_ratio(3, 2, I2, TubeNormalization::AsPublished).value.value())));
    }
    return out;
}

inline std::vector<CheckResult> suite_moments(const ValidationConfig& cfg)
{
    std::vector<CheckResult> out;
    const std::pair<int, int> cases[] = {{1, 1}, {1, 2}, {3, 1}, {3, 2}, {5, 2}};
    std::uint64_t tag = 50;
    for (const auto& [k, mu] : cases) {
        const auto e = estimate_abs_det_moment(k, mu, cfg.samples, sub_seed(cfg.seed, tag++));
        out.push_back(make_check("moments",
                                 "E|det GOE(" + std::to_string(k) + ")|^" + std::to_string(mu), e.mean,
                                 goe_abs_det_moment(k, mu).value(), e.stderr_, 3.0, 0.0));
    }
    return out;
}

inline std::vector<CheckResult> suite_selberg(const ValidationConfig& cfg)
{
    std::vector<CheckResult> out;
    std::uint64_t tag = 60;
    for (int n : {1, 2, 3}) {
        const auto e = selberg_mc_check(SelbergKind::Eigenvalue, n, cfg.samples, sub_seed(cfg.seed, tag++));
        out.push_back(make_check("selberg", "eigenvalue C_1(" + std::to_string(n) + ") ratio", e.mean, 1.0, e.stderr_,
                                 3.0, 0.0));
    }
    for (int n : {2, 3}) {
        const auto e = selberg_mc_check(SelbergKind::SingularValue, n, cfg.samples, sub_seed(cfg.seed, tag++));
        out.push_back(make_check("selberg", "singular-value C(" + std::to_string(n) + ") ratio", e.mean, 1.0,
                                 e.stderr_, 3.0, 0.0));
    }
    return out;
}

inline std::vector<CheckResult> suite_conefactor(const ValidationConfig& cfg)
{
    const auto r =
        cone_cylinder_ratio(MatrixSpace(SpaceKind::RealSymmetric, 2), 1, 0.02, cfg.samples, sub_seed(cfg.seed, 70));
    return {make_check("conefactor", "cone/cylinder sym n=2 mu=1 eps=0.02", r.ratio.mean, r.expected, r.ratio.stderr_,
                       3.0, 0.10)};
}

inline std::vector<CheckResult> suite_pencil(const ValidationConfig& cfg)
{
    std::vector<CheckResult> out;
    {
        const auto e = mc_pencil_experiment(1, 1000, sub_seed(cfg.seed, 80));
        out.push_back(make_check("pencil", "n=1 pencil has exactly one root", e.mean.mean, 1.0, e.mean.stderr_, 0.0,
                                 0.0));
    }
    std::uint64_t tag = 81;
    for (int n : {5, 10, 20}) {
        const auto e = mc_pencil_experiment(n, cfg.pencil_samples, sub_seed(cfg.seed, tag++));
        const auto conv = pencil_convention(n, e.mean);
        out.push_back(make_check("pencil", "mean real roots n=" + std::to_string(n), e.mean.mean,
                                 expected_pencil_real_roots(n).value(), e.mean.stderr_, 3.0, 0.0,
                                 std::string("convention supported: ") +
                                     (conv.projective_supported ? "projective" : "spherical") +
                                     "; z(projective)=" + std::to_string(conv.z_projective) +
                                     " z(spherical)=" + std::to_string(conv.z_spherical) +
                                     "; degenerate=" + std::to_string(e.degenerate)));
    }
    {
        const int n = 40;
        const auto e = mc_pencil_experiment(n, cfg.pencil_samples, sub_seed(cfg.seed, tag++));
        const double r = e.mean.mean / std::sqrt(double(n));
        out.push_back(CheckResult{"pencil", "mean/sqrt(n) at n=40 in [1.0, 1.3]", r, 2.0 / std::sqrt(std::numbers::pi),
                                  e.mean.stderr_ / std::sqrt(double(n)), 0.0, r >= 1.0 && r <= 1.3,
                                  "pass iff value in [1.0, 1.3]; degenerate=" + std::to_string(e.degenerate)});
    }
    return out;
}

inline const std::map<std::string, std::function<std::vector<CheckResult>(const ValidationConfig&)>>& validation_suites()
{
    static const std::map<std::string, std::function<std::vector<CheckResult>(const ValidationConfig&)>> suites = {
        {"constants", suite_constants}, {"smallball", suite_smallball},   {"tube", suite_tube},
        {"moments", suite_moments},     {"selberg", suite_selberg},       {"conefactor", suite_conefactor},
        {"pencil", suite_pencil},
    };
    return suites;
}

inline std::vector<CheckResult> run_suite(const std::string& name, const ValidationConfig& cfg)
{
    const auto& s = validation_suites();
    const auto it = s.find(name);
    if (it == s.end())
        throw DomainError("unknown validation suite '" + name + "'");
    return it->second(cfg);
}

} // namespace corank
