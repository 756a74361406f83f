#pragma once

// Log-space special functions.  Every Gamma-product in the library is
// evaluated through these, so magnitudes far outside double range survive
// until the final exponentiation.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "corank/errors.hpp"

namespace corank {

/// A strictly positive real stored as its natural logarithm.
class LogValue
{
  public:
    constexpr LogValue() = default;
    constexpr explicit LogValue(double ln_value) : ln_(ln_value) {}

    static LogValue from_value(double v)
    {
        if (!(v > 0.0) || !std::isfinite(v))
            throw DomainError("LogValue::from_value: value must be finite and > 0, got " +
                              std::to_string(v));
        return LogValue(std::log(v));
    }

    [[nodiscard]] constexpr double ln() const { return ln_; }

    /// exp(ln); +infinity when the value exceeds double range (check
    /// overflows() rather than comparing against a saturated maximum).
    [[nodiscard]] double value() const { return overflows() ? std::numeric_limits<double>::infinity() : std::exp(ln_); }
    [[nodiscard]] bool overflows() const { return ln_ > std::log(std::numeric_limits<double>::max()); }

    friend constexpr LogValue operator*(LogValue a, LogValue b) { return LogValue(a.ln_ + b.ln_); }
    friend constexpr LogValue operator/(LogValue a, LogValue b) { return LogValue(a.ln_ - b.ln_); }
    [[nodiscard]] constexpr LogValue pow(double p) const { return LogValue(p * ln_); }

  private:
    double ln_ = 0.0;
};

namespace detail {

inline void require_positive_finite(double x, const char* what)
{
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError(std::string(what) + ": argument must be finite and > 0, got " + std::to_string(x));
}

// Stirling series tail: sum_k B_{2k} / (2k (2k-1) x^{2k-1}), k = 1..8.
inline double stirling_tail(double x)
{
    static constexpr std::array<double, 8> coef = {
        1.0 / 12.0,           -1.0 / 360.0,        1.0 / 1260.0,       -1.0 / 1680.0,
        1.0 / 1188.0,         -691.0 / 360360.0,   1.0 / 156.0,        -3617.0 / 122400.0,
    };
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double acc = 0.0;
    for (auto it = coef.rbegin(); it != coef.rend(); ++it)
        acc = acc * inv2 + *it;
    return acc * inv;
}

// ln Gamma(1 + e) = -gamma e + sum_{k>=2} zeta(k) (-e)^k / k, |e| <= 1/2.
// Keeps full relative accuracy next to the zeros of ln Gamma at 1 and 2.
inline double ln_gamma_1p(double e)
{
    static constexpr std::array<double, 39> zeta = {
        1.64493406684822643647, 1.2020569031595942854,  1.08232323371113819152, 1.03692775514336992633,
        1.01734306198444913971, 1.00834927738192282684, 1.00407735619794433938, 1.00200839282608221442,
        1.00099457512781808534, 1.00049418860411946456, 1.0002460865533080483,  1.00012271334757848915,
        1.00006124813505870483, 1.00003058823630702049, 1.00001528225940865187, 1.00000763719763789976,
        1.00000381729326499984, 1.00000190821271655394, 1.0000009539620338728,  1.00000047693298678781,
        1.00000023845050272773, 1.00000011921992596531, 1.00000005960818905126, 1.00000002980350351465,
        1.00000001490155482837, 1.00000000745071178984, 1.00000000372533402479, 1.00000000186265972351,
        1.00000000093132743242, 1.0000000004656629065,  1.00000000023283118337, 1.00000000011641550173,
        1.00000000005820772088, 1.00000000002910385044, 1.00000000001455192189, 1.00000000000727595984,
        1.00000000000363797955, 1.00000000000181898965, 1.00000000000090949478,
    };
    constexpr double euler_gamma = 0.577215664901532860607;
    double sum = 0.0;
    for (int k = 64; k >= 2; --k) {
        const double z = k - 2 < int(zeta.size()) ? zeta[std::size_t(k - 2)] : 1.0 + std::ldexp(1.0, -k);
        sum = sum * (-e) + z / k;
    }
    return e * (-euler_gamma + e * sum);
}

} // namespace detail

/// ln Gamma(x) for x > 0.  Stirling series for x >= 15 with upward
/// recurrence below; a Taylor series around the zeros at x = 1 and x = 2.
inline double ln_gamma(double x)
{
    detail::require_positive_finite(x, "ln_gamma");
    if (x == 1.0 || x == 2.0)
        return 0.0;
    if (std::abs(x - 1.0) <= 0.5)
        return detail::ln_gamma_1p(x - 1.0);
    if (std::abs(x - 2.0) <= 0.5)
        return detail::ln_gamma_1p(x - 2.0) + std::log1p(x - 2.0);
    constexpr double kStirlingMin = 15.0;
    double shift_product = 1.0;
    double z = x;
    while (z < kStirlingMin) {
        shift_product *= z;
        z += 1.0;
    }
    constexpr double half_ln_2pi = 0.91893853320467274178032973640562;
    const double stirling = (z - 0.5) * std::log(z) - z + half_ln_2pi + detail::stirling_tail(z);
    return shift_product == 1.0 ? stirling : stirling - std::log(shift_product);
}

enum class GammaRatioMode { Exact, Asymptotic };

/// ln( Gamma(z + a) / Gamma(z + b) ).  Asymptotic mode returns the leading
/// term (a - b) ln z, for comparison against the exact value.
inline double ln_gamma_ratio(double z, double a, double b, GammaRatioMode mode = GammaRatioMode::Exact)
{
    detail::require_positive_finite(z + a, "ln_gamma_ratio(z+a)");
    detail::require_positive_finite(z + b, "ln_gamma_ratio(z+b)");
    if (mode == GammaRatioMode::Asymptotic) {
        detail::require_positive_finite(z, "ln_gamma_ratio(z)");
        return (a - b) * std::log(z);
    }
    return ln_gamma(z + a) - ln_gamma(z + b);
}

/// Volume of the unit d-sphere S^d in R^{d+1}: 2 pi^{(d+1)/2} / Gamma((d+1)/2).
inline LogValue ln_sphere_volume(int d)
{
    if (d < 0)
        throw DomainError("ln_sphere_volume: dimension must be >= 0, got " + std::to_string(d));
    const double h = 0.5 * (d + 1);
    return LogValue(std::numbers::ln2 + h * std::log(std::numbers::pi) - ln_gamma(h));
}

inline double ln_binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n)
        throw DomainError("ln_binomial: need 0 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
    if (k == 0 || k == n)
        return 0.0;
    return ln_gamma(double(n) + 1.0) - ln_gamma(double(k) + 1.0) - ln_gamma(double(n - k) + 1.0);
}

} // namespace corank
