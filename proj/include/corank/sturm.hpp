#pragma once

// Sturm sequences for counting distinct real roots of a real polynomial in
// an interval.  The chain is built in binary128 arithmetic: for degree-40
// characteristic polynomials the remainders lose too many digits in double
// or 80-bit precision to keep the sign pattern reliable.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace corank {

using Quad = __float128;

namespace detail {

inline Quad qabs(Quad x) { return x < 0 ? -x : x; }

inline Quad max_abs(const std::vector<Quad>& p)
{
    Quad m = 0;
    for (Quad x : p)
        m = std::max(m, qabs(x));
    return m;
}

// Coefficients are stored lowest degree first.
inline void trim_leading(std::vector<Quad>& p, Quad rel_tol)
{
    const Quad m = max_abs(p);
    while (!p.empty() && qabs(p.back()) <= rel_tol * m)
        p.pop_back();
}

inline std::vector<Quad> remainder(std::vector<Quad> a, const std::vector<Quad>& b)
{
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const Quad f = a.back() / b.back();
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i < db; ++i)
            a[shift + i] -= f * b[i];
        a.pop_back();
    }
    return a;
}

inline Quad horner(const std::vector<Quad>& p, Quad x)
{
    Quad v = 0;
    for (std::size_t i = p.size(); i-- > 0;)
        v = v * x + p[i];
    return v;
}

} // namespace detail

struct SturmOptions
{
    /// Leading remainder coefficients below this fraction of the remainder's
    /// largest coefficient are dropped as rounding noise.
    double trim_tolerance = 1e-28;
    /// A remainder whose size falls below this fraction of its dividend
    /// signals a numerically repeated root.
    double degeneracy_tolerance = 1e-24;
};

class SturmChain
{
  public:
    /// nullopt when the chain detects a (numerically) repeated root.
    static std::optional<SturmChain> build(std::vector<Quad> p, const SturmOptions& opt = {})
    {
        detail::trim_leading(p, Quad(0));
        if (p.empty())
            return std::nullopt;
        SturmChain chain;
        normalize(p);
        chain.seq_.push_back(p);
        if (p.size() == 1)
            return chain;
        std::vector<Quad> d(p.size() - 1);
        for (std::size_t i = 1; i < p.size(); ++i)
            d[i - 1] = p[i] * Quad(double(i));
        normalize(d);
        chain.seq_.push_back(d);
        while (chain.seq_.back().size() > 1) {
            const auto& a = chain.seq_[chain.seq_.size() - 2];
            const auto& b = chain.seq_.back();
            std::vector<Quad> r = detail::remainder(a, b);
            const Quad ra = detail::max_abs(r);
            if (!(ra > Quad(opt.degeneracy_tolerance) * detail::max_abs(a)))
                return std::nullopt;
            detail::trim_leading(r, Quad(opt.trim_tolerance));
            for (Quad& x : r)
                x = -x;
            normalize(r);
            chain.seq_.push_back(std::move(r));
        }
        return chain;
    }

    /// Sign changes of the chain at x (zeros skipped).
    [[nodiscard]] int variations(Quad x) const
    {
        int changes = 0;
        int last = 0;
        for (const auto& p : seq_) {
            const Quad v = detail::horner(p, x);
            const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
            if (s == 0)
                continue;
            if (last != 0 && s != last)
                ++changes;
            last = s;
        }
        return changes;
    }

    /// Distinct real roots in (a, b].
    [[nodiscard]] int count(Quad a, Quad b) const { return variations(a) - variations(b); }
    [[nodiscard]] std::size_t length() const { return seq_.size(); }

  private:
    static void normalize(std::vector<Quad>& p)
    {
        const Quad m = detail::max_abs(p);
        if (m > 0)
            for (Quad& x : p)
                x /= m;
    }

    std::vector<std::vector<Quad>> seq_;
};

} // namespace corank
