#pragma once

// Independent reference computations used only by the tests.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "corank/linalg.hpp"

namespace corank::oracle {

/// Sign of det(cos(th) Q0 + sin(th) Q1) and ln|det|.
inline LogDet<double> pencil_det(const SymmetricMatrix& q0, const SymmetricMatrix& q1, double th)
{
    const int n = q0.n();
    std::vector<double> m(static_cast<std::size_t>(n * n));
    const double c = std::cos(th), s = std::sin(th);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m[std::size_t(i * n + j)] = c * q0(i, j) + s * q1(i, j);
    return log_det<double>(m, n);
}

/// Real projective roots of the pencil by scanning the angle theta in
/// [0, pi).  A sign change between grid points is one root; at every local
/// minimum of |f| without a sign change, a ternary search looks for a
/// hidden pair of close roots.  The grid includes theta = pi, where
/// f(pi) = (-1)^n f(0), so every projective root is seen exactly once.
inline int pencil_roots_by_scan(const SymmetricMatrix& q0, const SymmetricMatrix& q1, int grid = 4000)
{
    std::vector<double> ln(static_cast<std::size_t>(grid + 1));
    std::vector<int> sg(static_cast<std::size_t>(grid + 1));
    const double h = std::numbers::pi / grid;
    for (int i = 0; i <= grid; ++i) {
        const auto d = pencil_det(q0, q1, i * h);
        ln[std::size_t(i)] = d.ln_abs;
        sg[std::size_t(i)] = d.phase > 0 ? 1 : (d.phase < 0 ? -1 : 0);
    }
    int roots = 0;
    for (int i = 0; i < grid; ++i) {
        if (sg[std::size_t(i)] != sg[std::size_t(i + 1)]) {
            ++roots;
            continue;
        }
        if (i == 0 || sg[std::size_t(i - 1)] != sg[std::size_t(i)] || ln[std::size_t(i)] > ln[std::size_t(i - 1)] ||
            ln[std::size_t(i)] > ln[std::size_t(i + 1)])
            continue;
        // Local minimum with equal signs around it: search (i-1, i+1).
        double a = (i - 1) * h, b = (i + 1) * h;
        for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
            const double m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
            if (pencil_det(q0, q1, m1).ln_abs < pencil_det(q0, q1, m2).ln_abs)
                b = m2;
            else
                a = m1;
        }
        const auto d = pencil_det(q0, q1, 0.5 * (a + b));
        const int s = d.phase > 0 ? 1 : (d.phase < 0 ? -1 : 0);
        if (s != sg[std::size_t(i)])
            roots += 2;
    }
    return roots;
}

} // namespace corank::oracle
