#pragma once

// Small dense linear algebra: matrix containers, a cyclic Jacobi symmetric
// eigensolver, singular values through the Gram matrix, LU log-determinants
// and Haar orthogonal matrices.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "corank/errors.hpp"
#include "corank/montecarlo.hpp"

namespace corank {

/// Square real matrix, row-major.
class DenseMatrix
{
  public:
    DenseMatrix() = default;
    explicit DenseMatrix(int n) : n_(n), a_(std::size_t(n) * std::size_t(n), 0.0)
    {
        if (n < 1)
            throw DomainError("DenseMatrix: n must be >= 1");
    }

    static DenseMatrix identity(int n)
    {
        DenseMatrix m(n);
        for (int i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    static DenseMatrix diagonal(const std::vector<double>& d)
    {
        DenseMatrix m(int(d.size()));
        for (int i = 0; i < m.n(); ++i)
            m(i, i) = d[std::size_t(i)];
        return m;
    }

    [[nodiscard]] int n() const { return n_; }
    double& operator()(int i, int j) { return a_[std::size_t(i) * std::size_t(n_) + std::size_t(j)]; }
    [[nodiscard]] double operator()(int i, int j) const
    {
        return a_[std::size_t(i) * std::size_t(n_) + std::size_t(j)];
    }
    [[nodiscard]] const std::vector<double>& data() const { return a_; }
    std::vector<double>& data() { return a_; }

    [[nodiscard]] double frobenius() const
    {
        double s = 0.0;
        for (double x : a_)
            s += x * x;
        return std::sqrt(s);
    }

    DenseMatrix& operator*=(double c)
    {
        for (double& x : a_)
            x *= c;
        return *this;
    }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b)
    {
        if (a.n_ != b.n_)
            throw DomainError("DenseMatrix product: dimension mismatch");
        DenseMatrix c(a.n_);
        for (int i = 0; i < a.n_; ++i)
            for (int k = 0; k < a.n_; ++k) {
                const double aik = a(i, k);
                for (int j = 0; j < a.n_; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }

    [[nodiscard]] DenseMatrix transpose() const
    {
        DenseMatrix t(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

  private:
    int n_ = 0;
    std::vector<double> a_;
};

/// Real symmetric matrix, upper triangle packed row by row.
class SymmetricMatrix
{
  public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(int n) : n_(n), a_(std::size_t(n) * std::size_t(n + 1) / 2, 0.0)
    {
        if (n < 1)
            throw DomainError("SymmetricMatrix: n must be >= 1");
    }

    static SymmetricMatrix diagonal(const std::vector<double>& d)
    {
        SymmetricMatrix m(int(d.size()));
        for (int i = 0; i < m.n(); ++i)
            m(i, i) = d[std::size_t(i)];
        return m;
    }

    /// Symmetric part of a dense matrix's upper triangle (lower is ignored).
    static SymmetricMatrix from_upper(const DenseMatrix& d)
    {
        SymmetricMatrix m(d.n());
        for (int i = 0; i < d.n(); ++i)
            for (int j = i; j < d.n(); ++j)
                m(i, j) = d(i, j);
        return m;
    }

    [[nodiscard]] int n() const { return n_; }
    double& operator()(int i, int j) { return a_[index(i, j)]; }
    [[nodiscard]] double operator()(int i, int j) const { return a_[index(i, j)]; }
    [[nodiscard]] const std::vector<double>& packed() const { return a_; }

    [[nodiscard]] double frobenius() const
    {
        double s = 0.0;
        for (int i = 0; i < n_; ++i)
            for (int j = i; j < n_; ++j) {
                const double x = (*this)(i, j);
                s += (i == j ? 1.0 : 2.0) * x * x;
            }
        return std::sqrt(s);
    }

    [[nodiscard]] double trace() const
    {
        double t = 0.0;
        for (int i = 0; i < n_; ++i)
            t += (*this)(i, i);
        return t;
    }

    [[nodiscard]] DenseMatrix dense() const
    {
        DenseMatrix d(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                d(i, j) = (*this)(i, j);
        return d;
    }

    SymmetricMatrix& operator*=(double c)
    {
        for (double& x : a_)
            x *= c;
        return *this;
    }

    /// O^T Q O.
    [[nodiscard]] SymmetricMatrix conjugate(const DenseMatrix& o) const
    {
        if (o.n() != n_)
            throw DomainError("SymmetricMatrix::conjugate: dimension mismatch");
        return from_upper(o.transpose() * dense() * o);
    }

  private:
    [[nodiscard]] std::size_t index(int i, int j) const
    {
        if (i > j)
            std::swap(i, j);
        const auto si = std::size_t(i);
        return si * std::size_t(n_) - si * (si - 1) / 2 + std::size_t(j - i);
    }

    int n_ = 0;
    std::vector<double> a_;
};

struct Spectrum
{
    enum class Kind { SingularValues, Eigenvalues };
    Kind kind = Kind::Eigenvalues;
    std::vector<double> values; ///< ascending
    std::string source;         ///< sampling provenance, e.g. "goe(n=4)"
};

struct EigenDecomposition
{
    std::vector<double> values; ///< ascending
    DenseMatrix vectors;        ///< column k is the eigenvector of values[k]
    int sweeps = 0;
};

namespace detail {

inline double off_diagonal_norm(const std::vector<double>& a, int n)
{
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            s += 2.0 * a[std::size_t(i * n + j)] * a[std::size_t(i * n + j)];
    return std::sqrt(s);
}

// Cyclic Jacobi on a full symmetric copy `a` (row-major).  Rotations are
// accumulated into v when non-null.  Returns the number of sweeps used.
inline int jacobi_sweep(std::vector<double>& a, int n, std::vector<double>* v)
{
    constexpr int kMaxSweeps = 50;
    constexpr double kRelTol = 1e-12;
    double scale = 0.0;
    for (double x : a)
        scale += x * x;
    scale = std::sqrt(scale);
    const double tol = kRelTol * scale;
    auto at = [&](int i, int j) -> double& { return a[std::size_t(i * n + j)]; };

    for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
        const double off = off_diagonal_norm(a, n);
        if (off <= tol)
            return sweep;
        if (sweep == kMaxSweeps) {
            std::ostringstream os;
            os << "Jacobi eigensolver did not converge: n=" << n << " sweeps=" << kMaxSweeps
               << " off-diagonal norm=" << off << " tolerance=" << tol;
            throw NumericError(os.str());
        }
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0)
                    continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = at(k, p);
                    const double akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = at(p, k);
                    const double aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
                if (v)
                    for (int k = 0; k < n; ++k) {
                        double& vkp = (*v)[std::size_t(k * n + p)];
                        double& vkq = (*v)[std::size_t(k * n + q)];
                        const double x = vkp;
                        const double y = vkq;
                        vkp = c * x - s * y;
                        vkq = s * x + c * y;
                    }
            }
    }
    return kMaxSweeps;
}

inline std::vector<double> full_copy(const SymmetricMatrix& q)
{
    const int n = q.n();
    std::vector<double> a(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[std::size_t(i * n + j)] = q(i, j);
    return a;
}

} // namespace detail

/// Eigenvalues and eigenvectors, Q = V diag(values) V^T.
inline EigenDecomposition eigen_sym(const SymmetricMatrix& q)
{
    const int n = q.n();
    auto a = detail::full_copy(q);
    std::vector<double> v(std::size_t(n * n), 0.0);
    for (int i = 0; i < n; ++i)
        v[std::size_t(i * n + i)] = 1.0;
    const int sweeps = detail::jacobi_sweep(a, n, &v);

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return a[std::size_t(x * n + x)] < a[std::size_t(y * n + y)]; });
    EigenDecomposition out{std::vector<double>(std::size_t(n)), DenseMatrix(n), sweeps};
    for (int k = 0; k < n; ++k) {
        const int src = order[std::size_t(k)];
        out.values[std::size_t(k)] = a[std::size_t(src * n + src)];
        for (int i = 0; i < n; ++i)
            out.vectors(i, k) = v[std::size_t(i * n + src)];
    }
    return out;
}

inline Spectrum eigenvalues_sym(const SymmetricMatrix& q)
{
    const int n = q.n();
    auto a = detail::full_copy(q);
    detail::jacobi_sweep(a, n, nullptr);
    Spectrum s{Spectrum::Kind::Eigenvalues, std::vector<double>(std::size_t(n)), {}};
    for (int i = 0; i < n; ++i)
        s.values[std::size_t(i)] = a[std::size_t(i * n + i)];
    std::sort(s.values.begin(), s.values.end());
    return s;
}

/// Singular values, ascending: square roots of the eigenvalues of Q^T Q.
inline Spectrum singular_values(const DenseMatrix& q)
{
    const int n = q.n();
    SymmetricMatrix g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k)
                s += q(k, i) * q(k, j);
            g(i, j) = s;
        }
    Spectrum s = eigenvalues_sym(g);
    s.kind = Spectrum::Kind::SingularValues;
    for (double& x : s.values)
        x = std::sqrt(std::max(x, 0.0));
    std::sort(s.values.begin(), s.values.end());
    return s;
}

/// ln|det A| and the unit-modulus phase of det A, by LU with partial
/// pivoting.  A singular matrix yields ln_abs = -infinity, phase = 0.
template <class T>
struct LogDet
{
    double ln_abs = 0.0;
    T phase{1};
};

template <class T>
LogDet<T> log_det(std::vector<T> a, int n)
{
    LogDet<T> out;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(a[std::size_t(k * n + k)]);
        for (int i = k + 1; i < n; ++i)
            if (const double m = std::abs(a[std::size_t(i * n + k)]); m > best) {
                best = m;
                piv = i;
            }
        if (best == 0.0)
            return {-std::numeric_limits<double>::infinity(), T(0)};
        if (piv != k) {
            for (int j = 0; j < n; ++j)
                std::swap(a[std::size_t(k * n + j)], a[std::size_t(piv * n + j)]);
            out.phase = -out.phase;
        }
        const T d = a[std::size_t(k * n + k)];
        out.ln_abs += std::log(best);
        out.phase *= d / best;
        for (int i = k + 1; i < n; ++i) {
            const T f = a[std::size_t(i * n + k)] / d;
            if (f == T(0))
                continue;
            for (int j = k + 1; j < n; ++j)
                a[std::size_t(i * n + j)] -= f * a[std::size_t(k * n + j)];
        }
    }
    return out;
}

inline LogDet<double> log_det(const DenseMatrix& m) { return log_det<double>(m.data(), m.n()); }

/// Haar-distributed orthogonal matrix: Gram-Schmidt on a Gaussian matrix
/// (equivalently QR with a positive diagonal in R).
inline DenseMatrix random_orthogonal(int n, CounterRng& rng)
{
    DenseMatrix g(n);
    for (double& x : g.data())
        x = rng.normal();
    for (int j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (int k = 0; k < j; ++k) {
                double dot = 0.0;
                for (int i = 0; i < n; ++i)
                    dot += g(i, k) * g(i, j);
                for (int i = 0; i < n; ++i)
                    g(i, j) -= dot * g(i, k);
            }
        double norm = 0.0;
        for (int i = 0; i < n; ++i)
            norm += g(i, j) * g(i, j);
        norm = std::sqrt(norm);
        for (int i = 0; i < n; ++i)
            g(i, j) /= norm;
    }
    return g;
}

} // namespace corank
