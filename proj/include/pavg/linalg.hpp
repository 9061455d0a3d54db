#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pavg {

/// Dense n-vector. Dimensions in this library are tiny (2..6).
using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec scaled(const Vec& a, double s) {
    Vec r = a;
    for (double& x : r) x *= s;
    return r;
}

inline Vec negated(const Vec& a) { return scaled(a, -1.0); }

inline Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("add: dimension mismatch");
    Vec r = a;
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

/// a + s*b
inline Vec axpy(const Vec& a, double s, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("axpy: dimension mismatch");
    Vec r = a;
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += s * b[i];
    return r;
}

inline Vec normalized(const Vec& a) {
    double n = norm(a);
    if (n == 0.0) throw std::invalid_argument("normalized: zero vector");
    return scaled(a, 1.0 / n);
}

/// Dense symmetric matrix, full row-major storage.
struct SymMat {
    int n = 0;
    std::vector<double> a;  // n*n

    SymMat() = default;
    explicit SymMat(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim, 0.0) {
        if (dim <= 0) throw std::invalid_argument("SymMat: dimension must be positive");
    }

    static SymMat identity(int dim) {
        SymMat m(dim);
        for (int i = 0; i < dim; ++i) m.a[static_cast<std::size_t>(i) * dim + i] = 1.0;
        return m;
    }

    static SymMat diagonal(const Vec& d) {
        SymMat m(static_cast<int>(d.size()));
        for (int i = 0; i < m.n; ++i) m.a[static_cast<std::size_t>(i) * m.n + i] = d[static_cast<std::size_t>(i)];
        return m;
    }

    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    /// Sets both (i,j) and (j,i).
    void set(int i, int j, double v) {
        a[static_cast<std::size_t>(i) * n + j] = v;
        a[static_cast<std::size_t>(j) * n + i] = v;
    }

    double trace() const {
        double t = 0.0;
        for (int i = 0; i < n; ++i) t += (*this)(i, i);
        return t;
    }

    Vec apply(const Vec& v) const {
        if (static_cast<int>(v.size()) != n) throw std::invalid_argument("SymMat::apply: dimension mismatch");
        Vec r(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += (*this)(i, j) * v[static_cast<std::size_t>(j)];
            r[static_cast<std::size_t>(i)] = s;
        }
        return r;
    }

    /// <A v, v>
    double quad(const Vec& v) const { return dot(apply(v), v); }

    bool is_symmetric(double tol = 0.0) const {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
        return true;
    }

    /// Congruence Q^T A Q for a general square Q (row-major n*n).
    SymMat congruence(const std::vector<double>& q) const {
        SymMat r(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l)
                        s += q[static_cast<std::size_t>(k) * n + i] * (*this)(k, l) * q[static_cast<std::size_t>(l) * n + j];
                r.a[static_cast<std::size_t>(i) * n + j] = s;
            }
        return r;
    }
};

/// Cholesky-based positive definiteness test; used as a spanning check on
/// second-moment matrices of direction sets.
inline bool positive_definite(const SymMat& m, double tol = 1e-12) {
    const int n = m.n;
    std::vector<double> l(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = m(i, j);
            for (int k = 0; k < j; ++k) s -= l[static_cast<std::size_t>(i) * n + k] * l[static_cast<std::size_t>(j) * n + k];
            if (i == j) {
                if (s <= tol) return false;
                l[static_cast<std::size_t>(i) * n + j] = std::sqrt(s);
            } else {
                l[static_cast<std::size_t>(i) * n + j] = s / l[static_cast<std::size_t>(j) * n + j];
            }
        }
    }
    return true;
}

}  // namespace pavg
