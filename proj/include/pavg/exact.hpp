#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace pavg {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline double to_double(const BigRat& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& i) { return i.convert_to<double>(); }

/// Element of the quadratic field Q[sqrt(5)]: a + b*sqrt(5) with rational a, b.
/// Used where golden-ratio coordinates must be compared exactly.
struct Q5 {
    BigRat a{0};
    BigRat b{0};

    Q5() = default;
    Q5(BigRat ra, BigRat rb) : a(std::move(ra)), b(std::move(rb)) {}
    static Q5 integer(long v) { return Q5(BigRat(v), BigRat(0)); }
    /// (p + q*sqrt(5)) / 2 — the natural representation of golden-ratio coordinates.
    static Q5 half(long p, long q) { return Q5(BigRat(p, 2), BigRat(q, 2)); }

    static Q5 golden() { return half(1, 1); }           // phi
    static Q5 golden_inv() { return half(-1, 1); }      // 1/phi = phi - 1
    static Q5 golden_sq() { return half(3, 1); }        // phi^2 = phi + 1
    static Q5 golden_inv_sq() { return half(3, -1); }   // phi^-2 = 2 - phi
    static Q5 sqrt5() { return Q5(BigRat(0), BigRat(1)); }

    Q5 operator-() const { return Q5(-a, -b); }
    Q5 operator+(const Q5& o) const { return Q5(a + o.a, b + o.b); }
    Q5 operator-(const Q5& o) const { return Q5(a - o.a, b - o.b); }
    Q5 operator*(const Q5& o) const { return Q5(a * o.a + 5 * b * o.b, a * o.b + b * o.a); }
    Q5 operator*(const BigRat& r) const { return Q5(a * r, b * r); }
    bool operator==(const Q5& o) const { return a == o.a && b == o.b; }
    bool operator!=(const Q5& o) const { return !(*this == o); }
    bool is_zero() const { return a == 0 && b == 0; }

    /// 1/(a + b sqrt5) = (a - b sqrt5) / (a^2 - 5 b^2); nonzero denominator
    /// is automatic for nonzero elements (sqrt5 is irrational).
    Q5 inverse() const {
        if (is_zero()) throw std::domain_error("Q5: division by zero");
        BigRat den = a * a - 5 * b * b;
        return Q5(a / den, -b / den);
    }
    Q5 operator/(const Q5& o) const { return *this * o.inverse(); }

    double value() const { return to_double(a) + to_double(b) * std::sqrt(5.0); }
};

inline std::ostream& operator<<(std::ostream& os, const Q5& q) {
    return os << q.a << " + " << q.b << "*sqrt(5)";
}

}  // namespace pavg
