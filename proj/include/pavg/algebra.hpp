#pragma once

#include <complex>
#include <string>
#include <vector>

#include "pavg/exact.hpp"

namespace pavg {

// ---------------------------------------------------------------------------
// Complex polynomials and the polygon mean value identity
// ---------------------------------------------------------------------------

/// Univariate polynomial over C, coefficients ascending by degree.
struct ComplexPoly {
    std::vector<std::complex<double>> coeffs;

    ComplexPoly() = default;
    explicit ComplexPoly(std::vector<std::complex<double>> c);

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    std::complex<double> eval(std::complex<double> z) const;

    /// Upper bound on |p(w)| over |w - z| <= r; used to scale error checks.
    double magnitude_bound(std::complex<double> z, double r) const;
};

/// Average of poly over the 2n vertices z + r e^{i theta} e^{i pi j / n},
/// j = 0..2n-1. Equals poly(z) whenever n >= degree (Walsh).
std::complex<double> polygon_mean(const ComplexPoly& poly, std::complex<double> z, double r,
                                  double theta, int n);

// ---------------------------------------------------------------------------
// Trigonometric identities used by the 2D polygon averages
// ---------------------------------------------------------------------------

struct CosPowerSum {
    double numeric;      // direct term-by-term sum
    BigRat closed_form;  // (2k+2) * C(2r,r) / 4^r
};

/// Sum of cos^{2r}(a + j*2pi/(2k+2)) over j = 0..2k+1. Requires 1 <= r <= k;
/// outside that range the closed form is invalid and a domain error is thrown.
CosPowerSum cos_power_sum(int k, int r, double a);

/// Closed form for sum_{j=0}^{n-1} cos(alpha + j d); handles d = 0 (mod 2pi)
/// by returning the limit n*cos(alpha).
double cos_arith_progression_sum(double alpha, double d, int n);

BigInt binomial(int n, int k);

// ---------------------------------------------------------------------------
// Exact integer / rational polynomials
// ---------------------------------------------------------------------------

/// Integer-coefficient polynomial, coefficients ascending, exact arithmetic.
struct IntPoly {
    std::vector<BigInt> coeffs;

    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> c);
    static IntPoly from_longs(const std::vector<long long>& c);

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
    const BigInt& leading() const { return coeffs.back(); }

    BigInt eval(const BigInt& x) const;
    double eval_double(double x) const;
    IntPoly derivative() const;
    std::string to_string() const;

    bool operator==(const IntPoly& o) const { return coeffs == o.coeffs; }
};

/// Rational-coefficient polynomial (ascending).
struct RatPoly {
    std::vector<BigRat> coeffs;

    RatPoly() = default;
    explicit RatPoly(std::vector<BigRat> c);
    static RatPoly from_int(const IntPoly& p);

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    BigRat eval(const BigRat& x) const;
    double eval_double(double x) const;

    bool operator==(const RatPoly& o) const { return coeffs == o.coeffs; }
};

struct DepressResult {
    RatPoly depressed;  // monic, with the t^{deg-1} term removed
    BigRat shift;       // substitution was x = t + shift
};

/// Depress a cubic or quintic: normalize monic and apply x = t + shift with
/// shift = -c_{d-1}/d so the subleading term vanishes. Exact arithmetic.
DepressResult depress(const RatPoly& poly);
DepressResult depress(const IntPoly& poly);

/// Expanded sum_i (x - x_i)^5 with exact integer coefficients; this is the
/// derivative of sum_i (x - x_i)^6 divided by 6, i.e. the equation solved by
/// the 6-average of the data set.
IntPoly six_average_equation(const std::vector<long long>& values);

/// All integer roots of a monic integer polynomial. Real roots are isolated
/// numerically (critical-point recursion + bisection) and nearby integers are
/// confirmed by exact evaluation, so an empty result certifies that a monic
/// polynomial has no rational root.
std::vector<BigInt> integer_root_test(const IntPoly& poly);

/// Numeric real roots of an integer polynomial (ascending order). Exposed for
/// root-preservation checks on depressed polynomials.
std::vector<double> real_roots(const IntPoly& poly);
std::vector<double> real_roots_of_doubles(const std::vector<double>& coeffs);

/// The resolvent sextic deciding solvability by radicals (Dummit) for the
/// depressed quintic x^5 + 376x^3 + 72x^2 + 13460x + 156. Stored verbatim;
/// note the x^3 and x^2 coefficients coincide in the source of this fixture.
IntPoly quintic_resolvent_sextic();

/// The depressed quintic itself, as an exact fixture.
IntPoly depressed_six_average_quintic();

}  // namespace pavg
