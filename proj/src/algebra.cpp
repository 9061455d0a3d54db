#include "pavg/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pavg {

// ---------------------------------------------------------------------------
// ComplexPoly / polygon mean
// ---------------------------------------------------------------------------

ComplexPoly::ComplexPoly(std::vector<std::complex<double>> c) : coeffs(std::move(c)) {
    while (coeffs.size() > 1 && coeffs.back() == std::complex<double>(0.0, 0.0)) coeffs.pop_back();
    if (coeffs.empty()) coeffs.emplace_back(0.0, 0.0);
}

std::complex<double> ComplexPoly::eval(std::complex<double> z) const {
    std::complex<double> acc(0.0, 0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

double ComplexPoly::magnitude_bound(std::complex<double> z, double r) const {
    double rho = std::abs(z) + r, s = 0.0, pw = 1.0;
    for (const auto& c : coeffs) {
        s += std::abs(c) * pw;
        pw *= rho;
    }
    return s;
}

std::complex<double> polygon_mean(const ComplexPoly& poly, std::complex<double> z, double r,
                                  double theta, int n) {
    if (n < 1) throw std::invalid_argument("polygon_mean: n >= 1 required");
    if (!(r > 0.0)) throw std::invalid_argument("polygon_mean: r > 0 required");
    std::complex<double> sum(0.0, 0.0);
    const std::complex<double> base = std::polar(r, theta);
    for (int j = 0; j < 2 * n; ++j)
        sum += poly.eval(z + base * std::polar(1.0, M_PI * j / n));
    return sum / static_cast<double>(2 * n);
}

// ---------------------------------------------------------------------------
// Trigonometric sums
// ---------------------------------------------------------------------------

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

CosPowerSum cos_power_sum(int k, int r, double a) {
    if (k < 1) throw std::domain_error("cos_power_sum: k >= 1 required");
    if (r < 1 || r > k)
        throw std::domain_error("cos_power_sum: requires 1 <= r <= k (identity fails otherwise)");

    const int count = 2 * k + 2;
    double numeric = 0.0;
    for (int j = 0; j < count; ++j)
        numeric += std::pow(std::cos(a + j * 2.0 * M_PI / count), 2 * r);

    BigInt num = BigInt(count) * binomial(2 * r, r);
    BigInt den = 1;
    den <<= 2 * r;  // 4^r
    return {numeric, BigRat(num, den)};
}

double cos_arith_progression_sum(double alpha, double d, int n) {
    if (n < 1) throw std::invalid_argument("cos_arith_progression_sum: n >= 1 required");
    double s = std::sin(0.5 * d);
    if (std::abs(s) < 1e-12) return n * std::cos(alpha);  // d = 0 (mod 2pi)
    return std::sin(0.5 * n * d) / s * std::cos(alpha + 0.5 * (n - 1) * d);
}

// ---------------------------------------------------------------------------
// Integer / rational polynomials
// ---------------------------------------------------------------------------

IntPoly::IntPoly(std::vector<BigInt> c) : coeffs(std::move(c)) {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

IntPoly IntPoly::from_longs(const std::vector<long long>& c) {
    std::vector<BigInt> v(c.begin(), c.end());
    return IntPoly(std::move(v));
}

BigInt IntPoly::eval(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double IntPoly::eval_double(double x) const {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
}

IntPoly IntPoly::derivative() const {
    if (coeffs.size() <= 1) return IntPoly();
    std::vector<BigInt> d(coeffs.size() - 1);
    for (std::size_t i = 1; i < coeffs.size(); ++i) d[i - 1] = coeffs[i] * static_cast<long>(i);
    return IntPoly(std::move(d));
}

std::string IntPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const BigInt& c = coeffs[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        BigInt mag = c < 0 ? BigInt(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (mag != 1 || i == 0) os << mag;
        if (i >= 1) {
            os << "x";
            if (i >= 2) os << "^" << i;
        }
    }
    return os.str();
}

RatPoly::RatPoly(std::vector<BigRat> c) : coeffs(std::move(c)) {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

RatPoly RatPoly::from_int(const IntPoly& p) {
    std::vector<BigRat> c(p.coeffs.begin(), p.coeffs.end());
    return RatPoly(std::move(c));
}

BigRat RatPoly::eval(const BigRat& x) const {
    BigRat acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double RatPoly::eval_double(double x) const {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
}

DepressResult depress(const RatPoly& poly) {
    const int deg = poly.degree();
    if (deg != 3 && deg != 5)
        throw std::domain_error("depress: only cubic and quintic polynomials are handled");

    std::vector<BigRat> c = poly.coeffs;
    const BigRat lead = c.back();
    for (BigRat& x : c) x /= lead;  // monic

    const BigRat shift = -c[static_cast<std::size_t>(deg - 1)] / deg;

    // Taylor shift: coefficients of p(t + shift).
    for (int i = 0; i < deg; ++i)
        for (int j = deg - 1; j >= i; --j)
            c[static_cast<std::size_t>(j)] += shift * c[static_cast<std::size_t>(j + 1)];

    if (c[static_cast<std::size_t>(deg - 1)] != 0)
        throw std::logic_error("depress: subleading coefficient did not vanish");

    return {RatPoly(std::move(c)), shift};
}

DepressResult depress(const IntPoly& poly) { return depress(RatPoly::from_int(poly)); }

IntPoly six_average_equation(const std::vector<long long>& values) {
    if (values.empty()) throw std::invalid_argument("six_average_equation: empty input");
    std::vector<BigInt> c(6, BigInt(0));
    for (long long t : values) {
        BigInt bt = t;
        BigInt power = 1;  // (-t)^k
        for (int k = 0; k <= 5; ++k) {
            c[static_cast<std::size_t>(5 - k)] += binomial(5, k) * power;
            power *= -bt;
        }
    }
    return IntPoly(std::move(c));
}

// ---------------------------------------------------------------------------
// Real root isolation (numeric) and exact integer roots
// ---------------------------------------------------------------------------

namespace {

double horner(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double bisect_root(const std::vector<double>& c, double a, double b, double fa, double fb) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    for (int it = 0; it < 200; ++it) {
        double m = 0.5 * (a + b);
        if (m <= std::min(a, b) || m >= std::max(a, b)) break;
        double fm = horner(c, m);
        if (fm == 0.0) return m;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

std::vector<double> real_roots_of_doubles(const std::vector<double>& coeffs_in) {
    std::vector<double> c = coeffs_in;
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    if (c.size() <= 1) return {};
    const int deg = static_cast<int>(c.size()) - 1;
    if (deg == 1) return {-c[0] / c[1]};

    // Critical points from the derivative, recursively.
    std::vector<double> dc(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) dc[i - 1] = c[i] * static_cast<double>(i);
    std::vector<double> crit = real_roots_of_doubles(dc);

    double maxratio = 0.0;
    for (int i = 0; i < deg; ++i)
        maxratio = std::max(maxratio, std::abs(c[static_cast<std::size_t>(i)] / c.back()));
    const double bound = 1.0 + maxratio;

    std::vector<double> pts;
    pts.push_back(-bound);
    for (double t : crit)
        if (t > -bound && t < bound) pts.push_back(t);
    pts.push_back(bound);
    std::sort(pts.begin(), pts.end());

    std::vector<double> roots;
    double fa = horner(c, pts[0]);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double fb = horner(c, pts[i + 1]);
        if (fa == 0.0) {
            roots.push_back(pts[i]);
        } else if (fa * fb < 0.0) {
            roots.push_back(bisect_root(c, pts[i], pts[i + 1], fa, fb));
        }
        fa = fb;
    }
    if (fa == 0.0) roots.push_back(pts.back());

    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [&](double a, double b) {
                                return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a));
                            }),
                roots.end());
    return roots;
}

std::vector<double> real_roots(const IntPoly& poly) {
    std::vector<double> c;
    c.reserve(poly.coeffs.size());
    for (const BigInt& b : poly.coeffs) {
        double d = to_double(b);
        if (!std::isfinite(d))
            throw std::domain_error("real_roots: coefficient too large for numeric isolation");
        c.push_back(d);
    }
    return real_roots_of_doubles(c);
}

std::vector<BigInt> integer_root_test(const IntPoly& poly) {
    if (poly.is_zero()) throw std::domain_error("integer_root_test: zero polynomial");
    if (poly.leading() != 1)
        throw std::domain_error("integer_root_test: polynomial must be monic");

    // Candidate integers sit near numeric real roots of the polynomial and of
    // its derivatives (the latter catch roots of higher multiplicity).
    std::set<long long> candidates;
    candidates.insert(0);
    IntPoly cur = poly;
    while (cur.degree() >= 1) {
        for (double r : real_roots(cur)) {
            if (std::abs(r) > 9.0e18) continue;  // outside long long; cannot be exact anyway here
            long long base = static_cast<long long>(std::llround(r));
            for (long long d = -1; d <= 1; ++d) candidates.insert(base + d);
        }
        cur = cur.derivative();
    }

    std::vector<BigInt> roots;
    for (long long m : candidates)
        if (poly.eval(BigInt(m)) == 0) roots.emplace_back(m);
    std::sort(roots.begin(), roots.end());
    return roots;
}

// ---------------------------------------------------------------------------
// Fixtures for the 6-average solvability pipeline
// ---------------------------------------------------------------------------

IntPoly depressed_six_average_quintic() {
    return IntPoly({BigInt(156), BigInt(13460), BigInt(72), BigInt(376), BigInt(0), BigInt(1)});
}

IntPoly quintic_resolvent_sextic() {
    // Dummit's resolvent sextic for x^5 + 376x^3 + 72x^2 + 13460x + 156,
    // stored verbatim from its source; the x^3 and x^2 coefficients coincide
    // there (kept as printed rather than silently corrected).
    return IntPoly({BigInt("7102938318637196554440048"), BigInt("-2545206831640273748008"),
                    BigInt("-633810584502272"), BigInt("-633810584502272"),
                    BigInt("-4167324992"), BigInt("107680"), BigInt(1)});
}

}  // namespace pavg
