#include <doctest.h>

#include <cmath>
#include <complex>

#include "pavg/algebra.hpp"

using Coeffs = std::vector<std::complex<double>>;
#include "pavg/rng.hpp"

using namespace pavg;

namespace {

ComplexPoly random_poly(Rng& rng, int degree) {
    std::vector<std::complex<double>> c(static_cast<std::size_t>(degree) + 1);
    for (auto& x : c) x = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    if (std::abs(c.back()) < 0.1) c.back() += std::complex<double>(0.5, -0.25);
    return ComplexPoly(std::move(c));
}

// Oracle for the derivative relation: expanded sum_i (x - x_i)^6.
IntPoly sum_sixth_powers(const std::vector<long long>& values) {
    std::vector<BigInt> c(7, BigInt(0));
    for (long long t : values) {
        BigInt power = 1;  // (-t)^k
        for (int k = 0; k <= 6; ++k) {
            c[static_cast<std::size_t>(6 - k)] += binomial(6, k) * power;
            power *= BigInt(-t);
        }
    }
    return IntPoly(std::move(c));
}

// Brute-force oracle: integer roots of a monic polynomial via divisors of the
// constant term (plus zero).
std::vector<BigInt> divisor_search_roots(const IntPoly& p) {
    std::vector<BigInt> roots;
    BigInt c0 = p.coeffs.front();
    if (c0 == 0) {
        roots.push_back(0);
        // factor out x until the constant term is nonzero
        IntPoly q = p;
        while (!q.coeffs.empty() && q.coeffs.front() == 0)
            q.coeffs.erase(q.coeffs.begin());
        if (!q.coeffs.empty()) {
            for (const BigInt& r : divisor_search_roots(IntPoly(q.coeffs)))
                if (r != 0) roots.push_back(r);
        }
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    long long n = std::llabs(c0.convert_to<long long>());
    for (long long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        for (long long cand : {d, n / d})
            for (long long sgn : {1LL, -1LL})
                if (p.eval(BigInt(sgn * cand)) == 0) roots.emplace_back(sgn * cand);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace

// ---------------------------------------------------------------------------
// Walsh polygon mean
// ---------------------------------------------------------------------------

TEST_CASE("polygon mean: z^2 over a square and constants") {
    ComplexPoly sq(Coeffs{{0, 0}, {0, 0}, {1, 0}});
    std::complex<double> z{0.7, -1.2};
    CHECK(std::abs(polygon_mean(sq, z, 1.3, 0.5, 2) - z * z) < 1e-13);

    ComplexPoly c(Coeffs{{3.5, -1.0}});
    CHECK(std::abs(polygon_mean(c, z, 2.0, 0.0, 3) - std::complex<double>(3.5, -1.0)) < 1e-14);
}

TEST_CASE("polygon mean: random degree-5 polynomial on a 10-gon") {
    Rng rng(1);
    ComplexPoly p = random_poly(rng, 5);
    std::complex<double> z{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    std::complex<double> mean = polygon_mean(p, z, 0.7, 0.3, 5);
    CHECK(std::abs(mean - p.eval(z)) / p.magnitude_bound(z, 0.7) < 1e-11);
}

TEST_CASE("polygon mean equals direct evaluation for 200 random tuples") {
    Rng rng(2);
    for (int t = 0; t < 200; ++t) {
        int deg = 1 + static_cast<int>(rng.uniform() * 8);
        ComplexPoly p = random_poly(rng, deg);
        std::complex<double> z{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        double r = rng.uniform(0.05, 2.0);
        double theta = rng.uniform(0.0, 2 * M_PI);
        int n = deg + static_cast<int>(rng.uniform() * 4);
        std::complex<double> mean = polygon_mean(p, z, r, theta, n);
        CHECK(std::abs(mean - p.eval(z)) <= 1e-10 * p.magnitude_bound(z, r));
    }
}

TEST_CASE("polygon mean fails when the polygon has too few vertices") {
    // z^2 on a 2-gon: mean = z^2 + (r e^{i theta})^2, off by exactly r^2.
    ComplexPoly sq(Coeffs{{0, 0}, {0, 0}, {1, 0}});
    std::complex<double> z{0.3, -0.2};
    double r = 0.7;
    std::complex<double> mean = polygon_mean(sq, z, r, 0.4, 1);
    CHECK(std::abs(mean - sq.eval(z)) == doctest::Approx(r * r).epsilon(1e-12));
}

// ---------------------------------------------------------------------------
// Trigonometric sums
// ---------------------------------------------------------------------------

TEST_CASE("cos power sum: pinned values") {
    // k=1, r=1: cos^2 over the 4th roots of unity sums to 2 for every phase
    CHECK(to_double(cos_power_sum(1, 1, 0.37).closed_form) == doctest::Approx(2.0));
    CHECK(cos_power_sum(1, 1, 1.234).numeric == doctest::Approx(2.0).epsilon(1e-14));

    // k=2, r=2: the hexagon's cos^4 sum is 18/8
    CosPowerSum s = cos_power_sum(2, 2, 0.0);
    CHECK(s.closed_form == BigRat(18, 8));
    CHECK(s.numeric == doctest::Approx(2.25).epsilon(1e-14));

    // k=5, r=3: 12 * C(6,3) / 64 = 3.75
    CHECK(to_double(cos_power_sum(5, 3, 0.37).closed_form) == doctest::Approx(3.75));
    CHECK(cos_power_sum(5, 3, 0.37).numeric == doctest::Approx(3.75).epsilon(1e-13));
}

TEST_CASE("cos power sum matches the closed form for all 1 <= r <= k <= 12") {
    Rng rng(3);
    for (int k = 1; k <= 12; ++k)
        for (int r = 1; r <= k; ++r)
            for (int rep = 0; rep < 20; ++rep) {
                double a = rng.uniform(0.0, 2 * M_PI);
                CosPowerSum s = cos_power_sum(k, r, a);
                CHECK(std::abs(s.numeric - to_double(s.closed_form)) <= 1e-12 * (2 * k + 2));
            }
}

TEST_CASE("cos power sum identity fails outside the lemma's range") {
    // r = k + 1 is rejected; the raw sums genuinely disagree: for k=1, a=0,
    // sum cos^4 over 4 points = 2 while the formula would give 1.5.
    CHECK_THROWS_AS(cos_power_sum(1, 2, 0.0), std::domain_error);
    double raw = 0.0;
    for (int j = 0; j < 4; ++j) raw += std::pow(std::cos(j * M_PI / 2.0), 4);
    CHECK(raw == doctest::Approx(2.0));
    CHECK(to_double(BigRat(BigInt(4) * binomial(4, 2), BigInt(16))) == doctest::Approx(1.5));
}

TEST_CASE("cosine arithmetic progression sum") {
    // full turn: zero regardless of alpha
    for (double alpha : {0.0, 0.9, 2.4})
        CHECK(std::abs(cos_arith_progression_sum(alpha, 2 * M_PI / 7, 7)) < 1e-13);

    CHECK(cos_arith_progression_sum(0.8, 0.3, 1) == doctest::Approx(std::cos(0.8)));

    double direct = 0.0;
    for (int k = 0; k < 7; ++k) direct += std::cos(0.2 + 0.5 * k);
    CHECK(cos_arith_progression_sum(0.2, 0.5, 7) == doctest::Approx(direct).epsilon(1e-14));

    CHECK(cos_arith_progression_sum(0.4, 0.0, 5) == doctest::Approx(5 * std::cos(0.4)));
    CHECK(cos_arith_progression_sum(0.4, 4 * M_PI, 5) == doctest::Approx(5 * std::cos(0.4)));
}

// ---------------------------------------------------------------------------
// Exact polynomial pipeline
// ---------------------------------------------------------------------------

TEST_CASE("depress: cube of a binomial collapses") {
    IntPoly p = IntPoly::from_longs({-1, 3, -3, 1});  // (x-1)^3
    DepressResult d = depress(p);
    CHECK(d.shift == BigRat(1));
    CHECK(d.depressed == RatPoly({BigRat(0), BigRat(0), BigRat(0), BigRat(1)}));
}

TEST_CASE("depress: cubic characterization of the 4-average of {0,0,3}") {
    // sum (x - t)^3 over {0,0,3} = 3x^3 - 9x^2 + 27x - 27; depressed by the
    // mean this is t^3 + 6t - 2 with p = 3*variance = 6 and q = -sigma^3*kappa = -2.
    IntPoly cubic = IntPoly::from_longs({-27, 27, -9, 3});
    DepressResult d = depress(cubic);
    CHECK(d.shift == BigRat(1));
    CHECK(d.depressed == RatPoly({BigRat(-2), BigRat(6), BigRat(0), BigRat(1)}));
}

TEST_CASE("depress rejects unsupported degrees") {
    CHECK_THROWS_AS(depress(IntPoly::from_longs({1, 2, 1})), std::domain_error);
    CHECK_THROWS_AS(depress(IntPoly::from_longs({1, 1, 0, 0, 1, 0, 1})), std::domain_error);
}

TEST_CASE("depress preserves roots up to the shift") {
    Rng rng(4);
    for (int t = 0; t < 50; ++t) {
        int deg = rng.uniform() < 0.5 ? 3 : 5;
        std::vector<long long> c(static_cast<std::size_t>(deg) + 1);
        for (auto& x : c) x = static_cast<long long>(rng.uniform(-9, 9));
        if (c.back() == 0) c.back() = 1;
        IntPoly p = IntPoly::from_longs(c);
        DepressResult d = depress(p);

        std::vector<double> orig = real_roots(p);
        std::vector<double> dep;
        for (double r : orig) dep.push_back(r - to_double(d.shift));
        for (double r : dep)
            CHECK(std::abs(d.depressed.eval_double(r)) <
                  1e-9 * std::max(1.0, std::pow(std::abs(r) + 1.0, deg)));
    }
}

TEST_CASE("six_average_equation: small closed cases") {
    CHECK(six_average_equation({0}) == IntPoly::from_longs({0, 0, 0, 0, 0, 1}));
    // (x+1)^5 + (x-1)^5 = 2x^5 + 20x^3 + 10x
    CHECK(six_average_equation({-1, 1}) == IntPoly::from_longs({0, 10, 0, 20, 0, 2}));
    CHECK_THROWS_AS(six_average_equation({}), std::invalid_argument);
}

TEST_CASE("six_average_equation is the sixth-power sum derivative over 6") {
    Rng rng(5);
    for (int t = 0; t < 25; ++t) {
        std::vector<long long> vals;
        int n = 1 + static_cast<int>(rng.uniform() * 6);
        for (int i = 0; i < n; ++i) vals.push_back(static_cast<long long>(rng.uniform(-20, 20)));
        IntPoly lhs = six_average_equation(vals);
        IntPoly h_prime = sum_sixth_powers(vals).derivative();
        std::vector<BigInt> scaled;
        for (const BigInt& c : lhs.coeffs) scaled.push_back(c * 6);
        CHECK(IntPoly(scaled) == h_prime);
    }
}

TEST_CASE("the data set {1,6,11,13,19} depresses to the stored quintic") {
    IntPoly eq = six_average_equation({1, 6, 11, 13, 19});
    // raw equation has leading coefficient 5 (one x^5 per data point)
    CHECK(eq.leading() == 5);
    DepressResult d = depress(eq);
    CHECK(d.shift == BigRat(10));
    CHECK(d.depressed == RatPoly::from_int(depressed_six_average_quintic()));
}

TEST_CASE("integer_root_test: planted and irrational roots") {
    // (x - 3)(x + 4)(x^2 + 1) = x^4 + x^3 - 11x^2 + x - 12
    IntPoly p = IntPoly::from_longs({-12, 1, -11, 1, 1});
    std::vector<BigInt> roots = integer_root_test(p);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == -4);
    CHECK(roots[1] == 3);

    CHECK(integer_root_test(IntPoly::from_longs({-2, 0, 1})).empty());  // x^2 - 2

    // double root: (x - 3)^2 (x^2 + 1)
    IntPoly dbl = IntPoly::from_longs({9, -6, 10, -6, 1});
    std::vector<BigInt> droots = integer_root_test(dbl);
    REQUIRE(droots.size() == 1);
    CHECK(droots[0] == 3);

    // zero constant term: x^3 - 4x = x(x-2)(x+2)
    std::vector<BigInt> z = integer_root_test(IntPoly::from_longs({0, -4, 0, 1}));
    REQUIRE(z.size() == 3);
    CHECK(z[0] == -2);
    CHECK(z[1] == 0);
    CHECK(z[2] == 2);
}

TEST_CASE("integer_root_test contract") {
    CHECK_THROWS_AS(integer_root_test(IntPoly()), std::domain_error);
    CHECK_THROWS_AS(integer_root_test(IntPoly::from_longs({1, 2})), std::domain_error);  // not monic
}

TEST_CASE("integer_root_test agrees with divisor search on random monic polynomials") {
    Rng rng(6);
    for (int t = 0; t < 60; ++t) {
        int deg = 2 + static_cast<int>(rng.uniform() * 4);
        std::vector<BigInt> c(static_cast<std::size_t>(deg) + 1);
        // plant a couple of integer roots, fill the rest randomly
        IntPoly p = IntPoly::from_longs({1});
        int planted = static_cast<int>(rng.uniform() * 3);
        for (int i = 0; i < planted && p.degree() < deg; ++i) {
            long long r = static_cast<long long>(rng.uniform(-25, 25));
            std::vector<BigInt> q(p.coeffs.size() + 1, BigInt(0));
            for (std::size_t j = 0; j < p.coeffs.size(); ++j) {
                q[j + 1] += p.coeffs[j];
                q[j] -= p.coeffs[j] * r;
            }
            p = IntPoly(q);
        }
        while (p.degree() < deg) {
            std::vector<BigInt> q(p.coeffs.size() + 1, BigInt(0));
            long long a = static_cast<long long>(rng.uniform(-9, 9));
            for (std::size_t j = 0; j < p.coeffs.size(); ++j) {
                q[j + 1] += p.coeffs[j];
                q[j] += p.coeffs[j] * a;
            }
            // keep it monic with an x + a factor
            p = IntPoly(q);
        }
        if (p.coeffs.front() == 0 || (p.coeffs.front() < 1000000 && p.coeffs.front() > -1000000)) {
            std::vector<BigInt> mine = integer_root_test(p);
            std::vector<BigInt> brute = divisor_search_roots(p);
            CHECK(mine == brute);
        }
    }
}

TEST_CASE("the stored resolvent sextic has no integer (hence no rational) root") {
    IntPoly p20 = quintic_resolvent_sextic();
    CHECK(p20.degree() == 6);
    CHECK(p20.leading() == 1);
    // coefficients as stored: the x^3 and x^2 entries are the same value
    CHECK(p20.coeffs[3] == p20.coeffs[2]);
    CHECK(integer_root_test(p20).empty());
}

TEST_CASE("IntPoly printing") {
    CHECK(depressed_six_average_quintic().to_string() == "x^5 + 376x^3 + 72x^2 + 13460x + 156");
    CHECK(IntPoly::from_longs({-1, 0, 1}).to_string() == "x^2 - 1");
    CHECK(IntPoly().to_string() == "0");
}
