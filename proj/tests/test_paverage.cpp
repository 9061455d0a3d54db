#include <doctest.h>

#include <cmath>

#include "pavg/paverage.hpp"
#include "pavg/rng.hpp"
#include "test_support.hpp"

using namespace pavg;
using testsupport::golden_section_p_average;
using testsupport::random_sample;

namespace {
const double kFourAvg003 = 3.0 / (1.0 + std::cbrt(2.0));  // root of (3-x)^3 = 2x^3
}

TEST_CASE("characterization residual: two-point symmetry and direct values") {
    WeightedSample s({0.0, 1.0});
    CHECK(characterization_residual(s, 0.5, 2.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(characterization_residual(s, 0.0, 2.0) == doctest::Approx(1.0));
}

TEST_CASE("characterization residual vanishes at the cubic root for {0,0,3}") {
    WeightedSample s({0.0, 0.0, 3.0});
    CHECK(std::abs(characterization_residual(s, kFourAvg003, 4.0)) <= 1e-12);
}

TEST_CASE("characterization residual changes sign across the bracket") {
    Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        WeightedSample s = random_sample(rng);
        if (s.min_value() == s.max_value()) continue;
        double p = rng.uniform(1.1, 8.0);
        CHECK(characterization_residual(s, s.min_value(), p) >= 0.0);
        CHECK(characterization_residual(s, s.max_value(), p) <= 0.0);
    }
}

TEST_CASE("p_average closed cases") {
    CHECK(p_average(WeightedSample({0.0, 1.0}), 2.0).value == doctest::Approx(0.5));

    PAverageResult r = p_average(WeightedSample({0.0, 0.0, 3.0}), 4.0, 1e-13);
    CHECK(r.value == doctest::Approx(kFourAvg003).epsilon(1e-11));
    CHECK(std::abs(r.residual) < 1e-10);

    PAverageResult c = p_average(WeightedSample({5.0, 5.0, 5.0}, {2.0, 0.5, 1.0}), 3.7);
    CHECK(c.value == 5.0);
    CHECK(c.dispersion == 0.0);
}

TEST_CASE("p_average matches golden-section minimization") {
    // the golden-section oracle localizes a minimum only to ~sqrt(machine eps)
    // relative to the data scale, so the comparison tolerance is absolute
    Rng rng(42);
    for (int t = 0; t < 100; ++t) {
        WeightedSample s = random_sample(rng, 2, 12);
        double p = rng.uniform(1.5, 7.0);
        double direct = golden_section_p_average(s, p, 1e-12);
        double scale = std::max({1.0, std::abs(s.min_value()), std::abs(s.max_value())});
        CHECK(std::abs(p_average(s, p, 1e-13).value - direct) <= 2e-7 * scale);
    }
}

TEST_CASE("p = infinity is the midrange with sup dispersion") {
    PAverageResult r = p_average(WeightedSample({-3.0, 0.0, 5.0}), kInfinity);
    CHECK(r.value == doctest::Approx(1.0));
    CHECK(r.dispersion == doctest::Approx(4.0));
}

TEST_CASE("p_average rejects invalid input") {
    CHECK_THROWS_AS(WeightedSample({1.0, std::nan("")}), std::domain_error);
    CHECK_THROWS_AS(WeightedSample({1.0}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(WeightedSample({}), std::invalid_argument);
    CHECK_THROWS_AS(p_average(WeightedSample({1.0, 2.0}), 1.0), std::domain_error);
}

TEST_CASE("four_average_closed_form: symmetric samples return the mean") {
    CHECK(four_average_closed_form(WeightedSample({-1.0, 1.0})) == doctest::Approx(0.0));
    CHECK(four_average_closed_form(WeightedSample({2.0, 4.0})) == doctest::Approx(3.0));
    CHECK(four_average_closed_form(WeightedSample({7.0, 7.0})) == 7.0);
}

TEST_CASE("four_average_closed_form equals the variational 4-average") {
    WeightedSample a({0.0, 0.0, 3.0});
    CHECK(four_average_closed_form(a) == doctest::Approx(kFourAvg003).epsilon(1e-12));
    CHECK(std::abs(four_average_closed_form(a) - p_average(a, 4.0, 1e-13).value) <= 1e-10);

    WeightedSample b({1.0, 6.0, 11.0, 13.0, 19.0});
    CHECK(std::abs(four_average_closed_form(b) - p_average(b, 4.0, 1e-12).value) <= 1e-10);

    Rng rng(7);
    for (int t = 0; t < 300; ++t) {
        WeightedSample s = random_sample(rng);
        CHECK(std::abs(four_average_closed_form(s) - p_average(s, 4.0, 1e-13).value) <= 1e-10);
    }
}

TEST_CASE("four_average_closed_form is stable for extreme skewness") {
    // one far outlier drives |kappa| up; the two Cardano branches must agree
    WeightedSample s({0.0, 0.0, 0.0, 0.0, 1e6});
    double cf = four_average_closed_form(s);
    double newton = p_average(s, 4.0, 1e-9).value;
    CHECK(cf == doctest::Approx(newton).epsilon(1e-9));
    WeightedSample neg({0.0, 0.0, 0.0, 0.0, -1e6});
    CHECK(four_average_closed_form(neg) == doctest::Approx(-cf).epsilon(1e-12));
}

TEST_CASE("gamma_median closed cases") {
    CHECK(gamma_median({0.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-15));
    // p(c) = c(c-1) - (2-c)(4-c) = 5c - 8
    CHECK(gamma_median({0.0, 1.0, 2.0, 4.0}) == doctest::Approx(1.6).epsilon(1e-15));

    double g = gamma_median({1.0, 6.0, 11.0, 13.0, 19.0, 25.0});
    CHECK(g > 11.0);
    CHECK(g < 13.0);
}

TEST_CASE("gamma_median input contract") {
    CHECK_THROWS_AS(gamma_median({0.0, 1.0, 2.0}), std::domain_error);        // odd count
    CHECK_THROWS_AS(gamma_median({0.0, 1.0, 1.0, 2.0}), std::domain_error);   // duplicate
    CHECK_THROWS_AS(gamma_median({1.0, 0.0, 2.0, 3.0}), std::domain_error);   // unsorted
}

TEST_CASE("gamma_median stays strictly inside the central gap") {
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
        int k = 1 + static_cast<int>(rng.uniform() * 4);
        std::vector<double> v;
        double x = rng.uniform(-5.0, 5.0);
        for (int i = 0; i < 2 * k; ++i) {
            v.push_back(x);
            x += rng.uniform(0.05, 3.0);
        }
        double g = gamma_median(v);
        CHECK(g > v[static_cast<std::size_t>(k - 1)]);
        CHECK(g < v[static_cast<std::size_t>(k)]);
    }
}

TEST_CASE("p -> 1+ limit approaches the gamma median") {
    std::vector<double> two = {0.0, 1.0};
    for (double v : p_limit_to_gamma_median(two, {1.5, 1.1, 1.01}))
        CHECK(v == doctest::Approx(0.5).epsilon(1e-12));

    std::vector<double> four = {0.0, 1.0, 2.0, 4.0};
    std::vector<double> seq = p_limit_to_gamma_median(four, {2.0, 1.5, 1.1, 1.01, 1.001});
    CHECK(seq.front() == doctest::Approx(1.75));  // p = 2: mean
    CHECK(std::abs(seq.back() - 1.6) <= 5e-3);    // p = 1.001 vs gamma median

    CHECK_THROWS_AS(p_limit_to_gamma_median(four, {2.5, 1.5}), std::domain_error);
    CHECK_THROWS_AS(p_limit_to_gamma_median(four, {1.5, 1.6}), std::domain_error);
}

TEST_CASE("stability: min <= A_p <= max") {
    Rng rng(13);
    for (int t = 0; t < 500; ++t) {
        WeightedSample s = random_sample(rng);
        double p = rng.uniform(1.05, 12.0);
        double a = p_average(s, p).value;
        CHECK(a >= s.min_value());
        CHECK(a <= s.max_value());
    }
}

TEST_CASE("affine invariance: A(l*v + c) = l*A(v) + c") {
    Rng rng(17);
    for (int t = 0; t < 300; ++t) {
        WeightedSample s = random_sample(rng, 2, 20);
        double p = rng.uniform(1.2, 9.0);
        double l = rng.uniform(-3.0, 3.0);
        double c = rng.uniform(-5.0, 5.0);
        if (std::abs(l) < 1e-3) l = 1.0;
        std::vector<double> tv;
        for (double v : s.values) tv.push_back(l * v + c);
        double lhs = p_average(WeightedSample(tv, s.weights), p, 0.0).value;
        double rhs = l * p_average(s, p, 0.0).value + c;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("monotonicity: componentwise increase never lowers the average") {
    Rng rng(19);
    for (int t = 0; t < 500; ++t) {
        WeightedSample s = random_sample(rng, 2, 20);
        double p = rng.uniform(1.2, 9.0);
        std::vector<double> up = s.values;
        int bumped = 0;
        for (double& v : up)
            if (rng.uniform() < 0.5) {
                v += rng.uniform(0.0, 2.0);
                ++bumped;
            }
        double a0 = p_average(s, p, 0.0).value;
        double a1 = p_average(WeightedSample(up, s.weights), p, 0.0).value;
        CHECK(a1 >= a0 - 1e-11);
        (void)bumped;
    }
}

TEST_CASE("strict monotonicity on a positive-weight bump (finite p)") {
    WeightedSample s({0.0, 1.0, 2.0});
    std::vector<double> up = {0.0, 1.0, 3.0};
    for (double p : {1.5, 2.0, 4.0, 6.0}) {
        double a0 = p_average(s, p, 0.0).value;
        double a1 = p_average(WeightedSample(up), p, 0.0).value;
        CHECK(a1 > a0 + 1e-6);
    }
}

TEST_CASE("perturbation bound: |A(phi) - A(psi)| <= sup|phi - psi|") {
    Rng rng(23);
    for (int t = 0; t < 500; ++t) {
        WeightedSample s = random_sample(rng, 2, 20);
        double p = rng.uniform(1.2, 9.0);
        double delta = rng.uniform(0.0, 1.0);
        std::vector<double> other = s.values;
        double actual = 0.0;
        for (double& v : other) {
            double shift = rng.uniform(-delta, delta);
            v += shift;
            actual = std::max(actual, std::abs(shift));
        }
        double a0 = p_average(s, p, 0.0).value;
        double a1 = p_average(WeightedSample(other, s.weights), p, 0.0).value;
        CHECK(std::abs(a1 - a0) <= actual + 1e-10);
    }
}

TEST_CASE("dispersion Lipschitz bound in L^p of the normalized measure") {
    Rng rng(29);
    for (int t = 0; t < 500; ++t) {
        WeightedSample s = random_sample(rng, 2, 20);
        double p = rng.uniform(1.2, 9.0);
        std::vector<double> other = s.values;
        for (double& v : other) v += rng.uniform(-1.0, 1.0);
        WeightedSample s2(other, s.weights);

        double total = s.total_weight();
        double lp = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i)
            lp += s.weights[i] / total * std::pow(std::abs(s.values[i] - other[i]), p);
        lp = std::pow(lp, 1.0 / p);

        double d0 = p_average(s, p, 0.0).dispersion;
        double d1 = p_average(s2, p, 0.0).dispersion;
        CHECK(std::abs(d0 - d1) <= lp + 1e-10);
    }
}

TEST_CASE("returned residual is a root certificate at the bracket tolerance") {
    // |F(lambda)| <= |F'|_sup * bracket_tol, with |F'| <= (p-1) sum(w) range^{p-2}
    Rng rng(37);
    for (int t = 0; t < 300; ++t) {
        WeightedSample s = random_sample(rng, 2, 20);
        if (s.min_value() == s.max_value()) continue;
        double p = rng.uniform(2.0, 10.0);
        const double tol = 1e-12;
        PAverageResult r = p_average(s, p, tol);
        double range = s.max_value() - s.min_value();
        double dbound = (p - 1.0) * s.total_weight() * std::pow(range, p - 2.0);
        CHECK(std::abs(r.residual) <= 8.0 * tol * std::max(dbound, 1.0));
    }
}

TEST_CASE("dispersion is zero iff the sample is constant") {
    Rng rng(31);
    for (int t = 0; t < 100; ++t) {
        WeightedSample s = random_sample(rng, 2, 10);
        double p = rng.uniform(1.5, 6.0);
        PAverageResult r = p_average(s, p, 0.0);
        if (s.min_value() == s.max_value())
            CHECK(r.dispersion == 0.0);
        else
            CHECK(r.dispersion > 0.0);
    }
}

// ---------------------------------------------------------------------------
// Ball averages
// ---------------------------------------------------------------------------

TEST_CASE("ball p-average of a constant field is the constant") {
    QuadratureRule rule = unit_ball_rule(2, 8, 16);
    auto f = [](const Vec&) { return 7.0; };
    CHECK(ball_paverage(f, {0.3, -0.2}, 0.5, 4.0, rule) == doctest::Approx(7.0));
    QuadratureRule rule3 = unit_ball_rule(3, 6, 12, 6);
    CHECK(ball_paverage(f, {0.0, 0.0, 0.1}, 0.4, 3.0, rule3) == doctest::Approx(7.0));
}

TEST_CASE("ball 2-average of a linear field is exact at the center") {
    QuadratureRule rule = unit_ball_rule(2, 10, 20);
    auto f = [](const Vec& x) { return 2.0 * x[0] - 0.7 * x[1] + 0.25; };
    Vec center = {0.4, -0.6};
    double expect = 2.0 * 0.4 - 0.7 * (-0.6) + 0.25;
    CHECK(ball_paverage(f, center, 0.3, 2.0, rule) == doctest::Approx(expect).epsilon(1e-13));
    // central symmetry also cancels the odd part for p = 4
    CHECK(ball_paverage(f, center, 0.3, 4.0, rule) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("ball p-average rejects non-finite fields") {
    QuadratureRule rule = unit_ball_rule(2, 4, 8);
    auto f = [](const Vec& x) { return std::sqrt(x[0]); };  // NaN on half the ball
    CHECK_THROWS_AS(ball_paverage(f, {0.0, 0.0}, 1.0, 2.0, rule), std::domain_error);
}

TEST_CASE("quadrature rule basics") {
    QuadratureRule rule = unit_ball_rule(2, 6, 12);
    double total = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        CHECK(norm(rule.nodes[i]) <= 1.0 + 1e-12);
        CHECK(rule.weights[i] > 0.0);
        total += rule.weights[i];
    }
    CHECK(total == doctest::Approx(M_PI).epsilon(1e-12));  // area of the unit disk
    CHECK_THROWS_AS(unit_ball_rule(2, 4, 7), std::invalid_argument);  // odd angular count
    CHECK_THROWS_AS(unit_ball_rule(5, 4, 8), std::invalid_argument);
}

TEST_CASE("Hoelder continuity of ball 4-averages on step fields (sampled)") {
    // |A(x1) - A(x2)| <= C ||u||_inf |x1-x2|^{1/(p-1)} with
    // C = 2^{(p-2)/(p-1)} ((2/eps) V_{n-1}/V_n)^{1/(p-1)}; p = 4, eps = 1,
    // full balls: C = 2^{2/3} (4/pi)^{1/3}.
    const double C = std::pow(2.0, 2.0 / 3.0) * std::cbrt(4.0 / M_PI);
    QuadratureRule rule = unit_ball_rule(2, 24, 48);
    Rng rng(101);
    for (int t = 0; t < 100; ++t) {
        Vec w = rng.unit_vector(2);
        double offset = rng.uniform(-0.5, 0.5);
        auto field = [&](const Vec& x) { return dot(w, x) < offset ? 1.0 : 0.0; };

        Vec x1 = {rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)};
        double h = std::pow(10.0, rng.uniform(-3.0, std::log10(0.5)));
        Vec dir = rng.unit_vector(2);
        Vec x2 = axpy(x1, h, dir);

        double a1 = ball_paverage(field, x1, 1.0, 4.0, rule);
        double a2 = ball_paverage(field, x2, 1.0, 4.0, rule);
        CHECK(std::abs(a1 - a2) <= C * std::cbrt(h) + 1e-9);
    }
}
