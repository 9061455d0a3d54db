#include "pavg/paverage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pavg {

namespace {

// sign(t) |t|^q for q > 0; continuous and odd.
double signed_power(double t, double q) {
    if (t == 0.0) return 0.0;
    double m = std::pow(std::abs(t), q);
    return t > 0.0 ? m : -m;
}

void check_finite(const std::vector<double>& v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x)) throw std::domain_error(std::string(what) + " contains a non-finite entry");
}

}  // namespace

WeightedSample::WeightedSample(std::vector<double> v)
    : WeightedSample(std::move(v), {}) {}

WeightedSample::WeightedSample(std::vector<double> v, std::vector<double> w)
    : values(std::move(v)), weights(std::move(w)) {
    if (values.empty()) throw std::invalid_argument("WeightedSample: at least one value required");
    if (weights.empty()) weights.assign(values.size(), 1.0);
    if (weights.size() != values.size())
        throw std::invalid_argument("WeightedSample: values/weights length mismatch");
    check_finite(values, "sample values");
    check_finite(weights, "sample weights");
    for (double w : weights)
        if (w <= 0.0) throw std::invalid_argument("WeightedSample: weights must be strictly positive");
}

double WeightedSample::min_value() const { return *std::min_element(values.begin(), values.end()); }
double WeightedSample::max_value() const { return *std::max_element(values.begin(), values.end()); }

double WeightedSample::total_weight() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

double WeightedSample::weighted_mean() const {
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += weights[i] * values[i];
    return s / total_weight();
}

double characterization_residual(const WeightedSample& sample, double lambda, double p) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw std::domain_error("characterization_residual: requires finite p > 1");
    double f = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i)
        f += sample.weights[i] * signed_power(sample.values[i] - lambda, p - 1.0);
    return f;
}

namespace {

double dispersion_finite_p(const WeightedSample& sample, double lambda, double p) {
    double s = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i)
        s += sample.weights[i] * std::pow(std::abs(sample.values[i] - lambda), p);
    return std::pow(s / sample.total_weight(), 1.0 / p);
}

// -(p-1) sum_i nu_i |y_i - lambda|^{p-2}; exact ties are skipped, which keeps
// the value finite for p < 2 (their contribution vanishes in the limit).
double characterization_derivative(const WeightedSample& sample, double lambda, double p) {
    double s = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        double t = std::abs(sample.values[i] - lambda);
        if (t == 0.0) continue;
        s += sample.weights[i] * std::pow(t, p - 2.0);
    }
    return -(p - 1.0) * s;
}

}  // namespace

PAverageResult p_average(const WeightedSample& sample, double p, double tol) {
    if (!(p > 1.0)) throw std::domain_error("p_average: requires p > 1");
    if (tol < 0.0) throw std::invalid_argument("p_average: tol must be >= 0");

    const double lo0 = sample.min_value();
    const double hi0 = sample.max_value();

    PAverageResult res;

    if (std::isinf(p)) {
        res.value = 0.5 * (lo0 + hi0);
        double d = 0.0;
        for (double y : sample.values) d = std::max(d, std::abs(y - res.value));
        res.dispersion = d;
        return res;
    }

    if (lo0 == hi0) {
        res.value = lo0;
        return res;
    }

    if (p == 2.0) {
        res.value = std::clamp(sample.weighted_mean(), lo0, hi0);
        res.dispersion = dispersion_finite_p(sample, res.value, 2.0);
        res.residual = characterization_residual(sample, res.value, 2.0);
        return res;
    }

    // Safeguarded Newton: F is strictly decreasing with F(lo) > 0 > F(hi).
    double lo = lo0, hi = hi0;
    double lambda = std::clamp(sample.weighted_mean(), lo, hi);
    if (lambda == lo || lambda == hi) lambda = 0.5 * (lo + hi);

    const double width_floor = 4.0 * std::max(std::abs(lo0), std::abs(hi0)) *
                               std::numeric_limits<double>::epsilon();
    const double converged = std::max(tol, width_floor);
    int iters = 0;
    double f = 0.0;
    for (; iters < 200; ++iters) {
        f = characterization_residual(sample, lambda, p);
        if (f == 0.0) break;
        if (f > 0.0)
            lo = lambda;
        else
            hi = lambda;
        if (hi - lo <= converged) break;

        double df = characterization_derivative(sample, lambda, p);
        double raw = lambda - f / df;
        // For p >= 2 the derivative is well-behaved on the whole bracket, so a
        // collapsed Newton step means convergence (checked before the bracket
        // safeguard, which would otherwise bounce a sub-ulp step to the
        // midpoint). For p < 2 the derivative can be inflated near data
        // points; there only the bracket criterion is trusted.
        if (p >= 2.0 && std::isfinite(raw) && std::abs(raw - lambda) <= 0.25 * converged) {
            lambda = std::clamp(raw, lo, hi);
            ++iters;
            break;
        }
        double next = raw;
        if (!std::isfinite(next) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
        if (next == lambda) next = 0.5 * (lo + hi);  // force progress
        if (next == lambda) break;
        lambda = next;
    }

    res.value = lambda;
    res.iterations = iters;
    res.residual = characterization_residual(sample, lambda, p);
    res.dispersion = dispersion_finite_p(sample, lambda, p);
    return res;
}

double four_average_closed_form(const WeightedSample& sample) {
    const double total = sample.total_weight();
    double mean = sample.weighted_mean();

    double m2 = 0.0, m3 = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        double d = sample.values[i] - mean;
        double w = sample.weights[i] / total;
        m2 += w * d * d;
        m3 += w * d * d * d;
    }
    double sigma = std::sqrt(m2);
    if (sigma == 0.0) return mean;

    double kappa = m3 / (sigma * sigma * sigma);

    // Cardano root of t^3 + 3 sigma^2 t - sigma^3 kappa = 0, written as
    // sigma (w^{1/3} - w^{-1/3}) with w = (kappa + sqrt(kappa^2+4))/2; the
    // second branch uses w = 2/(sqrt(kappa^2+4) - kappa) to avoid cancellation.
    double root = std::sqrt(kappa * kappa + 4.0);
    double w = kappa >= 0.0 ? 0.5 * (kappa + root) : 2.0 / (root - kappa);
    double cw = std::cbrt(w);
    return mean + sigma * (cw - 1.0 / cw);
}

double gamma_median(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n < 2 || n % 2 != 0)
        throw std::domain_error("gamma_median: requires an even number of values (>= 2)");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(x[i] < x[i + 1]))
            throw std::domain_error("gamma_median: values must be strictly increasing");
    for (double v : x)
        if (!std::isfinite(v)) throw std::domain_error("gamma_median: non-finite value");

    const std::size_t k = n / 2;
    auto poly = [&](double c) {
        double below = 1.0, above = 1.0;
        for (std::size_t i = 0; i < k; ++i) below *= c - x[i];
        for (std::size_t i = k; i < n; ++i) above *= x[i] - c;
        return below - above;
    };

    // Increasing across the central gap: negative at x_{k-1}, positive at x_k.
    double lo = x[k - 1], hi = x[k];
    double flo = poly(lo), fhi = poly(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;

    while (true) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // no representable point between
        double fm = poly(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

std::vector<double> p_limit_to_gamma_median(const std::vector<double>& sorted_values,
                                            const std::vector<double>& p_sequence) {
    if (p_sequence.empty()) throw std::invalid_argument("p_limit_to_gamma_median: empty p sequence");
    for (std::size_t i = 0; i < p_sequence.size(); ++i) {
        double p = p_sequence[i];
        if (!(p > 1.0 && p <= 2.0))
            throw std::domain_error("p_limit_to_gamma_median: exponents must lie in (1, 2]");
        if (i > 0 && !(p < p_sequence[i - 1]))
            throw std::domain_error("p_limit_to_gamma_median: exponents must be strictly decreasing");
    }
    WeightedSample sample(sorted_values);
    std::vector<double> out;
    out.reserve(p_sequence.size());
    for (double p : p_sequence) out.push_back(p_average(sample, p, 0.0).value);
    return out;
}

double ball_paverage(const std::function<double(const Vec&)>& field, const Vec& center,
                     double radius, double p, const QuadratureRule& rule) {
    if (!(radius > 0.0)) throw std::invalid_argument("ball_paverage: radius must be positive");
    if (rule.nodes.empty() || rule.nodes.size() != rule.weights.size())
        throw std::invalid_argument("ball_paverage: malformed quadrature rule");
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        if (dot(rule.nodes[i], rule.nodes[i]) > 1.0 + 1e-12)
            throw std::invalid_argument("ball_paverage: quadrature node outside the unit ball");
        if (!(rule.weights[i] > 0.0))
            throw std::invalid_argument("ball_paverage: quadrature weights must be positive");
    }

    std::vector<double> values;
    values.reserve(rule.nodes.size());
    for (const Vec& node : rule.nodes) {
        double v = field(axpy(center, radius, node));
        if (!std::isfinite(v)) throw std::domain_error("ball_paverage: field returned a non-finite value");
        values.push_back(v);
    }
    return p_average(WeightedSample(std::move(values), rule.weights), p, 0.0).value;
}

}  // namespace pavg
