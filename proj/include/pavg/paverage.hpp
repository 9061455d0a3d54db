#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "pavg/linalg.hpp"

namespace pavg {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Finite measured dataset: sample values with strictly positive weights.
struct WeightedSample {
    std::vector<double> values;
    std::vector<double> weights;

    /// Unit weights.
    explicit WeightedSample(std::vector<double> v);
    WeightedSample(std::vector<double> v, std::vector<double> w);

    std::size_t size() const { return values.size(); }
    double min_value() const;
    double max_value() const;
    double total_weight() const;
    double weighted_mean() const;
};

struct PAverageResult {
    double value = 0.0;       // A_p
    double dispersion = 0.0;  // sigma_p under the normalized measure
    double residual = 0.0;    // characterization value at the result
    int iterations = 0;
};

/// F(lambda) = sum_i nu_i |y_i - lambda|^{p-2} (y_i - lambda), evaluated in the
/// stable form sign(y-lambda)|y-lambda|^{p-1}. Strictly decreasing in lambda.
/// Finite p > 1 only.
double characterization_residual(const WeightedSample& sample, double lambda, double p);

/// The p-average for p in (1, inf]. p = 2 is the weighted mean, p = inf the
/// midrange; otherwise the unique root of the characterization equation is
/// found by safeguarded Newton inside the bracket [min, max]. tol bounds the
/// final bracket width (absolute); tol = 0 means machine convergence.
PAverageResult p_average(const WeightedSample& sample, double p, double tol = 1e-12);

/// Closed-form 4-average from the weighted mean, standard deviation and
/// skewness (Cardano solution of the cubic characterization). Constant
/// samples return the constant.
double four_average_closed_form(const WeightedSample& sample);

/// The p -> 1+ limit of p-averages for an even number of distinct sorted
/// values: the unique root of
///   prod_{i<=k}(c - x_i) - prod_{i>k}(x_i - c)
/// in the central gap (x_k, x_{k+1}); found by bisection on that bracket.
double gamma_median(const std::vector<double>& sorted_values);

/// p_average for each exponent in p_sequence (strictly decreasing, in (1,2]),
/// unit weights. The tail approaches gamma_median as p -> 1+.
std::vector<double> p_limit_to_gamma_median(const std::vector<double>& sorted_values,
                                            const std::vector<double>& p_sequence);

// ---------------------------------------------------------------------------
// Ball p-averages via quadrature
// ---------------------------------------------------------------------------

/// Node/weight rule on the closed unit ball.
struct QuadratureRule {
    std::vector<Vec> nodes;
    std::vector<double> weights;
};

/// Product rule in polar (dim 2) or spherical (dim 3) coordinates with
/// centrally symmetric nodes, so linear fields average exactly.
/// `radial` Gauss-Legendre points, `angular` equally spaced azimuthal angles
/// (must be even), and for dim 3 `polar` Gauss-Legendre points in cos(phi).
QuadratureRule unit_ball_rule(int dim, int radial, int angular, int polar = 0);

/// p-average of `field` sampled over the ball of given center/radius with the
/// supplied quadrature rule as the discretization of the ball measure.
double ball_paverage(const std::function<double(const Vec&)>& field, const Vec& center,
                     double radius, double p, const QuadratureRule& rule);

/// Gauss-Legendre nodes/weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace pavg
