#pragma once

#include <optional>
#include <vector>

#include "pavg/fields.hpp"
#include "pavg/linalg.hpp"
#include "pavg/polytopes.hpp"

namespace pavg {

/// Quadratic model phi(y) = phi(x) + <a, y-x> + 1/2 <A(y-x), y-x> with
/// nonzero gradient a and symmetric Hessian A.
struct QuadraticProbe {
    Vec base_point;
    double base_value = 0.0;
    Vec gradient;
    SymMat hessian;

    void validate() const;
};

QuadraticProbe probe_from_field(const ScalarField& field, const Vec& x);

double probe_eval(const QuadraticProbe& probe, const Vec& y);

/// Game (normalized) p-Laplacian from gradient/Hessian data:
///   (1/p) tr(A) + ((p-2)/p) <A g, g>/|g|^2,
/// and the pure Rayleigh quotient for p = inf. Zero gradient is a domain error.
double game_p_laplacian(const Vec& gradient, const SymMat& hessian, double p);

/// Same operator via the matrix form tr[M(g) A], M = (1/p) I + (1-2/p) gg^T/|g|^2.
double game_p_laplacian_matrix_form(const Vec& gradient, const SymMat& hessian, double p);

struct LaplacianDecomposition {
    double delta2G = 0.0;    // (1/2) tr(A)
    double delta1G = 0.0;    // 2*delta2G - deltaInfG
    double deltaInfG = 0.0;  // Rayleigh quotient
    double recombined = 0.0; // (1/p) delta1G + (1/q) deltaInfG, 1/p + 1/q = 1
};

LaplacianDecomposition laplacian_decomposition(const Vec& gradient, const SymMat& hessian,
                                               double p);

/// Discrete estimate d(eps) = (A_eps[phi](x) - phi(x)) / (eps^2/2) computed
/// from the p-average of phi over x + eps * eta_j with the set's weights.
/// The probe overload uses the exact quadratic increments (no cancellation).
double discrete_amvp_estimate(const QuadraticProbe& probe, const DirectionSet& set, double eps,
                              double p);
double discrete_amvp_estimate(const ScalarField& field, const Vec& x, const DirectionSet& set,
                              double eps, double p);

struct AmvpReport {
    std::vector<double> epsilons;   // strictly decreasing
    std::vector<double> estimates;  // d(eps)
    double extrapolated_limit = 0.0;
    std::optional<double> reference;  // d_set * (tr/p + ((p-2)/p)<Au,u>)
    std::optional<double> extrapolation_error;       // |limit - reference|
    std::optional<double> error_at_smallest_eps;     // |d(eps_min) - reference|
};

/// Runs discrete_amvp_estimate over a decreasing epsilon list and extrapolates
/// to eps -> 0. Negation closure makes d an even function of eps, so the
/// extrapolation is polynomial in eps^2 (Neville at 0). The reference value
/// requires the set's expected_d; gradients are normalized internally so unit
/// and non-unit gradients agree.
AmvpReport amvp_sweep(const QuadraticProbe& probe, const DirectionSet& set,
                      const std::vector<double>& eps_list, double p);
AmvpReport amvp_sweep(const ScalarField& field, const Vec& x, const DirectionSet& set,
                      const std::vector<double>& eps_list, double p);

/// Polynomial extrapolation in z = eps^2 to z = 0 (Aitken-Neville).
double extrapolate_even(const std::vector<double>& epsilons, const std::vector<double>& values);

enum class Geometry { ball, sphere };

/// Scheme constant c_{p,n}: ball p/(2(n+p)), sphere p/(2(n+p-2)).
double scheme_constant(double p, int n, Geometry geometry);

/// Decreasing list eps0 * 2^{-i}, i = 0..halvings-1.
std::vector<double> halving_epsilons(double eps0, int halvings);

}  // namespace pavg
