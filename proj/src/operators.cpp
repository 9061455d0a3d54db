#include "pavg/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "pavg/paverage.hpp"

namespace pavg {

void QuadraticProbe::validate() const {
    if (base_point.size() != gradient.size() ||
        static_cast<int>(base_point.size()) != hessian.n)
        throw std::invalid_argument("QuadraticProbe: dimension mismatch");
    if (norm(gradient) == 0.0) throw std::domain_error("QuadraticProbe: gradient must be nonzero");
    if (!hessian.is_symmetric(1e-14)) throw std::invalid_argument("QuadraticProbe: Hessian not symmetric");
}

QuadraticProbe probe_from_field(const ScalarField& field, const Vec& x) {
    if (!field.has_derivatives())
        throw std::invalid_argument("probe_from_field: field lacks derivatives");
    QuadraticProbe p{x, field.value(x), field.gradient(x), field.hessian(x)};
    p.validate();
    return p;
}

double probe_eval(const QuadraticProbe& probe, const Vec& y) {
    Vec d = axpy(y, -1.0, probe.base_point);
    return probe.base_value + dot(probe.gradient, d) + 0.5 * probe.hessian.quad(d);
}

double game_p_laplacian(const Vec& gradient, const SymMat& hessian, double p) {
    if (!(p > 1.0)) throw std::domain_error("game_p_laplacian: requires p > 1");
    double g2 = dot(gradient, gradient);
    if (g2 == 0.0) throw std::domain_error("game_p_laplacian: zero gradient");
    double rayleigh = hessian.quad(gradient) / g2;
    if (std::isinf(p)) return rayleigh;
    return hessian.trace() / p + (p - 2.0) / p * rayleigh;
}

double game_p_laplacian_matrix_form(const Vec& gradient, const SymMat& hessian, double p) {
    if (!(p > 1.0) || std::isinf(p))
        throw std::domain_error("game_p_laplacian_matrix_form: requires finite p > 1");
    double g2 = dot(gradient, gradient);
    if (g2 == 0.0) throw std::domain_error("game_p_laplacian_matrix_form: zero gradient");
    const int n = hessian.n;
    // tr[M A] with M = (1/p) I + (1 - 2/p) g g^T / |g|^2
    double tr = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double m = (i == j ? 1.0 / p : 0.0) +
                       (1.0 - 2.0 / p) * gradient[static_cast<std::size_t>(i)] *
                           gradient[static_cast<std::size_t>(j)] / g2;
            tr += m * hessian(j, i);
        }
    return tr;
}

LaplacianDecomposition laplacian_decomposition(const Vec& gradient, const SymMat& hessian,
                                               double p) {
    if (!(p > 1.0)) throw std::domain_error("laplacian_decomposition: requires p > 1");
    double g2 = dot(gradient, gradient);
    if (g2 == 0.0) throw std::domain_error("laplacian_decomposition: zero gradient");

    LaplacianDecomposition d;
    d.delta2G = 0.5 * hessian.trace();
    d.deltaInfG = hessian.quad(gradient) / g2;
    d.delta1G = 2.0 * d.delta2G - d.deltaInfG;
    if (std::isinf(p)) {
        d.recombined = d.deltaInfG;  // 1/p = 0, 1/q = 1
    } else {
        double q = p / (p - 1.0);
        d.recombined = d.delta1G / p + d.deltaInfG / q;
    }
    return d;
}

namespace {

double estimate_from_increments(const std::vector<double>& increments,
                                const std::vector<double>& weights, double eps, double p) {
    PAverageResult r = p_average(WeightedSample(increments, weights), p, 0.0);
    return r.value / (0.5 * eps * eps);
}

}  // namespace

double discrete_amvp_estimate(const QuadraticProbe& probe, const DirectionSet& set, double eps,
                              double p) {
    if (!(eps > 0.0)) throw std::invalid_argument("discrete_amvp_estimate: eps > 0 required");
    probe.validate();
    // Exact quadratic increments phi(x + eps*eta) - phi(x); affine invariance
    // makes the shifted sample's p-average equal A_eps - phi(x).
    std::vector<double> inc;
    inc.reserve(set.size());
    for (const Vec& eta : set.vectors)
        inc.push_back(eps * dot(probe.gradient, eta) + 0.5 * eps * eps * probe.hessian.quad(eta));
    return estimate_from_increments(inc, set.weights, eps, p);
}

double discrete_amvp_estimate(const ScalarField& field, const Vec& x, const DirectionSet& set,
                              double eps, double p) {
    if (!(eps > 0.0)) throw std::invalid_argument("discrete_amvp_estimate: eps > 0 required");
    const double base = field.value(x);
    std::vector<double> inc;
    inc.reserve(set.size());
    for (const Vec& eta : set.vectors) inc.push_back(field.value(axpy(x, eps, eta)) - base);
    return estimate_from_increments(inc, set.weights, eps, p);
}

double extrapolate_even(const std::vector<double>& epsilons, const std::vector<double>& values) {
    if (epsilons.size() != values.size() || epsilons.size() < 2)
        throw std::invalid_argument("extrapolate_even: need at least two matching points");
    const std::size_t n = epsilons.size();
    std::vector<double> z(n), t = values;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(epsilons[i] > 0.0) || (i > 0 && !(epsilons[i] < epsilons[i - 1])))
            throw std::invalid_argument("extrapolate_even: epsilons must be positive and strictly decreasing");
        z[i] = epsilons[i] * epsilons[i];
    }
    // Aitken-Neville evaluated at z = 0
    for (std::size_t m = 1; m < n; ++m)
        for (std::size_t i = 0; i + m < n; ++i)
            t[i] = (z[i + m] * t[i] - z[i] * t[i + 1]) / (z[i + m] - z[i]);
    return t[0];
}

namespace {

void check_eps_list(const std::vector<double>& eps_list) {
    if (eps_list.size() < 2)
        throw std::invalid_argument("amvp_sweep: at least two epsilons required");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0)) throw std::invalid_argument("amvp_sweep: epsilons must be positive");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("amvp_sweep: epsilons must be strictly decreasing");
    }
}

AmvpReport finish_report(AmvpReport report, const std::optional<double>& d_set,
                         double operator_value) {
    report.extrapolated_limit = extrapolate_even(report.epsilons, report.estimates);
    if (d_set) {
        report.reference = *d_set * operator_value;
        report.extrapolation_error = std::abs(report.extrapolated_limit - *report.reference);
        report.error_at_smallest_eps = std::abs(report.estimates.back() - *report.reference);
    }
    return report;
}

}  // namespace

AmvpReport amvp_sweep(const QuadraticProbe& probe, const DirectionSet& set,
                      const std::vector<double>& eps_list, double p) {
    check_eps_list(eps_list);
    probe.validate();
    AmvpReport report;
    report.epsilons = eps_list;
    for (double eps : eps_list)
        report.estimates.push_back(discrete_amvp_estimate(probe, set, eps, p));
    // d_set applies to (tr/p + ((p-2)/p)<Au,u>) with the unit direction of the
    // gradient; the estimate itself is gradient-scale invariant.
    return finish_report(std::move(report), set.expected_d,
                         game_p_laplacian(probe.gradient, probe.hessian, p));
}

AmvpReport amvp_sweep(const ScalarField& field, const Vec& x, const DirectionSet& set,
                      const std::vector<double>& eps_list, double p) {
    check_eps_list(eps_list);
    AmvpReport report;
    report.epsilons = eps_list;
    for (double eps : eps_list)
        report.estimates.push_back(discrete_amvp_estimate(field, x, set, eps, p));
    if (field.has_derivatives() && set.expected_d)
        return finish_report(std::move(report), set.expected_d,
                             game_p_laplacian(field.gradient(x), field.hessian(x), p));
    return finish_report(std::move(report), std::nullopt, 0.0);
}

double scheme_constant(double p, int n, Geometry geometry) {
    if (!(p > 1.0)) throw std::domain_error("scheme_constant: requires p > 1");
    if (n < 2) throw std::domain_error("scheme_constant: requires n >= 2");
    if (std::isinf(p)) return 0.5;
    return geometry == Geometry::ball ? p / (2.0 * (n + p)) : p / (2.0 * (n + p - 2.0));
}

std::vector<double> halving_epsilons(double eps0, int halvings) {
    if (!(eps0 > 0.0) || halvings < 1) throw std::invalid_argument("halving_epsilons: bad arguments");
    std::vector<double> out;
    double e = eps0;
    for (int i = 0; i < halvings; ++i, e *= 0.5) out.push_back(e);
    return out;
}

}  // namespace pavg
