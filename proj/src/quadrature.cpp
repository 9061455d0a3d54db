#include <cmath>
#include <stdexcept>

#include "pavg/paverage.hpp"

namespace pavg {

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);

    // Newton on P_n with the usual Chebyshev-based initial guesses.
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        nodes[static_cast<std::size_t>(i)] = x;
        nodes[static_cast<std::size_t>(n - 1 - i)] = -x;
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    // map [-1,1] -> [a,b]
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        nodes[static_cast<std::size_t>(i)] = mid + half * nodes[static_cast<std::size_t>(i)];
        weights[static_cast<std::size_t>(i)] *= half;
    }
}

QuadratureRule unit_ball_rule(int dim, int radial, int angular, int polar) {
    if (radial < 1 || angular < 2) throw std::invalid_argument("unit_ball_rule: too few points");
    if (angular % 2 != 0)
        throw std::invalid_argument("unit_ball_rule: angular count must be even (central symmetry)");

    std::vector<double> rn, rw;
    gauss_legendre(radial, 0.0, 1.0, rn, rw);

    QuadratureRule rule;
    if (dim == 2) {
        const double dtheta = 2.0 * M_PI / angular;
        for (int i = 0; i < radial; ++i) {
            double r = rn[static_cast<std::size_t>(i)];
            double wr = rw[static_cast<std::size_t>(i)] * r;  // polar jacobian
            for (int j = 0; j < angular; ++j) {
                double th = dtheta * j;
                rule.nodes.push_back({r * std::cos(th), r * std::sin(th)});
                rule.weights.push_back(wr * dtheta);
            }
        }
    } else if (dim == 3) {
        if (polar < 1) polar = radial;
        std::vector<double> tn, tw;  // t = cos(phi)
        gauss_legendre(polar, -1.0, 1.0, tn, tw);
        const double dtheta = 2.0 * M_PI / angular;
        for (int i = 0; i < radial; ++i) {
            double r = rn[static_cast<std::size_t>(i)];
            double wr = rw[static_cast<std::size_t>(i)] * r * r;
            for (int l = 0; l < polar; ++l) {
                double t = tn[static_cast<std::size_t>(l)];
                double s = std::sqrt(std::max(0.0, 1.0 - t * t));
                for (int j = 0; j < angular; ++j) {
                    double th = dtheta * j;
                    rule.nodes.push_back({r * s * std::cos(th), r * s * std::sin(th), r * t});
                    rule.weights.push_back(wr * tw[static_cast<std::size_t>(l)] * dtheta);
                }
            }
        }
    } else {
        throw std::invalid_argument("unit_ball_rule: only dimensions 2 and 3 are provided");
    }
    return rule;
}

}  // namespace pavg
