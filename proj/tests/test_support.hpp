#pragma once

#include <cmath>
#include <vector>

#include "pavg/paverage.hpp"
#include "pavg/rng.hpp"

namespace pavg::testsupport {

/// Golden-section minimization of sum_i w_i |y_i - c|^p over the sample range:
/// an oracle for p_average that never touches the characterization equation.
inline double golden_section_p_average(const WeightedSample& s, double p, double tol = 1e-13) {
    auto objective = [&](double c) {
        double v = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i)
            v += s.weights[i] * std::pow(std::abs(s.values[i] - c), p);
        return v;
    };
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = s.min_value(), b = s.max_value();
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = objective(c), fd = objective(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = objective(d);
        }
    }
    return 0.5 * (a + b);
}

inline WeightedSample random_sample(Rng& rng, int min_size = 2, int max_size = 50,
                                    double lo = -10.0, double hi = 10.0) {
    int n = min_size + static_cast<int>(rng.uniform() * (max_size - min_size + 1));
    n = std::min(n, max_size);
    std::vector<double> v(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        v[static_cast<std::size_t>(i)] = rng.uniform(lo, hi);
        w[static_cast<std::size_t>(i)] = rng.uniform(0.1, 5.0);
    }
    return WeightedSample(std::move(v), std::move(w));
}

}  // namespace pavg::testsupport
