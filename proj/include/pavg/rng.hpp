#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "pavg/linalg.hpp"

namespace pavg {

/// Deterministic random source. Distributions are implemented by hand so the
/// same seed produces the same stream on every platform/standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 == 0.0);
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    /// Uniform point on the unit sphere in R^n (normalized Gaussian).
    Vec unit_vector(int n) {
        Vec v(static_cast<std::size_t>(n));
        double len = 0.0;
        do {
            for (double& x : v) x = normal();
            len = norm(v);
        } while (len < 1e-12);
        return scaled(v, 1.0 / len);
    }

    /// Symmetric matrix with i.i.d. uniform(lo,hi) entries on the upper triangle.
    SymMat symmetric(int n, double lo = -1.0, double hi = 1.0) {
        SymMat m(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) m.set(i, j, uniform(lo, hi));
        return m;
    }

    std::uint64_t raw() { return gen_(); }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace pavg
