#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pavg/fields.hpp"
#include "pavg/linalg.hpp"
#include "pavg/operators.hpp"
#include "pavg/polytopes.hpp"

namespace pavg {

/// Union of balls and axis-aligned boxes.
struct Domain {
    struct Ball {
        Vec center;
        double radius;
    };
    struct Box {
        Vec lo, hi;
    };
    std::vector<Ball> balls;
    std::vector<Box> boxes;

    static Domain ball(Vec center, double radius);
    static Domain box(Vec lo, Vec hi);

    int dimension() const;
    bool contains(const Vec& x) const;
    void bounding_box(Vec& lo, Vec& hi) const;
};

enum class NodeClass { interior, boundary_strip };

/// Tessellation nodes with interior/boundary-strip classification. Interior
/// nodes carry a full neighbor stencil; strip nodes carry prescribed values.
struct Lattice {
    int dimension = 0;
    double spacing = 0.0;       // lattice generator scale
    double stencil_step = 0.0;  // common neighbor distance (the scheme's eps)
    DirectionSet stencil;       // unit directions of the neighbor offsets
    std::vector<Vec> nodes;
    std::vector<NodeClass> node_class;
    std::vector<std::vector<int>> adjacency;  // per node; empty for strip nodes
    std::vector<int> interior;                // indices of interior nodes
    bool tessellating = false;                // adjacency is usable for solving

    std::size_t size() const { return nodes.size(); }
    std::size_t interior_count() const { return interior.size(); }
};

/// Eisenstein-integer (equilateral triangular) lattice intersected with the
/// domain. k selects the stencil polygon_set(k); only k = 2 (the hexagonal
/// stencil) tessellates, other k produce a lattice usable for consistency
/// checks but not for grid solving.
Lattice build_triangular_lattice(const Domain& domain, double epsilon, int k = 2);

/// D4 lattice (integer 4-vectors with even coordinate sum, scaled); the 24
/// nearest neighbors are the 24-cell vertex offsets at distance sqrt(2)*eps.
Lattice build_d4_lattice(const Domain& domain, double epsilon);

/// One p-average of the stencil values (fast paths for p = 2, 4, inf); the
/// result is clamped into [min, max] of the inputs.
double stencil_average(const std::vector<double>& values, const std::vector<double>& weights,
                       double p);

/// S(eps, x, u(x), u): interior (u(x) - A_eps[u](x)) / (c_{p,n} eps^2) with
/// the sphere constant; strip u(x) - g(x).
double scheme_residual(const Lattice& lattice, const std::vector<double>& u, int node, double p,
                       const std::function<double(const Vec&)>& g);

/// Consistency residual of the scheme on an analytic field (method of
/// manufactured solutions); works for any stencil, tessellating or not.
double manufactured_scheme_residual(const ScalarField& field, const Vec& x,
                                    const DirectionSet& unit_stencil, double eps, double p);

enum class Sweep { jacobi, gauss_seidel };

struct SolveReport {
    bool converged = false;
    long iterations = 0;
    double final_update_norm = 0.0;
    bool comparison_ok = false;  // min g <= u <= max g at every node, every iteration
    std::vector<double> solution;
    std::optional<double> sup_error_vs_reference;
};

/// One Jacobi application of the averaging map: interior nodes replaced by the
/// p-average of their stencil values, strip nodes unchanged. This is the map
/// whose fixed point solves the scheme.
std::vector<double> averaging_sweep(const Lattice& lattice, const std::vector<double>& u,
                                    double p);

/// Fixed-point solve of the Dirichlet problem: strip values pinned to g,
/// interior initialized to the mean of strip values, iterated until the
/// sup-norm update drops below tol. Non-convergence is reported, not thrown.
SolveReport solve_dirichlet(const Lattice& lattice, const std::function<double(const Vec&)>& g,
                            double p, double tol = 1e-10, long max_iters = 1000000,
                            Sweep sweep = Sweep::jacobi,
                            const std::function<double(const Vec&)>* reference = nullptr);

struct ErrorReport {
    double sup_error = 0.0;
    double l2_error = 0.0;  // root mean square over interior nodes
};

ErrorReport error_report(const Lattice& lattice, const std::vector<double>& solution,
                         const std::function<double(const Vec&)>& reference);

}  // namespace pavg
