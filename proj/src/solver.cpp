#include "pavg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "pavg/paverage.hpp"

namespace pavg {

// ---------------------------------------------------------------------------
// Domain
// ---------------------------------------------------------------------------

Domain Domain::ball(Vec center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("Domain: radius must be positive");
    Domain d;
    d.balls.push_back({std::move(center), radius});
    return d;
}

Domain Domain::box(Vec lo, Vec hi) {
    if (lo.size() != hi.size()) throw std::invalid_argument("Domain: box corner dimension mismatch");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] < hi[i])) throw std::invalid_argument("Domain: box must have positive extent");
    Domain d;
    d.boxes.push_back({std::move(lo), std::move(hi)});
    return d;
}

int Domain::dimension() const {
    if (!balls.empty()) return static_cast<int>(balls.front().center.size());
    if (!boxes.empty()) return static_cast<int>(boxes.front().lo.size());
    throw std::logic_error("Domain: empty");
}

bool Domain::contains(const Vec& x) const {
    for (const Ball& b : balls) {
        double r2 = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double d = x[i] - b.center[i];
            r2 += d * d;
        }
        if (r2 <= b.radius * b.radius) return true;
    }
    for (const Box& b : boxes) {
        bool in = true;
        for (std::size_t i = 0; i < x.size() && in; ++i)
            in = x[i] >= b.lo[i] && x[i] <= b.hi[i];
        if (in) return true;
    }
    return false;
}

void Domain::bounding_box(Vec& lo, Vec& hi) const {
    const int n = dimension();
    lo.assign(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
    hi.assign(static_cast<std::size_t>(n), -std::numeric_limits<double>::infinity());
    for (const Ball& b : balls)
        for (int i = 0; i < n; ++i) {
            lo[static_cast<std::size_t>(i)] = std::min(lo[static_cast<std::size_t>(i)],
                                                       b.center[static_cast<std::size_t>(i)] - b.radius);
            hi[static_cast<std::size_t>(i)] = std::max(hi[static_cast<std::size_t>(i)],
                                                       b.center[static_cast<std::size_t>(i)] + b.radius);
        }
    for (const Box& b : boxes)
        for (int i = 0; i < n; ++i) {
            lo[static_cast<std::size_t>(i)] = std::min(lo[static_cast<std::size_t>(i)], b.lo[static_cast<std::size_t>(i)]);
            hi[static_cast<std::size_t>(i)] = std::max(hi[static_cast<std::size_t>(i)], b.hi[static_cast<std::size_t>(i)]);
        }
}

// ---------------------------------------------------------------------------
// Lattice construction
// ---------------------------------------------------------------------------

namespace {

struct KeyHash {
    std::size_t operator()(const std::vector<int>& k) const {
        std::size_t h = 1469598103934665603ull;
        for (int v : k) {
            h ^= static_cast<std::size_t>(static_cast<unsigned>(v));
            h *= 1099511628211ull;
        }
        return h;
    }
};

using KeyMap = std::unordered_map<std::vector<int>, int, KeyHash>;

/// Generic lattice builder: integer keys -> points, a neighbor key-offset
/// list matching the stencil directions, and a domain.
Lattice assemble_lattice(const Domain& domain, double spacing, double stencil_step,
                         DirectionSet stencil, int key_size,
                         const std::vector<std::vector<int>>& neighbor_keys,
                         const std::function<Vec(const std::vector<int>&)>& point_of,
                         const std::function<void(const Vec&, const Vec&, std::vector<int>&,
                                                  std::vector<int>&)>& key_range,
                         const std::function<bool(const std::vector<int>&)>& admissible,
                         bool tessellating) {
    Lattice lat;
    lat.dimension = domain.dimension();
    lat.spacing = spacing;
    lat.stencil_step = stencil_step;
    lat.stencil = std::move(stencil);
    lat.tessellating = tessellating;

    Vec lo, hi;
    domain.bounding_box(lo, hi);
    std::vector<int> kmin, kmax;
    key_range(lo, hi, kmin, kmax);

    // Pass 1: interior nodes = lattice points inside the domain.
    KeyMap index;
    std::vector<std::vector<int>> keys;
    std::vector<int> cur(static_cast<std::size_t>(key_size));

    std::function<void(int)> enumerate = [&](int depth) {
        if (depth == key_size) {
            if (!admissible(cur)) return;
            Vec p = point_of(cur);
            if (!domain.contains(p)) return;
            index.emplace(cur, static_cast<int>(keys.size()));
            keys.push_back(cur);
            lat.nodes.push_back(std::move(p));
            lat.node_class.push_back(NodeClass::interior);
            return;
        }
        for (int v = kmin[static_cast<std::size_t>(depth)]; v <= kmax[static_cast<std::size_t>(depth)]; ++v) {
            cur[static_cast<std::size_t>(depth)] = v;
            enumerate(depth + 1);
        }
    };
    enumerate(0);

    if (lat.nodes.empty())
        throw std::invalid_argument("lattice: domain too small to contain any interior node");

    const std::size_t interior_count = lat.nodes.size();

    // Pass 2: boundary-strip nodes = stencil neighbors of interior nodes that
    // fall outside the domain; they carry prescribed values only.
    lat.adjacency.resize(interior_count);
    for (std::size_t i = 0; i < interior_count; ++i) {
        lat.interior.push_back(static_cast<int>(i));
        std::vector<int> nb(static_cast<std::size_t>(key_size));
        for (const std::vector<int>& off : neighbor_keys) {
            for (int c = 0; c < key_size; ++c)
                nb[static_cast<std::size_t>(c)] = keys[i][static_cast<std::size_t>(c)] + off[static_cast<std::size_t>(c)];
            auto it = index.find(nb);
            int j;
            if (it != index.end()) {
                j = it->second;
            } else {
                j = static_cast<int>(lat.nodes.size());
                index.emplace(nb, j);
                keys.push_back(nb);
                lat.nodes.push_back(point_of(nb));
                lat.node_class.push_back(NodeClass::boundary_strip);
            }
            lat.adjacency[i].push_back(j);
        }
    }
    lat.adjacency.resize(lat.nodes.size());  // strip nodes keep empty lists
    return lat;
}

}  // namespace

Lattice build_triangular_lattice(const Domain& domain, double epsilon, int k) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("build_triangular_lattice: epsilon > 0 required");
    if (domain.dimension() != 2)
        throw std::invalid_argument("build_triangular_lattice: 2D domain required");
    if (k < 1) throw std::invalid_argument("build_triangular_lattice: k >= 1 required");

    DirectionSet stencil = polygon_set(k, 0.0);
    const bool tess = (k == 2);

    if (!tess) {
        // Non-tessellating stencil: nodes are still Eisenstein points, but the
        // neighbor structure is not closed; only manufactured-solution
        // consistency checks apply.
        Lattice lat;
        lat.dimension = 2;
        lat.spacing = epsilon;
        lat.stencil_step = epsilon;
        lat.stencil = std::move(stencil);
        lat.tessellating = false;
        Vec lo, hi;
        domain.bounding_box(lo, hi);
        const double s3 = std::sqrt(3.0) / 2.0;
        int bmin = static_cast<int>(std::floor(lo[1] / (epsilon * s3))) - 2;
        int bmax = static_cast<int>(std::ceil(hi[1] / (epsilon * s3))) + 2;
        for (int b = bmin; b <= bmax; ++b) {
            double y = epsilon * s3 * b;
            int amin = static_cast<int>(std::floor(lo[0] / epsilon + 0.5 * b)) - 2;
            int amax = static_cast<int>(std::ceil(hi[0] / epsilon + 0.5 * b)) + 2;
            for (int a = amin; a <= amax; ++a) {
                Vec p = {epsilon * (a - 0.5 * b), y};
                if (domain.contains(p)) {
                    lat.nodes.push_back(std::move(p));
                    lat.node_class.push_back(NodeClass::interior);
                    lat.interior.push_back(static_cast<int>(lat.nodes.size()) - 1);
                }
            }
        }
        if (lat.nodes.empty())
            throw std::invalid_argument("lattice: domain too small to contain any interior node");
        lat.adjacency.resize(lat.nodes.size());
        return lat;
    }

    // Eisenstein integers a + b*omega, omega = exp(2*pi*i/3) = (-1/2, sqrt3/2);
    // the six lattice units are +-1, +-omega, +-(1+omega) and coincide with
    // polygon_set(2).
    const double s3 = std::sqrt(3.0) / 2.0;
    auto point_of = [epsilon, s3](const std::vector<int>& key) {
        return Vec{epsilon * (key[0] - 0.5 * key[1]), epsilon * s3 * key[1]};
    };
    auto key_range = [epsilon](const Vec& lo, const Vec& hi, std::vector<int>& kmin,
                               std::vector<int>& kmax) {
        const double s3 = std::sqrt(3.0) / 2.0;
        int bmin = static_cast<int>(std::floor(lo[1] / (epsilon * s3))) - 2;
        int bmax = static_cast<int>(std::ceil(hi[1] / (epsilon * s3))) + 2;
        // a = x/eps + b/2
        double half_b = 0.5 * std::max(std::abs(static_cast<double>(bmin)), std::abs(static_cast<double>(bmax)));
        int amin = static_cast<int>(std::floor(lo[0] / epsilon - half_b)) - 2;
        int amax = static_cast<int>(std::ceil(hi[0] / epsilon + half_b)) + 2;
        kmin = {amin, bmin};
        kmax = {amax, bmax};
    };
    const std::vector<std::vector<int>> neighbor_keys = {{1, 0},  {1, 1},   {0, 1},
                                                         {-1, 0}, {-1, -1}, {0, -1}};
    // neighbor_keys[j] must realize epsilon * stencil.vectors[j]
    return assemble_lattice(
        domain, epsilon, epsilon, std::move(stencil), 2, neighbor_keys, point_of, key_range,
        [](const std::vector<int>&) { return true; }, true);
}

Lattice build_d4_lattice(const Domain& domain, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("build_d4_lattice: epsilon > 0 required");
    if (domain.dimension() != 4) throw std::invalid_argument("build_d4_lattice: 4D domain required");

    // Unit stencil = normalized 24-cell vertex set; actual offsets are the
    // integer D4 minimal vectors scaled by epsilon (common norm sqrt(2)*eps).
    DirectionSet cell = named_polytope("cell24");
    std::vector<std::vector<int>> neighbor_keys;
    DirectionSet stencil = cell.normalized();
    for (const Vec& v : cell.vectors) {
        std::vector<int> key(4);
        for (int i = 0; i < 4; ++i) key[static_cast<std::size_t>(i)] = static_cast<int>(std::lround(v[static_cast<std::size_t>(i)]));
        neighbor_keys.push_back(std::move(key));
    }

    auto point_of = [epsilon](const std::vector<int>& key) {
        Vec p(4);
        for (int i = 0; i < 4; ++i) p[static_cast<std::size_t>(i)] = epsilon * key[static_cast<std::size_t>(i)];
        return p;
    };
    auto key_range = [epsilon](const Vec& lo, const Vec& hi, std::vector<int>& kmin,
                               std::vector<int>& kmax) {
        kmin.resize(4);
        kmax.resize(4);
        for (int i = 0; i < 4; ++i) {
            kmin[static_cast<std::size_t>(i)] = static_cast<int>(std::floor(lo[static_cast<std::size_t>(i)] / epsilon)) - 2;
            kmax[static_cast<std::size_t>(i)] = static_cast<int>(std::ceil(hi[static_cast<std::size_t>(i)] / epsilon)) + 2;
        }
    };
    auto even_sum = [](const std::vector<int>& key) {
        int s = 0;
        for (int v : key) s += v;
        return ((s % 2) + 2) % 2 == 0;
    };
    return assemble_lattice(domain, epsilon, epsilon * std::sqrt(2.0), std::move(stencil), 4,
                            neighbor_keys, point_of, key_range, even_sum, true);
}

// ---------------------------------------------------------------------------
// Scheme evaluation and fixed-point solve
// ---------------------------------------------------------------------------

double stencil_average(const std::vector<double>& values, const std::vector<double>& weights,
                       double p) {
    double lo = values[0], hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo == hi) return lo;

    double avg;
    if (p == 2.0) {
        double sw = 0.0, sv = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            sw += weights[i];
            sv += weights[i] * values[i];
        }
        avg = sv / sw;
    } else if (std::isinf(p)) {
        avg = 0.5 * (lo + hi);
    } else if (p == 4.0) {
        avg = four_average_closed_form(WeightedSample(values, weights));
    } else {
        avg = p_average(WeightedSample(values, weights), p, 0.0).value;
    }
    return std::clamp(avg, lo, hi);
}

double scheme_residual(const Lattice& lattice, const std::vector<double>& u, int node, double p,
                       const std::function<double(const Vec&)>& g) {
    if (u.size() != lattice.size()) throw std::invalid_argument("scheme_residual: u size mismatch");
    const std::size_t i = static_cast<std::size_t>(node);
    if (lattice.node_class[i] == NodeClass::boundary_strip) return u[i] - g(lattice.nodes[i]);

    if (!lattice.tessellating)
        throw std::domain_error("scheme_residual: stencil does not tessellate; use the manufactured-solution form");

    std::vector<double> vals;
    vals.reserve(lattice.adjacency[i].size());
    for (int j : lattice.adjacency[i]) vals.push_back(u[static_cast<std::size_t>(j)]);
    double avg = stencil_average(vals, lattice.stencil.weights, p);
    const double c = scheme_constant(p, lattice.dimension, Geometry::sphere);
    const double eps = lattice.stencil_step;
    return (u[i] - avg) / (c * eps * eps);
}

double manufactured_scheme_residual(const ScalarField& field, const Vec& x,
                                    const DirectionSet& unit_stencil, double eps, double p) {
    std::vector<double> vals;
    vals.reserve(unit_stencil.size());
    for (const Vec& eta : unit_stencil.vectors) vals.push_back(field.value(axpy(x, eps, eta)));
    double avg = stencil_average(vals, unit_stencil.weights, p);
    const double c = scheme_constant(p, unit_stencil.dimension, Geometry::sphere);
    return (field.value(x) - avg) / (c * eps * eps);
}

std::vector<double> averaging_sweep(const Lattice& lattice, const std::vector<double>& u,
                                    double p) {
    if (u.size() != lattice.size()) throw std::invalid_argument("averaging_sweep: u size mismatch");
    if (!lattice.tessellating)
        throw std::domain_error("averaging_sweep: lattice stencil does not tessellate");
    std::vector<double> out = u;
    std::vector<double> vals;
    for (int idx : lattice.interior) {
        const std::size_t i = static_cast<std::size_t>(idx);
        vals.clear();
        for (int j : lattice.adjacency[i]) vals.push_back(u[static_cast<std::size_t>(j)]);
        out[i] = stencil_average(vals, lattice.stencil.weights, p);
    }
    return out;
}

SolveReport solve_dirichlet(const Lattice& lattice, const std::function<double(const Vec&)>& g,
                            double p, double tol, long max_iters, Sweep sweep,
                            const std::function<double(const Vec&)>* reference) {
    if (!(tol > 0.0)) throw std::invalid_argument("solve_dirichlet: tol > 0 required");
    if (!lattice.tessellating)
        throw std::domain_error("solve_dirichlet: grid solving requires a tessellating stencil (hexagon or d4)");

    const std::size_t n = lattice.size();
    std::vector<double> u(n, 0.0);

    double gmin = std::numeric_limits<double>::infinity(), gmax = -gmin, gsum = 0.0;
    std::size_t strip_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (lattice.node_class[i] != NodeClass::boundary_strip) continue;
        double v = g(lattice.nodes[i]);
        if (!std::isfinite(v)) throw std::domain_error("solve_dirichlet: boundary value not finite");
        u[i] = v;
        gmin = std::min(gmin, v);
        gmax = std::max(gmax, v);
        gsum += v;
        ++strip_count;
    }
    if (strip_count == 0) throw std::logic_error("solve_dirichlet: lattice has no boundary strip");
    const double init = gsum / static_cast<double>(strip_count);
    for (int idx : lattice.interior) u[static_cast<std::size_t>(idx)] = init;

    SolveReport report;
    report.comparison_ok = true;

    std::vector<double> next = u;
    std::vector<double> vals;
    double upd = std::numeric_limits<double>::infinity();
    long it = 0;
    for (; it < max_iters; ++it) {
        upd = 0.0;
        const std::vector<double>& src = (sweep == Sweep::jacobi) ? u : next;
        for (int idx : lattice.interior) {
            const std::size_t i = static_cast<std::size_t>(idx);
            vals.clear();
            for (int j : lattice.adjacency[i]) vals.push_back(src[static_cast<std::size_t>(j)]);
            double v = stencil_average(vals, lattice.stencil.weights, p);
            upd = std::max(upd, std::abs(v - next[i]));
            next[i] = v;
            if (v < gmin || v > gmax) report.comparison_ok = false;
        }
        if (sweep == Sweep::jacobi) u = next;
        if (upd <= tol) {
            ++it;
            break;
        }
    }
    if (sweep == Sweep::gauss_seidel) u = next;

    report.iterations = it;
    report.final_update_norm = upd;
    report.converged = upd <= tol;
    report.solution = std::move(u);
    if (reference && *reference) {
        double sup = 0.0;
        for (int idx : lattice.interior) {
            const std::size_t i = static_cast<std::size_t>(idx);
            sup = std::max(sup, std::abs(report.solution[i] - (*reference)(lattice.nodes[i])));
        }
        report.sup_error_vs_reference = sup;
    }
    return report;
}

ErrorReport error_report(const Lattice& lattice, const std::vector<double>& solution,
                         const std::function<double(const Vec&)>& reference) {
    if (solution.size() != lattice.size())
        throw std::invalid_argument("error_report: solution size mismatch");
    ErrorReport r;
    double sq = 0.0;
    for (int idx : lattice.interior) {
        const std::size_t i = static_cast<std::size_t>(idx);
        double e = std::abs(solution[i] - reference(lattice.nodes[i]));
        r.sup_error = std::max(r.sup_error, e);
        sq += e * e;
    }
    r.l2_error = std::sqrt(sq / static_cast<double>(std::max<std::size_t>(1, lattice.interior_count())));
    return r;
}

}  // namespace pavg
