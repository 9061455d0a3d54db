#include "pavg/polytopes.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pavg/rng.hpp"

namespace pavg {

namespace {

double ipow(double x, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// DirectionSet basics
// ---------------------------------------------------------------------------

void DirectionSet::validate(double tol) const {
    if (dimension < 2) throw std::invalid_argument("DirectionSet: dimension >= 2 required");
    if (vectors.empty()) throw std::invalid_argument("DirectionSet: empty set");
    if (vectors.size() != weights.size())
        throw std::invalid_argument("DirectionSet: vectors/weights length mismatch");
    if (exponent < 2 || exponent % 2 != 0)
        throw std::invalid_argument("DirectionSet: exponent must be an even integer >= 2");

    double scale = 0.0;
    for (const Vec& v : vectors) {
        if (static_cast<int>(v.size()) != dimension)
            throw std::invalid_argument("DirectionSet: vector dimension mismatch");
        scale = std::max(scale, norm(v));
    }

    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (norm(vectors[i]) <= tol * std::max(1.0, scale))
            throw std::invalid_argument("DirectionSet: zero vector");
        if (weights[i] <= 0.0) throw std::invalid_argument("DirectionSet: weights must be positive");

        // negation closure with matching weight
        bool found = false;
        Vec neg = negated(vectors[i]);
        for (std::size_t j = 0; j < vectors.size(); ++j) {
            double dist = 0.0;
            for (int c = 0; c < dimension; ++c)
                dist = std::max(dist, std::abs(vectors[j][static_cast<std::size_t>(c)] -
                                               neg[static_cast<std::size_t>(c)]));
            if (dist <= tol * std::max(1.0, scale) &&
                std::abs(weights[j] - weights[i]) <= tol * std::max(1.0, weights[i])) {
                found = true;
                break;
            }
        }
        if (!found) throw std::invalid_argument("DirectionSet: not closed under negation");
    }

    SymMat gram(dimension);
    for (std::size_t j = 0; j < vectors.size(); ++j)
        for (int r = 0; r < dimension; ++r)
            for (int c = 0; c < dimension; ++c)
                gram.a[static_cast<std::size_t>(r) * dimension + c] +=
                    weights[j] * vectors[j][static_cast<std::size_t>(r)] * vectors[j][static_cast<std::size_t>(c)];
    if (!positive_definite(gram, 1e-12 * std::max(1.0, scale * scale)))
        throw std::invalid_argument("DirectionSet: vectors do not span the space");
}

double DirectionSet::common_norm_sq(double tol) const {
    double first = dot(vectors.front(), vectors.front());
    for (const Vec& v : vectors)
        if (std::abs(dot(v, v) - first) > tol * std::max(1.0, first))
            throw std::domain_error("DirectionSet: vectors do not share a common norm");
    return first;
}

DirectionSet DirectionSet::normalized() const {
    double nsq = common_norm_sq();
    DirectionSet out = scaled_by(1.0 / std::sqrt(nsq));
    out.label = label + ":normalized";
    return out;
}

DirectionSet DirectionSet::scaled_by(double s) const {
    if (!(s > 0.0)) throw std::invalid_argument("DirectionSet: scale must be positive");
    DirectionSet out = *this;
    for (Vec& v : out.vectors) v = scaled(v, s);
    if (out.expected_d) out.expected_d = *out.expected_d * s * s;
    return out;
}

// ---------------------------------------------------------------------------
// Exact Q[sqrt5] vertex generation
// ---------------------------------------------------------------------------

namespace {

struct Q5Key {
    std::vector<std::pair<BigRat, BigRat>> coords;
    bool operator<(const Q5Key& o) const { return coords < o.coords; }
};

Q5Key key_of(const Q5Vec& v) {
    Q5Key k;
    k.coords.reserve(v.size());
    for (const Q5& q : v) k.coords.emplace_back(q.a, q.b);
    return k;
}

bool permutation_is_even(const std::vector<int>& perm) {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inversions;
    return inversions % 2 == 0;
}

/// Arrangements of `base` under coordinate-position permutations (all, or the
/// even/alternating subgroup) followed by every sign choice; exact dedup.
std::vector<Q5Vec> orbit(const Q5Vec& base, bool even_only, bool permute = true) {
    const int n = static_cast<int>(base.size());
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;

    std::set<Q5Key> seen;
    std::vector<Q5Vec> out;
    do {
        if (even_only && !permutation_is_even(perm)) continue;
        Q5Vec arranged(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            arranged[static_cast<std::size_t>(i)] = base[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];

        for (int mask = 0; mask < (1 << n); ++mask) {
            Q5Vec v = arranged;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) v[static_cast<std::size_t>(i)] = -v[static_cast<std::size_t>(i)];
            if (seen.insert(key_of(v)).second) out.push_back(std::move(v));
        }
        if (!permute) break;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Cyclic arrangements only (the classic icosahedron/dodecahedron listing).
std::vector<Q5Vec> cyclic_orbit(const Q5Vec& base) {
    const int n = static_cast<int>(base.size());
    std::set<Q5Key> seen;
    std::vector<Q5Vec> out;
    for (int s = 0; s < n; ++s) {
        Q5Vec arranged(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            arranged[static_cast<std::size_t>(i)] = base[static_cast<std::size_t>((i + s) % n)];
        for (int mask = 0; mask < (1 << n); ++mask) {
            Q5Vec v = arranged;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) v[static_cast<std::size_t>(i)] = -v[static_cast<std::size_t>(i)];
            if (seen.insert(key_of(v)).second) out.push_back(std::move(v));
        }
    }
    return out;
}

void append(std::vector<Q5Vec>& dst, const std::vector<Q5Vec>& src) {
    dst.insert(dst.end(), src.begin(), src.end());
}

std::vector<Q5Vec> dedup(std::vector<Q5Vec> v) {
    std::set<Q5Key> seen;
    std::vector<Q5Vec> out;
    for (auto& x : v)
        if (seen.insert(key_of(x)).second) out.push_back(std::move(x));
    return out;
}

DirectionSet from_exact(const std::vector<Q5Vec>& verts, int exponent, double expected_d,
                        std::string label) {
    DirectionSet set;
    set.dimension = static_cast<int>(verts.front().size());
    set.exponent = exponent;
    set.expected_d = expected_d;
    set.label = std::move(label);
    for (const Q5Vec& v : verts) {
        Vec w(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i].value();
        set.vectors.push_back(std::move(w));
        set.weights.push_back(1.0);
    }
    set.validate();
    return set;
}

}  // namespace

std::vector<Q5Vec> named_polytope_exact(const std::string& name) {
    const Q5 zero = Q5::integer(0), one = Q5::integer(1), two = Q5::integer(2);
    const Q5 phi = Q5::golden(), phi_inv = Q5::golden_inv();
    const Q5 phi_sq = Q5::golden_sq(), phi_inv_sq = Q5::golden_inv_sq();
    const Q5 s5 = Q5::sqrt5();

    if (name == "icosahedron") return cyclic_orbit({zero, one, phi});
    if (name == "dodecahedron") {
        std::vector<Q5Vec> v = cyclic_orbit({zero, phi_inv, phi});
        append(v, orbit({one, one, one}, false, false));  // sign changes only
        return dedup(std::move(v));
    }
    if (name == "cell24") return orbit({one, one, zero, zero}, false);
    if (name == "cell600") {
        std::vector<Q5Vec> v = orbit({one, one, one, one}, false, false);
        append(v, orbit({two, zero, zero, zero}, false));
        append(v, orbit({phi, one, phi_inv, zero}, true));
        return dedup(std::move(v));
    }
    if (name == "cell120") {
        std::vector<Q5Vec> v = orbit({two, two, zero, zero}, false);
        append(v, orbit({s5, one, one, one}, false));
        append(v, orbit({phi, phi, phi, phi_inv_sq}, false));
        append(v, orbit({phi_sq, phi_inv, phi_inv, phi_inv}, false));
        append(v, orbit({phi_sq, phi_inv_sq, one, zero}, true));
        append(v, orbit({s5, phi_inv, phi, zero}, true));
        append(v, orbit({two, one, phi, phi_inv}, true));
        return dedup(std::move(v));
    }
    throw std::invalid_argument("named_polytope: unknown name '" + name + "'");
}

DirectionSet named_polytope(const std::string& name) {
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    std::vector<Q5Vec> verts = named_polytope_exact(name);

    double d = 0.0;
    std::size_t expect_count = 0;
    if (name == "icosahedron") {
        d = (phi * phi + 1.0) * 4.0 / 5.0;
        expect_count = 12;
    } else if (name == "dodecahedron") {
        d = 12.0 / 5.0;
        expect_count = 20;
    } else if (name == "cell24") {
        d = 8.0 / 6.0;
        expect_count = 24;
    } else if (name == "cell600") {
        d = 8.0 / 3.0;
        expect_count = 120;
    } else if (name == "cell120") {
        d = 16.0 / 3.0;
        expect_count = 600;
    }
    if (verts.size() != expect_count)
        throw std::logic_error("named_polytope: unexpected vertex count for " + name);
    return from_exact(verts, 4, d, name);
}

// ---------------------------------------------------------------------------
// Generated families
// ---------------------------------------------------------------------------

DirectionSet polygon_set(int k, double rotation) {
    if (k < 1) throw std::invalid_argument("polygon_set: k >= 1 required");
    const int count = 2 * k + 2;
    const int half = k + 1;

    DirectionSet set;
    set.dimension = 2;
    set.exponent = 2 * k;
    set.expected_d = 1.0;
    std::ostringstream lbl;
    lbl << "polygon:k=" << k;
    set.label = lbl.str();

    set.vectors.resize(static_cast<std::size_t>(count));
    set.weights.assign(static_cast<std::size_t>(count), 1.0);
    for (int j = 0; j < half; ++j) {
        double th = rotation + 2.0 * M_PI * j / count;
        Vec v = {std::cos(th), std::sin(th)};
        set.vectors[static_cast<std::size_t>(j)] = v;
        set.vectors[static_cast<std::size_t>(j + half)] = negated(v);  // exact antipode
    }
    set.validate();
    return set;
}

DirectionSet weighted_cross_cube(int n) {
    if (n < 2 || n > 6) throw std::invalid_argument("weighted_cross_cube: n must be in 2..6");

    DirectionSet set;
    set.dimension = n;
    set.exponent = 4;
    set.expected_d = 4.0 / 6.0;
    std::ostringstream lbl;
    lbl << "cross-cube:n=" << n;
    set.label = lbl.str();

    const double half_cube_weight = 16.0 / std::ldexp(1.0, n);  // 16 / 2^n
    for (int mask = 0; mask < (1 << n); ++mask) {
        Vec v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = (mask & (1 << i)) ? -0.5 : 0.5;
        set.vectors.push_back(std::move(v));
        set.weights.push_back(half_cube_weight);
    }
    for (int i = 0; i < n; ++i)
        for (double s : {1.0, -1.0}) {
            Vec v(static_cast<std::size_t>(n), 0.0);
            v[static_cast<std::size_t>(i)] = s;
            set.vectors.push_back(std::move(v));
            set.weights.push_back(1.0);
        }
    set.validate();
    return set;
}

DirectionSet hexagon_p6_set() {
    DirectionSet set;
    set.dimension = 2;
    set.exponent = 6;
    set.expected_d = 1.0;
    set.displayed_coeffs = {{1.0 / 6.0, 4.0 / 6.0}};
    set.label = "p6-2d";

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<Vec> half = {{inv_sqrt2, inv_sqrt2}, {inv_sqrt2, -inv_sqrt2}, {1.0, 0.0}, {0.0, 1.0}};
    for (const Vec& v : half) {
        set.vectors.push_back(v);
        set.vectors.push_back(negated(v));
        set.weights.push_back(1.0);
        set.weights.push_back(1.0);
    }
    set.validate();
    return set;
}

DirectionSet direction_set_from_spec(const std::string& spec) {
    static const std::set<std::string> named = {"icosahedron", "dodecahedron", "cell24", "cell600",
                                                "cell120"};
    if (named.count(spec)) return named_polytope(spec);
    if (spec == "p6-2d") return hexagon_p6_set();

    auto parse_fields = [&](const std::string& body) {
        std::vector<std::pair<std::string, std::string>> fields;
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("direction set spec: expected key=value in '" + item + "'");
            fields.emplace_back(item.substr(0, eq), item.substr(eq + 1));
        }
        return fields;
    };

    if (spec.rfind("polygon:", 0) == 0) {
        int k = -1;
        double rot = 0.0;
        for (const auto& [key, val] : parse_fields(spec.substr(8))) {
            if (key == "k")
                k = std::stoi(val);
            else if (key == "rot")
                rot = std::stod(val);
            else
                throw std::invalid_argument("polygon spec: unknown field '" + key + "'");
        }
        if (k < 1) throw std::invalid_argument("polygon spec: k=<int >= 1> required");
        return polygon_set(k, rot);
    }
    if (spec.rfind("cross-cube:", 0) == 0) {
        int n = -1;
        for (const auto& [key, val] : parse_fields(spec.substr(11))) {
            if (key == "n")
                n = std::stoi(val);
            else
                throw std::invalid_argument("cross-cube spec: unknown field '" + key + "'");
        }
        return weighted_cross_cube(n);
    }
    throw std::invalid_argument("unknown direction set '" + spec +
                                "' (expected a polytope name, polygon:k=K[,rot=R], cross-cube:n=N, or p6-2d)");
}

// ---------------------------------------------------------------------------
// Averaging identity
// ---------------------------------------------------------------------------

double averaging_ratio(const DirectionSet& set, const SymmetricProbe& probe) {
    if (probe.matrix.n != set.dimension || static_cast<int>(probe.direction.size()) != set.dimension)
        throw std::invalid_argument("averaging_ratio: probe dimension mismatch");
    if (!probe.matrix.is_symmetric(1e-14))
        throw std::invalid_argument("averaging_ratio: matrix must be symmetric");
    if (std::abs(norm(probe.direction) - 1.0) > 1e-14)
        throw std::invalid_argument("averaging_ratio: direction must be a unit vector");

    const int pm2 = set.exponent - 2;
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < set.size(); ++j) {
        double c = ipow(dot(probe.direction, set.vectors[j]), pm2);
        num += set.weights[j] * c * probe.matrix.quad(set.vectors[j]);
        den += set.weights[j] * c;
    }
    if (!(den > 1e-300)) throw std::domain_error("averaging_ratio: degenerate denominator");
    return num / den;
}

VerifyReport verify_averaging_set(const DirectionSet& set, int p, int trials, double tol,
                                  std::uint64_t seed) {
    if (trials < 2) throw std::invalid_argument("verify_averaging_set: trials >= 2 required");
    if (p < 2 || p % 2 != 0) throw std::invalid_argument("verify_averaging_set: p must be even >= 2");

    DirectionSet probe_set = set;
    probe_set.exponent = p;

    Rng rng(seed);
    const int n = set.dimension;

    auto draw = [&](double& ratio, double& factor) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            SymmetricProbe probe{rng.symmetric(n), rng.unit_vector(n)};
            factor = probe.matrix.trace() / p +
                     (static_cast<double>(p - 2) / p) * probe.matrix.quad(probe.direction);
            ratio = averaging_ratio(probe_set, probe);
            if (std::abs(factor) > 1e-8) return;
        }
        throw std::runtime_error("verify_averaging_set: could not draw a well-conditioned probe");
    };

    // d from two independent probes
    double r1, f1, r2, f2;
    draw(r1, f1);
    draw(r2, f2);
    VerifyReport report;
    report.d_estimate = 0.5 * (r1 / f1 + r2 / f2);
    report.trials = trials;

    for (int t = 0; t < trials; ++t) {
        double r, f;
        SymmetricProbe probe{rng.symmetric(n), rng.unit_vector(n)};
        f = probe.matrix.trace() / p +
            (static_cast<double>(p - 2) / p) * probe.matrix.quad(probe.direction);
        r = averaging_ratio(probe_set, probe);
        report.max_residual = std::max(report.max_residual, std::abs(r - report.d_estimate * f));
    }

    report.pass = report.max_residual <= tol;
    if (set.expected_d && p == set.exponent) {
        report.expected_d = set.expected_d;
        report.d_error = std::abs(report.d_estimate - *set.expected_d);
        report.pass = report.pass && *report.d_error <= tol;
    }
    return report;
}

// ---------------------------------------------------------------------------
// Exact moment structure
// ---------------------------------------------------------------------------

Q5 exact_common_norm_sq(const std::vector<Q5Vec>& vertices) {
    if (vertices.empty()) throw std::invalid_argument("exact_common_norm_sq: empty set");
    Q5 first;
    bool have = false;
    for (const Q5Vec& v : vertices) {
        Q5 nsq;
        for (const Q5& c : v) nsq = nsq + c * c;
        if (!have) {
            first = nsq;
            have = true;
        } else if (nsq != first) {
            throw std::domain_error("exact_common_norm_sq: norms differ");
        }
    }
    return first;
}

MomentStructure exact_p4_moment_structure(const std::vector<Q5Vec>& vertices,
                                          const std::vector<BigRat>& weights) {
    MomentStructure ms;
    if (vertices.empty()) return ms;
    const int n = static_cast<int>(vertices.front().size());
    std::vector<BigRat> w = weights;
    if (w.empty()) w.assign(vertices.size(), BigRat(1));
    if (w.size() != vertices.size())
        throw std::invalid_argument("exact_p4_moment_structure: weight count mismatch");

    auto moment = [&](const std::vector<int>& idx) {
        Q5 s;
        for (std::size_t j = 0; j < vertices.size(); ++j) {
            Q5 term = Q5::integer(1);
            for (int i : idx) term = term * vertices[j][static_cast<std::size_t>(i)];
            s = s + term * w[j];
        }
        return s;
    };

    bool ok = true;

    // odd moments vanish
    for (int a = 0; a < n && ok; ++a) ok = moment({a}).is_zero();
    for (int a = 0; a < n && ok; ++a)
        for (int b = a; b < n && ok; ++b)
            for (int c = b; c < n && ok; ++c) ok = moment({a, b, c}).is_zero();

    // second moments: isotropic
    Q5 m2 = moment({0, 0});
    for (int a = 0; a < n && ok; ++a)
        for (int b = a; b < n && ok; ++b) {
            Q5 m = moment({a, b});
            ok = (a == b) ? (m == m2) : m.is_zero();
        }

    // fourth moments: diagonal 3*m4, double pairs m4, everything else zero
    Q5 m4 = moment({0, 0, 1, 1});
    Q5 three_m4 = m4 * BigRat(3);
    for (int a = 0; a < n && ok; ++a)
        for (int b = a; b < n && ok; ++b)
            for (int c = b; c < n && ok; ++c)
                for (int d = c; d < n && ok; ++d) {
                    Q5 m = moment({a, b, c, d});
                    if (a == b && b == c && c == d)
                        ok = (m == three_m4);
                    else if (a == b && c == d)
                        ok = (m == m4);
                    else
                        ok = m.is_zero();
                }

    ms.ok = ok;
    ms.second_moment = m2;
    ms.fourth_pair = m4;
    if (ok && !m2.is_zero()) ms.d_exact = (m4 * BigRat(4)) / m2;
    return ms;
}

}  // namespace pavg
