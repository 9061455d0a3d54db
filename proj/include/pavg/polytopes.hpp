#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pavg/exact.hpp"
#include "pavg/linalg.hpp"

namespace pavg {

/// Finite symmetric set of directions with positive weights. Closed under
/// negation, spans R^n; carries the even exponent it averages for and the
/// expected identity constant d_{p,n} when known.
struct DirectionSet {
    int dimension = 0;
    std::vector<Vec> vectors;
    std::vector<double> weights;
    int exponent = 4;  // even p >= 2
    std::optional<double> expected_d;
    std::string label;
    /// For sets whose source states the ratio as raw coefficients
    /// (trace, Rayleigh) instead of a single constant.
    std::optional<std::array<double, 2>> displayed_coeffs;

    std::size_t size() const { return vectors.size(); }

    /// Throws unless the set is negation-closed (with matching weights),
    /// zero-free and spanning.
    void validate(double tol = 1e-12) const;

    /// Same directions normalized to unit length (weights unchanged);
    /// requires all vectors to share one norm so the expected constant
    /// rescales as d / |eta|^2.
    DirectionSet normalized() const;

    /// All vectors scaled by s > 0 (expected_d rescales by s^2).
    DirectionSet scaled_by(double s) const;

    /// Common squared norm of the vectors, or throw if they differ.
    double common_norm_sq(double tol = 1e-9) const;
};

struct SymmetricProbe {
    SymMat matrix;  // symmetric
    Vec direction;  // |u| = 1
};

/// 2k+2 equally spaced unit vectors starting at `rotation`, generated in
/// antipodal pairs; averaging exponent p = 2k, expected d = 1.
DirectionSet polygon_set(int k, double rotation = 0.0);

/// Exceptional polytope vertex sets with p = 4:
/// icosahedron, dodecahedron, cell24, cell600, cell120.
DirectionSet named_polytope(const std::string& name);

/// Weighted hypercube-plus-cross set in dimension n (2..6): half-cube
/// vertices (+-1/2,...) with weight 16/2^n plus signed unit basis vectors
/// with weight 1; p = 4, expected d = 4/6.
DirectionSet weighted_cross_cube(int n);

/// The eight vectors (+-1/sqrt2, +-1/sqrt2), (+-1,0), (0,+-1) with p = 6.
/// The displayed ratio is (tr(A) + 4<Au,u>)/6, i.e. the coefficient pair
/// (1/6, 4/6); both are consistent with d = 1 in the normalized form.
DirectionSet hexagon_p6_set();

/// Parses "icosahedron" | ... | "polygon:k=3,rot=0.5" | "cross-cube:n=4" |
/// "p6-2d" into a DirectionSet (CLI surface).
DirectionSet direction_set_from_spec(const std::string& spec);

/// The displayed weighted-average ratio
///   sum_j <u,eta_j>^{p-2} <A eta_j, eta_j> w_j / sum_j <u,eta_j>^{p-2} w_j .
double averaging_ratio(const DirectionSet& set, const SymmetricProbe& probe);

struct VerifyReport {
    double d_estimate = 0.0;
    double max_residual = 0.0;
    bool pass = false;
    int trials = 0;
    std::optional<double> expected_d;
    std::optional<double> d_error;  // |d_estimate - expected_d|
};

/// Samples random symmetric matrices (entries uniform in [-1,1]) and random
/// unit directions; estimates d from two independent probes and checks
///   | R(A,u) - d (tr(A)/p + ((p-2)/p) <Au,u>) | <= tol
/// across all trials.
VerifyReport verify_averaging_set(const DirectionSet& set, int p, int trials, double tol,
                                  std::uint64_t seed);

// ---------------------------------------------------------------------------
// Exact Q[sqrt(5)] construction and verification
// ---------------------------------------------------------------------------

using Q5Vec = std::vector<Q5>;

/// Exact coordinates for the named polytopes (same order as named_polytope).
std::vector<Q5Vec> named_polytope_exact(const std::string& name);

/// Moment structure of a weighted direction set in exact arithmetic.
/// For an exponent-4 averaging set the required structure is:
///   * odd moments of order 1 and 3 vanish,
///   * sum_j eta_a eta_b w_j        = m2 * delta_ab,
///   * sum_j eta_a eta_b eta_c eta_d w_j is fully symmetric with
///     diagonal 3*m4, paired entries m4, all others zero,
/// which forces the displayed ratio to equal
///   d * (tr(A)/4 + (2/4)<Au,u>)  with  d = 4*m4/m2, exactly.
struct MomentStructure {
    bool ok = false;
    Q5 second_moment;  // m2
    Q5 fourth_pair;    // m4
    Q5 d_exact;        // 4*m4/m2 (valid when ok and m2 rational-invertible)
};

MomentStructure exact_p4_moment_structure(const std::vector<Q5Vec>& vertices,
                                          const std::vector<BigRat>& weights);

/// Exact common squared norm of a vertex list (throws if norms differ).
Q5 exact_common_norm_sq(const std::vector<Q5Vec>& vertices);

}  // namespace pavg
