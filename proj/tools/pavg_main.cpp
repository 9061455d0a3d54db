// pavg: discrete p-averages, averaging-set verification, AMVP sweeps and
// Dirichlet solves for the game p-Laplacian on tessellating lattices.

#include <CLI11.hpp>

#include <complex>
#include <cstdint>
#include <iostream>
#include <sstream>

#include "pavg/algebra.hpp"
#include "pavg/io.hpp"
#include "pavg/operators.hpp"
#include "pavg/paverage.hpp"
#include "pavg/polytopes.hpp"
#include "pavg/rng.hpp"
#include "pavg/solver.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

double parse_p(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF") return pavg::kInfinity;
    try {
        double p = std::stod(text);
        if (!(p > 1.0)) throw std::invalid_argument("out of range");
        return p;
    } catch (const std::exception&) {
        throw pavg::ConfigError("flag --p: expected a number > 1 or 'inf', got '" + text + "'");
    }
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        pavg::write_json_atomic(out_path, j);
}

// ---------------------------------------------------------------------------

struct ComputeOpts {
    std::string p = "4";
    std::string values_path;
    double tol = 1e-12;
    std::string out;
};

int run_compute(const ComputeOpts& o) {
    pavg::WeightedSample sample = pavg::read_sample_csv(o.values_path);
    pavg::PAverageResult r = pavg::p_average(sample, parse_p(o.p), o.tol);
    emit(pavg::p_average_to_json(r), o.out);
    return kExitOk;
}

struct GammaOpts {
    std::string values_path;
    std::string out;
};

int run_gamma_median(const GammaOpts& o) {
    pavg::WeightedSample sample = pavg::read_sample_csv(o.values_path);
    std::vector<double> v = sample.values;
    std::sort(v.begin(), v.end());
    double g;
    try {
        g = pavg::gamma_median(v);
    } catch (const std::domain_error& e) {
        throw pavg::ConfigError(std::string("gamma-median: ") + e.what());
    }
    emit(json{{"gamma_median", g}, {"count", v.size()}}, o.out);
    return kExitOk;
}

struct VerifySetOpts {
    std::string set_spec;
    int p = 0;  // 0: use the set's own exponent
    int trials = 1000;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    std::string out;
    std::string export_csv;
    bool normalized = false;
};

int run_verify_set(const VerifySetOpts& o) {
    pavg::DirectionSet set;
    try {
        set = pavg::direction_set_from_spec(o.set_spec);
        if (o.normalized) set = set.normalized();
    } catch (const std::exception& e) {
        throw pavg::ConfigError(std::string("flag --set: ") + e.what());
    }
    const int p = o.p > 0 ? o.p : set.exponent;

    if (!o.export_csv.empty()) pavg::write_text_atomic(o.export_csv, pavg::direction_set_csv(set));

    pavg::VerifyReport rep;
    try {
        rep = pavg::verify_averaging_set(set, p, o.trials, o.tol, o.seed);
    } catch (const std::invalid_argument& e) {
        throw pavg::ConfigError(e.what());
    }

    json j{{"set", set.label},       {"p", p},
           {"vectors", set.size()},  {"trials", rep.trials},
           {"seed", o.seed},         {"tol", o.tol},
           {"d_estimate", rep.d_estimate}, {"max_residual", rep.max_residual},
           {"pass", rep.pass}};
    if (rep.expected_d) {
        j["expected_d"] = *rep.expected_d;
        j["d_error"] = *rep.d_error;
    }
    emit(j, o.out);
    return rep.pass ? kExitOk : kExitVerifyFail;
}

struct AmvpOpts {
    std::string set_spec;
    int p = 0;
    std::string probe_path;
    std::string field;
    std::vector<double> at;
    double eps0 = 0.1;
    int halvings = 6;
    std::string out;
    std::string out_csv;
};

int run_amvp(const AmvpOpts& o) {
    pavg::DirectionSet set;
    try {
        set = pavg::direction_set_from_spec(o.set_spec);
    } catch (const std::exception& e) {
        throw pavg::ConfigError(std::string("flag --set: ") + e.what());
    }
    const double p = o.p > 0 ? o.p : set.exponent;
    const std::vector<double> eps = pavg::halving_epsilons(o.eps0, o.halvings);

    pavg::AmvpReport rep;
    if (!o.probe_path.empty()) {
        rep = pavg::amvp_sweep(pavg::load_probe_file(o.probe_path), set, eps, p);
    } else if (!o.field.empty()) {
        if (o.at.empty()) throw pavg::ConfigError("flag --at: required with --field");
        pavg::ScalarField f;
        try {
            f = pavg::named_field(o.field);
        } catch (const std::exception& e) {
            throw pavg::ConfigError(std::string("flag --field: ") + e.what());
        }
        rep = pavg::amvp_sweep(f, o.at, set, eps, p);
    } else {
        throw pavg::ConfigError("one of --probe or --field is required");
    }

    if (!o.out_csv.empty()) {
        std::ostringstream os;
        os.precision(17);
        os << "epsilon,estimate\n";
        for (std::size_t i = 0; i < rep.epsilons.size(); ++i)
            os << rep.epsilons[i] << "," << rep.estimates[i] << "\n";
        pavg::write_text_atomic(o.out_csv, os.str());
    }

    json j{{"set", set.label},
           {"p", p},
           {"epsilons", rep.epsilons},
           {"estimates", rep.estimates},
           {"extrapolated_limit", rep.extrapolated_limit}};
    if (rep.reference) {
        j["reference"] = *rep.reference;
        j["extrapolation_error"] = *rep.extrapolation_error;
        j["error_at_smallest_eps"] = *rep.error_at_smallest_eps;
    }
    emit(j, o.out);
    return kExitOk;
}

struct SolveOpts {
    std::string config_path;
    std::string out = "solution.csv";
    std::string report;
};

int run_solve(const SolveOpts& o) {
    pavg::ProblemConfig cfg = pavg::load_problem_file(o.config_path);

    pavg::Lattice lat;
    if (cfg.stencil == "hexagon")
        lat = pavg::build_triangular_lattice(cfg.domain, cfg.epsilon, 2);
    else
        lat = pavg::build_d4_lattice(cfg.domain, cfg.epsilon);

    std::function<double(const pavg::Vec&)> g = cfg.boundary.value;
    std::function<double(const pavg::Vec&)> ref;
    const std::function<double(const pavg::Vec&)>* ref_ptr = nullptr;
    if (cfg.has_reference) {
        ref = cfg.boundary.value;
        ref_ptr = &ref;
    }
    pavg::SolveReport rep =
        pavg::solve_dirichlet(lat, g, cfg.p, cfg.tol, cfg.max_iters, cfg.sweep, ref_ptr);

    std::ostringstream os;
    os.precision(17);
    for (int c = 0; c < lat.dimension; ++c) os << "x" << (c + 1) << ",";
    os << "value\n";
    for (std::size_t i = 0; i < lat.size(); ++i) {
        for (int c = 0; c < lat.dimension; ++c) os << lat.nodes[i][static_cast<std::size_t>(c)] << ",";
        os << rep.solution[i] << "\n";
    }
    pavg::write_text_atomic(o.out, os.str());

    json j{{"converged", rep.converged},
           {"iterations", rep.iterations},
           {"final_update_norm", rep.final_update_norm},
           {"comparison_ok", rep.comparison_ok},
           {"interior_nodes", lat.interior_count()},
           {"total_nodes", lat.size()},
           {"epsilon", cfg.epsilon},
           {"stencil", cfg.stencil},
           {"scheme_step", lat.stencil_step},
           {"p", std::isinf(cfg.p) ? json("inf") : json(cfg.p)}};
    if (rep.sup_error_vs_reference) j["sup_error_vs_reference"] = *rep.sup_error_vs_reference;
    if (!o.report.empty())
        pavg::write_json_atomic(o.report, j);
    else
        std::cout << j.dump(2) << "\n";
    return rep.converged ? kExitOk : kExitVerifyFail;
}

struct WalshOpts {
    int degree = 8;
    int trials = 200;
    std::uint64_t seed = 0;
    std::string out;
};

int run_verify_walsh(const WalshOpts& o) {
    if (o.degree < 1 || o.trials < 1) throw pavg::ConfigError("verify-walsh: degree and trials must be >= 1");
    pavg::Rng rng(o.seed);
    double worst = 0.0;
    bool pass = true;
    for (int t = 0; t < o.trials; ++t) {
        int deg = 1 + static_cast<int>(rng.uniform() * o.degree);
        deg = std::min(deg, o.degree);
        std::vector<std::complex<double>> c(static_cast<std::size_t>(deg) + 1);
        for (auto& x : c) x = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        if (std::abs(c.back()) < 0.1) c.back() += std::complex<double>(0.5, 0.0);
        pavg::ComplexPoly poly(std::move(c));

        std::complex<double> z{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        double r = rng.uniform(0.1, 2.0);
        double theta = rng.uniform(0.0, 2.0 * M_PI);
        int n = poly.degree() + static_cast<int>(rng.uniform() * 4);

        std::complex<double> mean = pavg::polygon_mean(poly, z, r, theta, n);
        double rel = std::abs(mean - poly.eval(z)) / poly.magnitude_bound(z, r);
        worst = std::max(worst, rel);
        if (rel > 1e-10) pass = false;
    }

    // Hypothesis violated (n < degree): z^2 on a 2-gon misses by r^2 exactly.
    pavg::ComplexPoly sq({std::complex<double>(0.0, 0.0), std::complex<double>(0.0, 0.0),
                          std::complex<double>(1.0, 0.0)});
    std::complex<double> bad = pavg::polygon_mean(sq, {0.3, -0.2}, 0.7, 0.4, 1);
    bool negative_ok = std::abs(bad - sq.eval({0.3, -0.2})) > 0.4;  // r^2 = 0.49

    pass = pass && negative_ok;
    emit(json{{"trials", o.trials},
              {"max_degree", o.degree},
              {"seed", o.seed},
              {"worst_relative_error", worst},
              {"negative_test_failed_as_expected", negative_ok},
              {"pass", pass}},
         o.out);
    return pass ? kExitOk : kExitVerifyFail;
}

struct TrigOpts {
    int kmax = 12;
    std::uint64_t seed = 0;
    std::string out;
};

int run_verify_trig(const TrigOpts& o) {
    if (o.kmax < 1) throw pavg::ConfigError("verify-trig: kmax must be >= 1");
    pavg::Rng rng(o.seed);
    double worst = 0.0;
    bool pass = true;
    for (int k = 1; k <= o.kmax; ++k)
        for (int r = 1; r <= k; ++r)
            for (int rep = 0; rep < 5; ++rep) {
                double a = rng.uniform(0.0, 2.0 * M_PI);
                pavg::CosPowerSum s = pavg::cos_power_sum(k, r, a);
                double err = std::abs(s.numeric - pavg::to_double(s.closed_form));
                worst = std::max(worst, err / (2.0 * k + 2.0));
                if (err > 1e-12 * (2.0 * k + 2.0)) pass = false;
            }
    emit(json{{"kmax", o.kmax}, {"worst_scaled_error", worst}, {"pass", pass}}, o.out);
    return pass ? kExitOk : kExitVerifyFail;
}

int run_quintic_check(const std::string& out) {
    const std::vector<long long> data = {1, 6, 11, 13, 19};
    pavg::IntPoly eq = pavg::six_average_equation(data);
    pavg::DepressResult dep = pavg::depress(eq);

    pavg::IntPoly expected = pavg::depressed_six_average_quintic();
    bool depressed_matches = dep.depressed == pavg::RatPoly::from_int(expected);
    bool shift_is_ten = dep.shift == pavg::BigRat(10);

    pavg::IntPoly p20 = pavg::quintic_resolvent_sextic();
    std::vector<pavg::BigInt> roots = pavg::integer_root_test(p20);
    bool no_rational_root = roots.empty();

    bool pass = depressed_matches && shift_is_ten && no_rational_root;

    std::ostringstream shift_str;
    shift_str << dep.shift;
    json j{{"data", data},
           {"six_average_equation", eq.to_string()},
           {"shift", shift_str.str()},
           {"depressed_quintic", expected.to_string()},
           {"depressed_matches", depressed_matches},
           {"resolvent_sextic", p20.to_string()},
           {"integer_roots", json::array()},
           {"no_rational_root", no_rational_root},
           {"solvable_by_radicals", !no_rational_root},
           {"pass", pass}};
    for (const auto& r : roots) j["integer_roots"].push_back(r.str());
    emit(j, out);
    return pass ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete p-averages and mean value identities for the game p-Laplacian"};
    app.require_subcommand(1);

    ComputeOpts comp;
    auto* c_comp = app.add_subcommand("compute", "p-average of a weighted sample from CSV");
    c_comp->add_option("--p", comp.p, "exponent p (> 1, or 'inf' for the midrange)")->capture_default_str();
    c_comp->add_option("--values", comp.values_path, "CSV file: value[,weight] per line")->required();
    c_comp->add_option("--tol", comp.tol, "bracket-width tolerance")->capture_default_str();
    c_comp->add_option("--out", comp.out, "output JSON path (stdout if omitted)");

    GammaOpts gamma;
    auto* c_gamma = app.add_subcommand("gamma-median", "p->1+ limit average of an even-sized sample");
    c_gamma->add_option("--values", gamma.values_path, "CSV file of values (even count, distinct)")->required();
    c_gamma->add_option("--out", gamma.out, "output JSON path");

    VerifySetOpts vs;
    auto* c_vs = app.add_subcommand("verify-set", "verify the (weighted) p-averaging identity of a direction set");
    c_vs->add_option("--set", vs.set_spec,
                     "icosahedron|dodecahedron|cell24|cell600|cell120|p6-2d|polygon:k=K[,rot=R]|cross-cube:n=N")
        ->required();
    c_vs->add_option("--p", vs.p, "even exponent (defaults to the set's own)");
    c_vs->add_option("--trials", vs.trials, "random probes")->capture_default_str();
    c_vs->add_option("--tol", vs.tol, "identity residual tolerance")->capture_default_str();
    c_vs->add_option("--seed", vs.seed, "RNG seed")->capture_default_str();
    c_vs->add_flag("--normalized", vs.normalized, "rescale vectors to unit length first");
    c_vs->add_option("--out", vs.out, "output JSON path");
    c_vs->add_option("--export-csv", vs.export_csv, "write the vertex list as CSV");

    AmvpOpts am;
    auto* c_am = app.add_subcommand("amvp", "asymptotic mean value sweep d(eps) -> d");
    c_am->add_option("--set", am.set_spec, "direction set (as in verify-set)")->required();
    c_am->add_option("--p", am.p, "exponent (defaults to the set's own)");
    c_am->add_option("--probe", am.probe_path, "probe JSON ({base_point,base_value,gradient,hessian} or {field,at})");
    c_am->add_option("--field", am.field, "named analytic field (alternative to --probe)");
    c_am->add_option("--at", am.at, "evaluation point for --field")->expected(-1);
    c_am->add_option("--eps", am.eps0, "largest epsilon")->capture_default_str();
    c_am->add_option("--halvings", am.halvings, "number of epsilon halvings")->capture_default_str();
    c_am->add_option("--out", am.out, "output JSON path");
    c_am->add_option("--out-csv", am.out_csv, "epsilon,estimate table");

    SolveOpts so;
    auto* c_so = app.add_subcommand("solve", "Dirichlet problem for the game p-Laplacian");
    c_so->add_option("--config", so.config_path, "problem JSON file")->required();
    c_so->add_option("--out", so.out, "solution CSV path")->capture_default_str();
    c_so->add_option("--report", so.report, "report JSON path (stdout if omitted)");

    WalshOpts wo;
    auto* c_wo = app.add_subcommand("verify-walsh", "polygon mean value identity for complex polynomials");
    c_wo->add_option("--degree", wo.degree, "maximum degree")->capture_default_str();
    c_wo->add_option("--trials", wo.trials, "random polynomials")->capture_default_str();
    c_wo->add_option("--seed", wo.seed, "RNG seed")->capture_default_str();
    c_wo->add_option("--out", wo.out, "output JSON path");

    TrigOpts to;
    auto* c_to = app.add_subcommand("verify-trig", "cosine power sums against the closed form");
    c_to->add_option("--kmax", to.kmax, "largest k")->capture_default_str();
    c_to->add_option("--seed", to.seed, "RNG seed")->capture_default_str();
    c_to->add_option("--out", to.out, "output JSON path");

    std::string quintic_out;
    auto* c_qc = app.add_subcommand("quintic-check", "6-average quintic depression and radical solvability");
    c_qc->add_option("--out", quintic_out, "output JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (c_comp->parsed()) return run_compute(comp);
        if (c_gamma->parsed()) return run_gamma_median(gamma);
        if (c_vs->parsed()) return run_verify_set(vs);
        if (c_am->parsed()) return run_amvp(am);
        if (c_so->parsed()) return run_solve(so);
        if (c_wo->parsed()) return run_verify_walsh(wo);
        if (c_to->parsed()) return run_verify_trig(to);
        if (c_qc->parsed()) return run_quintic_check(quintic_out);
    } catch (const pavg::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
