#include "pavg/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace pavg {

namespace {

double parse_number(const std::string& text, const std::string& where) {
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(where + ": cannot parse number from '" + text + "'");
    }
}

}  // namespace

WeightedSample read_sample_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open sample file '" + path + "'");

    std::vector<double> values, weights;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string trimmed = line;
        if (auto cr = trimmed.find('\r'); cr != std::string::npos) trimmed.erase(cr);
        if (trimmed.empty() || trimmed[0] == '#') continue;

        std::string where = path + ":" + std::to_string(lineno);
        auto comma = trimmed.find(',');
        if (comma == std::string::npos) {
            values.push_back(parse_number(trimmed, where + " (value)"));
            weights.push_back(1.0);
        } else {
            values.push_back(parse_number(trimmed.substr(0, comma), where + " (value)"));
            weights.push_back(parse_number(trimmed.substr(comma + 1), where + " (weight)"));
        }
        if (weights.back() <= 0.0) throw ConfigError(where + ": weight must be positive");
    }
    if (values.empty()) throw ConfigError("sample file '" + path + "' contains no data");
    try {
        return WeightedSample(std::move(values), std::move(weights));
    } catch (const std::exception& e) {
        throw ConfigError("sample file '" + path + "': " + e.what());
    }
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        out << content;
        if (!out) throw std::runtime_error("write failed for '" + tmp + "'");
    }
    std::filesystem::rename(tmp, path);
}

void write_json_atomic(const std::string& path, const nlohmann::json& j) {
    write_text_atomic(path, j.dump(2) + "\n");
}

nlohmann::json p_average_to_json(const PAverageResult& r) {
    return nlohmann::json{{"value", r.value},
                          {"dispersion", r.dispersion},
                          {"residual", r.residual},
                          {"iterations", r.iterations}};
}

namespace {

Vec json_vec(const nlohmann::json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) throw ConfigError("field '" + field + "' must be a non-empty array");
    Vec v;
    for (const auto& x : j) {
        if (!x.is_number()) throw ConfigError("field '" + field + "' must contain numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

ScalarField parse_boundary(const nlohmann::json& j, bool& has_reference) {
    if (j.is_object() && j.contains("field")) {
        has_reference = true;
        try {
            return named_field(j.at("field").get<std::string>());
        } catch (const std::exception& e) {
            throw ConfigError(std::string("field 'boundary.field': ") + e.what());
        }
    }
    if (j.is_object() && j.contains("constant")) {
        has_reference = true;
        if (!j.at("constant").is_number()) throw ConfigError("field 'boundary.constant' must be a number");
        return constant_field(j.at("constant").get<double>());
    }
    if (j.is_object() && j.contains("affine")) {
        has_reference = true;
        const auto& a = j.at("affine");
        Vec coeffs = json_vec(a.at("coeffs"), "boundary.affine.coeffs");
        double off = a.contains("offset") ? a.at("offset").get<double>() : 0.0;
        return affine_field(std::move(coeffs), off);
    }
    throw ConfigError("field 'boundary' must contain one of: field, constant, affine");
}

Domain parse_domain(const nlohmann::json& j, int dimension) {
    auto parse_one = [dimension](const nlohmann::json& d) {
        if (!d.is_object() || !d.contains("type")) throw ConfigError("field 'domain' entries need a 'type'");
        const std::string type = d.at("type").get<std::string>();
        if (type == "ball" || type == "disk") {
            Vec c = d.contains("center") ? json_vec(d.at("center"), "domain.center")
                                         : Vec(static_cast<std::size_t>(dimension), 0.0);
            if (static_cast<int>(c.size()) != dimension)
                throw ConfigError("field 'domain.center' has wrong dimension");
            if (!d.contains("radius")) throw ConfigError("field 'domain.radius' is required for balls");
            return Domain::ball(std::move(c), d.at("radius").get<double>());
        }
        if (type == "box") {
            Vec lo = json_vec(d.at("min"), "domain.min");
            Vec hi = json_vec(d.at("max"), "domain.max");
            if (static_cast<int>(lo.size()) != dimension || static_cast<int>(hi.size()) != dimension)
                throw ConfigError("field 'domain.min/max' has wrong dimension");
            return Domain::box(std::move(lo), std::move(hi));
        }
        throw ConfigError("field 'domain.type' must be 'ball' or 'box'");
    };

    if (j.is_object() && j.contains("type") && j.at("type") == "union") {
        if (!j.contains("parts") || !j.at("parts").is_array() || j.at("parts").empty())
            throw ConfigError("field 'domain.parts' must be a non-empty array");
        Domain out = parse_one(j.at("parts").at(0));
        for (std::size_t i = 1; i < j.at("parts").size(); ++i) {
            Domain part = parse_one(j.at("parts").at(i));
            out.balls.insert(out.balls.end(), part.balls.begin(), part.balls.end());
            out.boxes.insert(out.boxes.end(), part.boxes.begin(), part.boxes.end());
        }
        return out;
    }
    if (j.is_object()) return parse_one(j);
    throw ConfigError("field 'domain' must be an object");
}

}  // namespace

ProblemConfig parse_problem_json(const nlohmann::json& j) {
    ProblemConfig cfg;
    try {
        if (!j.contains("dimension")) throw ConfigError("field 'dimension' is required");
        cfg.dimension = j.at("dimension").get<int>();
        if (cfg.dimension != 2 && cfg.dimension != 4)
            throw ConfigError("field 'dimension' must be 2 or 4");

        if (!j.contains("domain")) throw ConfigError("field 'domain' is required");
        cfg.domain = parse_domain(j.at("domain"), cfg.dimension);

        if (!j.contains("epsilon")) throw ConfigError("field 'epsilon' is required");
        cfg.epsilon = j.at("epsilon").get<double>();
        if (!(cfg.epsilon > 0.0)) throw ConfigError("field 'epsilon' must be positive");

        cfg.stencil = j.value("stencil", cfg.dimension == 2 ? "hexagon" : "d4");
        if (cfg.stencil != "hexagon" && cfg.stencil != "d4")
            throw ConfigError("field 'stencil' must be 'hexagon' or 'd4'");
        if ((cfg.stencil == "hexagon") != (cfg.dimension == 2))
            throw ConfigError("field 'stencil' does not match 'dimension'");

        if (j.contains("p")) {
            if (j.at("p").is_string()) {
                if (j.at("p").get<std::string>() != "inf")
                    throw ConfigError("field 'p' must be a number > 1 or \"inf\"");
                cfg.p = kInfinity;
            } else {
                cfg.p = j.at("p").get<double>();
            }
        }
        if (!(cfg.p > 1.0)) throw ConfigError("field 'p' must be > 1");

        if (!j.contains("boundary")) throw ConfigError("field 'boundary' is required");
        cfg.boundary = parse_boundary(j.at("boundary"), cfg.has_reference);

        cfg.tol = j.value("tol", 1e-10);
        if (!(cfg.tol > 0.0)) throw ConfigError("field 'tol' must be positive");
        cfg.max_iters = j.value("max_iters", 1000000L);
        if (cfg.max_iters < 1) throw ConfigError("field 'max_iters' must be >= 1");

        const std::string sweep = j.value("sweep", "jacobi");
        if (sweep == "jacobi")
            cfg.sweep = Sweep::jacobi;
        else if (sweep == "gauss_seidel")
            cfg.sweep = Sweep::gauss_seidel;
        else
            throw ConfigError("field 'sweep' must be 'jacobi' or 'gauss_seidel'");
    } catch (const ConfigError&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("problem config: ") + e.what());
    }
    return cfg;
}

ProblemConfig load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open problem file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("problem file '" + path + "': " + e.what());
    }
    return parse_problem_json(j);
}

QuadraticProbe parse_probe_json(const nlohmann::json& j) {
    try {
        if (j.contains("field")) {
            ScalarField f = named_field(j.at("field").get<std::string>());
            Vec at = json_vec(j.at("at"), "probe.at");
            return probe_from_field(f, at);
        }
        QuadraticProbe p;
        p.base_point = json_vec(j.at("base_point"), "probe.base_point");
        p.base_value = j.at("base_value").get<double>();
        p.gradient = json_vec(j.at("gradient"), "probe.gradient");
        const auto& h = j.at("hessian");
        const int n = static_cast<int>(p.base_point.size());
        if (!h.is_array() || static_cast<int>(h.size()) != n)
            throw ConfigError("field 'probe.hessian' must be an n x n array");
        p.hessian = SymMat(n);
        for (int r = 0; r < n; ++r) {
            Vec row = json_vec(h.at(static_cast<std::size_t>(r)), "probe.hessian row");
            if (static_cast<int>(row.size()) != n)
                throw ConfigError("field 'probe.hessian' must be an n x n array");
            for (int c = 0; c < n; ++c) p.hessian.a[static_cast<std::size_t>(r) * n + c] = row[static_cast<std::size_t>(c)];
        }
        if (!p.hessian.is_symmetric(1e-12)) throw ConfigError("field 'probe.hessian' must be symmetric");
        p.validate();
        return p;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("probe config: ") + e.what());
    }
}

QuadraticProbe load_probe_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open probe file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("probe file '" + path + "': " + e.what());
    }
    return parse_probe_json(j);
}

std::string direction_set_csv(const DirectionSet& set) {
    std::ostringstream os;
    os.precision(17);
    for (int c = 0; c < set.dimension; ++c) os << "x" << (c + 1) << ",";
    os << "weight\n";
    for (std::size_t j = 0; j < set.size(); ++j) {
        for (int c = 0; c < set.dimension; ++c) os << set.vectors[j][static_cast<std::size_t>(c)] << ",";
        os << set.weights[j] << "\n";
    }
    return os.str();
}

}  // namespace pavg
