#include "pavg/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace pavg {

namespace {

ScalarField make_x1() {
    ScalarField f;
    f.name = "x1";
    f.value = [](const Vec& x) { return x[0]; };
    f.gradient = [](const Vec& x) {
        Vec g(x.size(), 0.0);
        g[0] = 1.0;
        return g;
    };
    f.hessian = [](const Vec& x) { return SymMat(static_cast<int>(x.size())); };
    return f;
}

ScalarField make_re_z2() {
    ScalarField f;
    f.name = "re-z2";
    f.value = [](const Vec& x) { return x[0] * x[0] - x[1] * x[1]; };
    f.gradient = [](const Vec& x) {
        Vec g(x.size(), 0.0);
        g[0] = 2.0 * x[0];
        g[1] = -2.0 * x[1];
        return g;
    };
    f.hessian = [](const Vec& x) {
        SymMat h(static_cast<int>(x.size()));
        h.set(0, 0, 2.0);
        h.set(1, 1, -2.0);
        return h;
    };
    return f;
}

ScalarField make_norm_sq() {
    ScalarField f;
    f.name = "norm-sq";
    f.value = [](const Vec& x) { return dot(x, x); };
    f.gradient = [](const Vec& x) { return scaled(x, 2.0); };
    f.hessian = [](const Vec& x) {
        SymMat h = SymMat::identity(static_cast<int>(x.size()));
        for (double& v : h.a) v *= 2.0;
        return h;
    };
    return f;
}

ScalarField make_sin_x1_plus_x2_sq() {
    ScalarField f;
    f.name = "sin-x1-plus-x2-sq";
    f.value = [](const Vec& x) { return std::sin(x[0]) + x[1] * x[1]; };
    f.gradient = [](const Vec& x) {
        Vec g(x.size(), 0.0);
        g[0] = std::cos(x[0]);
        g[1] = 2.0 * x[1];
        return g;
    };
    f.hessian = [](const Vec& x) {
        SymMat h(static_cast<int>(x.size()));
        h.set(0, 0, -std::sin(x[0]));
        h.set(1, 1, 2.0);
        return h;
    };
    return f;
}

ScalarField make_one() {
    ScalarField f;
    f.name = "one";
    f.value = [](const Vec&) { return 1.0; };
    f.gradient = [](const Vec& x) { return Vec(x.size(), 0.0); };
    f.hessian = [](const Vec& x) { return SymMat(static_cast<int>(x.size())); };
    return f;
}

}  // namespace

ScalarField named_field(const std::string& name) {
    if (name == "x1") return make_x1();
    if (name == "re-z2") return make_re_z2();
    if (name == "norm-sq") return make_norm_sq();
    if (name == "sin-x1-plus-x2-sq") return make_sin_x1_plus_x2_sq();
    if (name == "one") return make_one();
    throw std::invalid_argument("named_field: unknown field '" + name + "'");
}

std::vector<std::string> named_field_list() {
    return {"x1", "re-z2", "norm-sq", "sin-x1-plus-x2-sq", "one"};
}

ScalarField constant_field(double c) {
    ScalarField f;
    f.name = "constant";
    f.value = [c](const Vec&) { return c; };
    f.gradient = [](const Vec& x) { return Vec(x.size(), 0.0); };
    f.hessian = [](const Vec& x) { return SymMat(static_cast<int>(x.size())); };
    return f;
}

ScalarField affine_field(Vec coeffs, double offset) {
    ScalarField f;
    f.name = "affine";
    f.value = [coeffs, offset](const Vec& x) { return dot(coeffs, x) + offset; };
    f.gradient = [coeffs](const Vec&) { return coeffs; };
    f.hessian = [](const Vec& x) { return SymMat(static_cast<int>(x.size())); };
    return f;
}

}  // namespace pavg
