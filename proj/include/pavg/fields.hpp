#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pavg/linalg.hpp"

namespace pavg {

/// Analytic scalar field with optional derivatives, used for boundary data,
/// manufactured solutions and operator references.
struct ScalarField {
    std::string name;
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> gradient;    // may be empty
    std::function<SymMat(const Vec&)> hessian;  // may be empty

    bool has_derivatives() const { return static_cast<bool>(gradient) && static_cast<bool>(hessian); }
};

/// Registry of named fields: "x1" (linear), "re-z2" (x1^2 - x2^2), "norm-sq",
/// "sin-x1-plus-x2-sq" (sin x1 + x2^2), "one". Any dimension where sensible.
ScalarField named_field(const std::string& name);

ScalarField constant_field(double c);

/// g(x) = <coeffs, x> + offset.
ScalarField affine_field(Vec coeffs, double offset);

std::vector<std::string> named_field_list();

}  // namespace pavg
