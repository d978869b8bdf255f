#pragma once

// Built-in foliated tori and their closed-form oracles.
//
//   flat_torus(m, n)   identity metric, F = span(x1..xn)
//   warped_t2(a)       dx1^2 + (a + cos x1)^2 dx2^2, F = span(x1)
//   umbilical_t3(a)    dx1^2 + (a + cos x1)^2 (dx2^2 + dx3^2), F = span(x1)
//   diagonal_t3(a, b)  dx1^2 + (a + cos x1)^2 dx2^2 + (b + sin x1)^2 dx3^2, F = span(x1)
//   twisted_t3(a)      dx1^2 + exp(2 a sin x1 sin x2) dx2^2 + exp(2 a cos x1) dx3^2, F = span(x1, x2)
//
// Every box is 2*pi per axis.

#include "foliage/manifold_spec.hpp"
#include "foliage/tensor.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace foliage {

struct CatalogEntry {
    std::string name;
    int m = 0;
    int n = 0;
    int p = 0;
    expr::ParamMap defaults;
    bool has_oracle = false;
    std::string description;
};

const std::vector<CatalogEntry>& catalog();

/// Unknown names, unknown parameters and out-of-range values throw InputError.
/// Parameters not given take the catalog defaults.
ManifoldSpec build_manifold(const std::string& name, const expr::ParamMap& params = {});

using OracleValues = std::map<std::string, double>;

/// Analytic values at a point for flat_torus, warped_t2 and umbilical_t3.
/// Keys: h.k, h_perp.k, h_perp_normalized.k (chart components, 1-based),
/// lambda.i, traceK.alpha (1-based frame index), B_F_norm2, B_Fperp_norm2,
/// K_mixed, theorem6_integrand, volume_form. Throws InputError otherwise.
OracleValues closed_form_oracle(const ManifoldSpec& spec, std::span<const double> point);
OracleValues closed_form_oracle(const std::string& name, std::span<const double> point,
                                const expr::ParamMap& params = {});

} // namespace foliage
