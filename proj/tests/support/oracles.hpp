#pragma once

// Independent reference computations for tests. Everything here uses only
// value evaluation (expr::eval, metric values, frame values) and finite
// differences, never the jet derivatives under test.

#include "foliage/catalog.hpp"
#include "foliage/identities.hpp"
#include "foliage/linalg.hpp"

#include <functional>
#include <random>
#include <string>

namespace foliage::ref {

using ValueFn = std::function<double(const Vec&)>;
using VectorFn = std::function<Vec(const Vec&)>;

/// 4th-order central differences.
Vec fd_gradient(const ValueFn& f, const Vec& x, double step = 1e-3);
linalg::Matrix fd_hessian(const ValueFn& f, const Vec& x, double step = 1e-3);
/// d/dt f(x + t v) at t = 0.
double fd_directional(const ValueFn& f, const Vec& x, const Vec& v, double step = 1e-4);
/// Jacobian J(C, D) = ∂_D F^C.
linalg::Matrix fd_jacobian(const VectorFn& f, const Vec& x, double step = 1e-4);

linalg::Matrix metric_values(const ManifoldSpec& spec, const Vec& x);
/// Γ^C_AB(C, A, B) from finite differences of metric values.
Tensor<3> fd_christoffel(const ManifoldSpec& spec, const Vec& x, double step = 1e-4);
/// R(A,B,C,D) from finite differences of fd_christoffel.
Tensor<4> fd_riemann(const ManifoldSpec& spec, const Vec& x, double step = 1e-3);

/// Frame vector e_a at x (values only, 0-based frame index).
Vec frame_vector(const ManifoldSpec& spec, const Vec& x, int a);
/// <h, e_alpha> at x from the pointwise mean curvature (no jets).
double h_component(const ManifoldSpec& spec, const Vec& x, int alpha);

/// Theorem 1 residual with every derivative taken by finite differences of
/// pointwise values: brackets, the e_alpha<h,e_alpha> term and div_F.
struct FdTheorem1 {
    double derivative = 0.0;
    double sum_hcal = 0.0;
    double div_F = 0.0;
    double residual = 0.0;
};
FdTheorem1 fd_theorem1(const ManifoldSpec& spec, const Vec& x, int alpha);

/// Random expression in x1..x<dim> and the parameters `c` and `k`, with
/// values kept O(1) so finite differences stay well conditioned.
std::string random_expression(std::mt19937_64& rng, int dim, int depth = 4);

/// Catalog manifold names with default parameters.
std::vector<std::string> catalog_names();

} // namespace foliage::ref
