#pragma once

// Periodic trapezoid quadrature over the chart box of a closed torus.

#include "foliage/identities.hpp"

#include <functional>

namespace foliage {

struct QuadratureGrid {
    int points_per_axis = 0;
    std::vector<double> box;

    std::size_t node_count() const;
    double weight() const;  // prod L_k / N^m
    Vec node(std::size_t index) const;
};

/// Throws InputError for N < 8.
QuadratureGrid make_grid(const ManifoldSpec& spec, int points_per_axis);

/// sqrt(det g) from the Cholesky factor. Throws GeometryError when g is not
/// positive definite.
double volume_form_at(const MetricAtPoint& mp);

using ScalarField = std::function<double(std::span<const double>)>;

/// sum over nodes of field(x) sqrt(det g(x)) * weight, evaluated in parallel and
/// reduced in node order with compensated summation.
double integrate_over_torus(const ManifoldSpec& spec, const ScalarField& field, const QuadratureGrid& grid);

/// 0-based axes referenced by the metric or the spanning fields. Integrands
/// built from the geometry are constant along the other axes.
std::vector<int> active_axes(const ManifoldSpec& spec);

struct IntegralCheck {
    IdentityId which = IdentityId::THEOREM5_INTEGRAND;
    int points_per_axis = 0;
    std::size_t nodes = 0;  // nodes actually evaluated
    double integral = 0.0;
};

/// Integrates one integrand (Theorem 5 summed over alpha). The grid is
/// collapsed along inactive axes unless `reduce_axes` is false.
IntegralCheck run_integral_check(const ManifoldSpec& spec, IdentityId which, const QuadratureGrid& grid,
                                 bool reduce_axes = true);
/// Both integrands in a single sweep: {THEOREM5_INTEGRAND, THEOREM6_INTEGRAND}.
std::array<IntegralCheck, 2> run_integral_checks(const ManifoldSpec& spec, const QuadratureGrid& grid,
                                                  bool reduce_axes = true);

} // namespace foliage
