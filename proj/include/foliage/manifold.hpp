#pragma once

// Metric, Levi-Civita connection and curvature on a chart, with exact
// derivatives obtained from order-2 jets of the metric components.
//
// Curvature convention:
//   R(X,Y)Z = ∇_X ∇_Y Z - ∇_Y ∇_X Z - ∇_[X,Y] Z,   R(X,Y,Z,W) = <R(X,Y)Z, W>
// so R(X,Y,Y,X) > 0 on the round sphere.

#include "foliage/jet.hpp"
#include "foliage/manifold_spec.hpp"
#include "foliage/tensor.hpp"

#include <span>
#include <vector>

namespace foliage {

/// Metric is degenerate or indefinite at the evaluation point, or a frame
/// cannot be built there.
class GeometryError : public InputError {
public:
    using InputError::InputError;
};

/// Vector field components carrying first derivatives.
using FieldJet1 = std::vector<Jet1>;
/// Vector field components carrying first and second derivatives.
using FieldJet2 = std::vector<Jet2>;
/// Vector field given by m expression components.
using VectorFieldExpr = std::vector<expr::Expr>;

struct MetricAtPoint {
    int dim = 0;
    Tensor<2> g;       // g(A,B)
    Tensor<3> g_grad;  // g_grad(A,B,C) = ∂_C g_AB
    Tensor<4> g_hess;  // g_hess(A,B,C,D) = ∂_C ∂_D g_AB
    Tensor<2> g_inv;

    Jet2 jet(int a, int b) const;
    Jet1 jet1(int a, int b) const;
    double inner(std::span<const double> u, std::span<const double> v) const;
};

struct ChristoffelAtPoint {
    int dim = 0;
    Tensor<3> gamma;       // gamma(C,A,B) = Γ^C_AB
    Tensor<4> gamma_grad;  // gamma_grad(C,A,B,D) = ∂_D Γ^C_AB

    Jet1 jet(int c, int a, int b) const;
};

struct RiemannAtPoint {
    int dim = 0;
    Tensor<4> R;  // R(A,B,C,D) = R(∂_A, ∂_B, ∂_C, ∂_D)

    /// Full contraction R(u, v, w, z).
    double eval(std::span<const double> u, std::span<const double> v, std::span<const double> w,
                std::span<const double> z) const;
};

/// Throws GeometryError (with the smallest eigenvalue) when g is not positive definite.
MetricAtPoint metric_at(const ManifoldSpec& spec, std::span<const double> point);
ChristoffelAtPoint christoffel_at(const MetricAtPoint& mp);
RiemannAtPoint riemann_at(const MetricAtPoint& mp, const ChristoffelAtPoint& cp);

FieldJet2 eval_field(const VectorFieldExpr& field, std::span<const double> point, const expr::ParamMap& params);
FieldJet1 truncate(const FieldJet2& field);
Vec values(const FieldJet1& field);
Vec values(const FieldJet2& field);

/// (∇_X Y)^C = X^D ∂_D Y^C + X^D Y^E Γ^C_DE at the point.
Vec covariant_derivative(const ChristoffelAtPoint& cp, std::span<const double> x, const FieldJet1& y);
/// Same, as a field with first derivatives; needs second derivatives of Y.
FieldJet1 covariant_derivative_field(const ChristoffelAtPoint& cp, const FieldJet1& x, const FieldJet2& y);
/// [X,Y]^C = X^A ∂_A Y^C - Y^A ∂_A X^C.
Vec lie_bracket(const FieldJet1& x, const FieldJet1& y);
/// <U,V> as a scalar field with first derivatives.
Jet1 inner_jet(const MetricAtPoint& mp, const FieldJet1& u, const FieldJet1& v);

Vec covariant_derivative_at(const ManifoldSpec& spec, const VectorFieldExpr& x, const VectorFieldExpr& y,
                            std::span<const double> point);
Vec lie_bracket_at(const ManifoldSpec& spec, const VectorFieldExpr& x, const VectorFieldExpr& y,
                   std::span<const double> point);

struct CurvatureSanity {
    double metric_compatibility = 0.0;
    double torsion = 0.0;
    double riemann_symmetry = 0.0;
    std::size_t samples = 0;
};

/// Max residuals of ∇g = 0, torsion-freeness and Riemann symmetries
/// (both antisymmetries, pair symmetry, first Bianchi) over the points.
/// Test fields for the torsion and compatibility checks are the rows of g.
CurvatureSanity curvature_sanity(const ManifoldSpec& spec, std::span<const Vec> points);
CurvatureSanity curvature_sanity_at(const ManifoldSpec& spec, std::span<const double> point);

} // namespace foliage
