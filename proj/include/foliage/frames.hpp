#pragma once

// Orthonormal adapted frames as smooth local frame fields.
//
// Frame index convention (0-based): e_0..e_{n-1} are tangent to F ("leaf"
// directions, i, j), e_n..e_{m-1} are tangent to F-perp (alpha, beta).

#include "foliage/linalg.hpp"
#include "foliage/manifold.hpp"

#include <utility>

namespace foliage {

inline constexpr double kPivotTolerance = 1e-8;
inline constexpr double kIntegrabilityTolerance = 1e-8;

struct AdaptedFrame {
    int m = 0;
    int n = 0;
    int p = 0;
    Tensor<2> e;       // e(A,C): chart component C of e_A
    Tensor<3> e_grad;  // e_grad(A,C,D) = ∂_D e_A^C
    Tensor<4> e_hess;  // e_hess(A,C,D,E) = ∂_D ∂_E e_A^C

    FieldJet2 field(int a) const;
    Vec vector(int a) const;
};

/// omega(A,B,C) = <∇_{e_A} e_B, e_C>. For a fixed alpha and leaf index i
/// the proof coefficients read b_{iA} = omega(alpha, i, A) and
/// c_B = omega(i, alpha, B).
struct FrameConnection {
    int m = 0;
    int n = 0;
    int p = 0;
    Tensor<3> omega;

    double b(int alpha, int i, int a) const { return omega(alpha, i, a); }
    double c(int i, int alpha, int b) const { return omega(i, alpha, b); }
};

/// Weingarten operators as matrices in the adapted frame.
/// perp[k] is A_{e_alpha} (n x n) for alpha = n + k; leaf[i] is A_{e_i} (p x p).
struct WeingartenData {
    std::vector<linalg::Matrix> perp;
    std::vector<linalg::SymmetricEigen> perp_eigen;  // eigenvalues lambda_i^alpha
    std::vector<linalg::Matrix> leaf;
    std::vector<linalg::SymmetricEigen> leaf_eigen;
};

/// Deterministic Gram-Schmidt: F-spanning fields in declaration order, then
/// coordinate fields (the declared F-perp coordinates, or all coordinates in
/// order for spanning-field declarations) with their F-projection removed.
/// Throws GeometryError on rank deficiency (relative pivot below kPivotTolerance).
AdaptedFrame adapted_frame_at(const ManifoldSpec& spec, const MetricAtPoint& mp, std::span<const double> point);
AdaptedFrame adapted_frame_at(const ManifoldSpec& spec, std::span<const double> point);

FrameConnection frame_connection(const MetricAtPoint& mp, const ChristoffelAtPoint& cp, const AdaptedFrame& frame);

/// Max violation of Frobenius integrability for F (|<[e_i,e_j], e_alpha>|)
/// and F-perp (|<[e_alpha,e_beta], e_i>|), read off the connection.
struct IntegrabilityResidual {
    double leaf = 0.0;
    double perp = 0.0;
};
IntegrabilityResidual integrability_residual(const FrameConnection& conn);

/// (v_top, v_bot): projections onto F and F-perp.
std::pair<Vec, Vec> project_top_bot(const AdaptedFrame& frame, const MetricAtPoint& mp, std::span<const double> v);

/// Frame with the leaf block rotated by the constant orthogonal matrix q:
/// e'_i = sum_k q(k,i) e_k. Still a smooth adapted frame near the point.
AdaptedFrame rotate_leaf_block(const AdaptedFrame& frame, const linalg::Matrix& q);

/// Everything computed once at a point: metric, connection, curvature, frame,
/// and the fields ∇_{e_A} e_B with first derivatives. Holds a reference to
/// the spec, which must outlive it.
class FrameGeometry {
public:
    /// Throws GeometryError on definiteness, rank, or integrability failure.
    FrameGeometry(const ManifoldSpec& spec, std::span<const double> point, bool check_integrability = true);
    /// Uses an explicitly supplied frame (e.g. a rotated one).
    FrameGeometry(const ManifoldSpec& spec, std::span<const double> point, AdaptedFrame frame);
    FrameGeometry(ManifoldSpec&&, std::span<const double>, bool = true) = delete;
    FrameGeometry(ManifoldSpec&&, std::span<const double>, AdaptedFrame) = delete;

    const ManifoldSpec& spec() const { return *spec_; }
    const Vec& point() const { return point_; }
    int m() const { return frame_.m; }
    int n() const { return frame_.n; }
    int p() const { return frame_.p; }

    const MetricAtPoint& metric() const { return metric_; }
    const ChristoffelAtPoint& christoffel() const { return christoffel_; }
    const RiemannAtPoint& riemann() const { return riemann_; }
    const AdaptedFrame& frame() const { return frame_; }
    const FrameConnection& connection() const { return connection_; }

    const FieldJet2& e(int a) const { return fields_[static_cast<std::size_t>(a)]; }
    const FieldJet1& e1(int a) const { return fields1_[static_cast<std::size_t>(a)]; }
    const Vec& ev(int a) const { return vectors_[static_cast<std::size_t>(a)]; }
    /// ∇_{e_A} e_B as a field with first derivatives.
    const FieldJet1& nabla(int a, int b) const { return nabla_[static_cast<std::size_t>(a * m() + b)]; }
    double omega(int a, int b, int c) const { return connection_.omega(a, b, c); }

    /// ∇_{e_A} X at the point.
    Vec covariant(int a, const FieldJet1& x) const { return covariant_derivative(christoffel_, ev(a), x); }
    /// e_A(s) for a scalar field s.
    double derivative(int a, const Jet1& s) const { return s.directional(ev(a)); }
    double inner(std::span<const double> u, std::span<const double> v) const { return metric_.inner(u, v); }
    Jet1 inner(const FieldJet1& u, const FieldJet1& v) const { return inner_jet(metric_, u, v); }

private:
    void build();

    const ManifoldSpec* spec_;
    Vec point_;
    MetricAtPoint metric_;
    ChristoffelAtPoint christoffel_;
    RiemannAtPoint riemann_;
    AdaptedFrame frame_;
    FrameConnection connection_;
    std::vector<FieldJet2> fields_;
    std::vector<FieldJet1> fields1_;
    std::vector<Vec> vectors_;
    std::vector<FieldJet1> nabla_;
};

} // namespace foliage
