#pragma once

// Extrinsic geometry of the pair of orthogonal foliations F, F-perp.
//
//   H_F^alpha(e_i, e_j)     = -<∇_{e_i} e_alpha, e_j> = -omega(i, alpha, j)
//   H_Fperp^i(e_a, e_b)     = -<∇_{e_a} e_i, e_b>     = -omega(a, i, b)
//   h        = sum_i (∇_{e_i} e_i)^perp        (normalized: / n)
//   h_perp   = sum_a (∇_{e_a} e_a)^top         (normalized: / p)
//   Tr K^alpha = sum_i R(e_alpha, e_i, e_i, e_alpha)

#include "foliage/frames.hpp"

namespace foliage {

inline constexpr double kUmbilicityTolerance = 1e-9;

struct SecondForms {
    int n = 0;
    int p = 0;
    std::vector<linalg::Matrix> H_F;      // H_F[k](i,j), alpha = n + k
    std::vector<linalg::Matrix> H_Fperp;  // H_Fperp[i](a,b), frame indices n + a, n + b
    std::vector<double> norm2_H_F;
    std::vector<double> norm2_H_Fperp;
    WeingartenData weingarten;
};

struct MeanCurvatures {
    Vec h;
    Vec h_normalized;
    Vec h_perp;
    Vec h_perp_normalized;
};

struct BNorms {
    double B_F_norm2 = 0.0;
    double B_Fperp_norm2 = 0.0;
    double K_mixed = 0.0;
};

struct Umbilicity {
    bool is_umbilical = false;
    std::vector<double> lambda;     // lambda^i = trace(H_Fperp^i) / p
    double max_deviation = 0.0;     // max |H_Fperp^i - lambda^i I|
    double rotated_offdiag = 0.0;   // off-diagonal size after a fixed rotation of TF-perp
};

struct FoliationGeometryAtPoint {
    SecondForms forms;
    MeanCurvatures mean;
    std::vector<double> traceK;  // per alpha = n + k
    BNorms b;
};

enum class Side { Leaf, Perp };

SecondForms second_forms_at(const FrameConnection& conn);
MeanCurvatures mean_curvatures_at(const FrameConnection& conn, const AdaptedFrame& frame);
std::vector<double> trace_K_at(const RiemannAtPoint& riemann, const AdaptedFrame& frame);
BNorms B_norms_and_K_at(const FrameConnection& conn, std::span<const double> traceK);
Umbilicity umbilicity_test(const SecondForms& forms, double tolerance = kUmbilicityTolerance);

FoliationGeometryAtPoint foliation_geometry_at(const FrameGeometry& geo);

/// div_F(X) = sum_i <e_i, ∇_{e_i} X>, or div_Fperp over the alpha block.
double div_along_at(const FrameGeometry& geo, const FieldJet1& x, Side side);
/// Full divergence as the trace over the whole orthonormal frame.
double divergence(const FrameGeometry& geo, const FieldJet1& x);

/// h and h_perp (unnormalized) as fields with first derivatives.
FieldJet1 mean_curvature_field(const FrameGeometry& geo);
FieldJet1 mean_curvature_perp_field(const FrameGeometry& geo);

FieldJet1 scaled(FieldJet1 x, double s);

} // namespace foliage
