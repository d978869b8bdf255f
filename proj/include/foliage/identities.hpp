#pragma once

// Pointwise residuals (LHS - RHS) of the foliated-geometry identities.
//
// Public free functions take alpha as a 1-based frame index in n+1..n+p.
// PointEvaluator works with 0-based frame indices (alpha in n..m-1).
//
//   ℋ^{i,alpha} = H_Fperp^i(e_alpha, (∇_{e_i} e_alpha)^perp - [e_alpha, e_i]^perp)

#include "foliage/foliation.hpp"

#include <array>
#include <map>
#include <optional>
#include <string_view>

namespace foliage {

enum class IdentityId {
    THEOREM1,
    EQ5,
    EQ7,
    EQ8,
    EQ10,
    EQ11,
    THEOREM2,
    PROP2,
    EQ12,
    EQ13,
    LEMMA2,
    THEOREM5_INTEGRAND,
    THEOREM6_INTEGRAND,
};

inline constexpr std::array<IdentityId, 13> kAllIdentities = {
    IdentityId::THEOREM1, IdentityId::EQ5,      IdentityId::EQ7,    IdentityId::EQ8,
    IdentityId::EQ10,     IdentityId::EQ11,     IdentityId::THEOREM2, IdentityId::PROP2,
    IdentityId::EQ12,     IdentityId::EQ13,     IdentityId::LEMMA2, IdentityId::THEOREM5_INTEGRAND,
    IdentityId::THEOREM6_INTEGRAND,
};

std::string_view identity_name(IdentityId id);
std::optional<IdentityId> identity_from_name(std::string_view name);
/// EQ8, EQ10, EQ11, THEOREM2, PROP2: only meaningful when F-perp is totally umbilical.
bool is_umbilical_identity(IdentityId id);
/// The two integrands are checked by quadrature, not pointwise.
bool is_integral_identity(IdentityId id);

using ResidualMap = std::map<IdentityId, double>;

struct Theorem1Terms {
    double derivative = 0.0;  // e_alpha <h, e_alpha>
    double norm2_H = 0.0;     // |H_F^alpha|^2
    double traceK = 0.0;      // Tr K^alpha
    double sum_hcal = 0.0;    // sum_i ℋ^{i,alpha}
    double div_F = 0.0;       // div_F(∇_{e_alpha} e_alpha)
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};

struct UmbilicalResiduals {
    bool umbilical = false;
    double deviation = 0.0;
    ResidualMap residuals;  // empty when not umbilical; max |.| over alpha
};

struct Theorem6Terms {
    double integrand = 0.0;
    double eq13 = 0.0;
};

class PointEvaluator {
public:
    explicit PointEvaluator(const FrameGeometry& geo, double umbilicity_tolerance = kUmbilicityTolerance);
    explicit PointEvaluator(FrameGeometry&&, double = kUmbilicityTolerance) = delete;

    const FrameGeometry& geometry() const { return *geo_; }
    const FoliationGeometryAtPoint& foliation() const { return fg_; }
    const Umbilicity& umbilicity() const { return umbilicity_; }
    const FieldJet1& h_field() const { return h_; }
    const FieldJet1& h_perp_field() const { return h_perp_; }

    double hcal(int i, int alpha) const;
    double sum_hcal(int alpha) const;

    Theorem1Terms theorem1(int alpha) const;
    double eq5(int alpha) const;  // max over i in the diagonalizing basis
    double eq7(int alpha) const;  // max over i
    UmbilicalResiduals umbilical() const;
    double lemma2() const;
    double eq12() const;
    double eq13() const;
    double theorem5_integrand(int alpha) const;
    double theorem5_integrand_sum() const;
    double theorem6_integrand() const;

    /// Max |residual| over alpha for every pointwise identity; umbilical ones
    /// only when the point passes the umbilicity test.
    ResidualMap pointwise_residuals() const;

private:
    const FrameGeometry* geo_;
    FoliationGeometryAtPoint fg_;
    Umbilicity umbilicity_;
    FieldJet1 h_;
    FieldJet1 h_perp_;
    std::vector<Vec> brackets_;  // [e_alpha, e_i], index (alpha - n) * n + i
};

double theorem1_residual(const ManifoldSpec& spec, std::span<const double> point, int alpha);
ResidualMap proof_step_residuals(const ManifoldSpec& spec, std::span<const double> point, int alpha);
UmbilicalResiduals umbilical_residuals(const ManifoldSpec& spec, std::span<const double> point);
double lemma2_residual(const ManifoldSpec& spec, std::span<const double> point);
double integrand_theorem5(const ManifoldSpec& spec, std::span<const double> point, int alpha);
Theorem6Terms integrand_theorem6(const ManifoldSpec& spec, std::span<const double> point);

} // namespace foliage
