#include "foliage/identities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace foliage {

namespace {

constexpr std::array<std::string_view, 13> kNames = {
    "THEOREM1", "EQ5",  "EQ7",    "EQ8",    "EQ10",   "EQ11",
    "THEOREM2", "PROP2", "EQ12", "EQ13", "LEMMA2", "THEOREM5_INTEGRAND",
    "THEOREM6_INTEGRAND",
};

double norm2(const FrameGeometry& geo, std::span<const double> v) { return geo.inner(v, v); }

int zero_based_alpha(const ManifoldSpec& spec, int alpha)
{
    if (alpha < spec.n + 1 || alpha > spec.m) {
        throw std::out_of_range("alpha must lie in " + std::to_string(spec.n + 1) + ".." + std::to_string(spec.m));
    }
    return alpha - 1;
}

} // namespace

std::string_view identity_name(IdentityId id) { return kNames[static_cast<std::size_t>(id)]; }

std::optional<IdentityId> identity_from_name(std::string_view name)
{
    for (std::size_t k = 0; k < kNames.size(); ++k) {
        if (kNames[k] == name) return static_cast<IdentityId>(k);
    }
    return std::nullopt;
}

bool is_umbilical_identity(IdentityId id)
{
    switch (id) {
    case IdentityId::EQ8:
    case IdentityId::EQ10:
    case IdentityId::EQ11:
    case IdentityId::THEOREM2:
    case IdentityId::PROP2:
        return true;
    default:
        return false;
    }
}

bool is_integral_identity(IdentityId id)
{
    return id == IdentityId::THEOREM5_INTEGRAND || id == IdentityId::THEOREM6_INTEGRAND;
}

PointEvaluator::PointEvaluator(const FrameGeometry& geo, double umbilicity_tolerance)
    : geo_(&geo),
      fg_(foliation_geometry_at(geo)),
      umbilicity_(umbilicity_test(fg_.forms, umbilicity_tolerance)),
      h_(mean_curvature_field(geo)),
      h_perp_(mean_curvature_perp_field(geo))
{
    for (int al = geo.n(); al < geo.m(); ++al) {
        for (int i = 0; i < geo.n(); ++i) brackets_.push_back(lie_bracket(geo.e1(al), geo.e1(i)));
    }
}

double PointEvaluator::hcal(int i, int alpha) const
{
    const auto& geo = *geo_;
    const Vec& br = brackets_[static_cast<std::size_t>((alpha - geo.n()) * geo.n() + i)];
    double s = 0.0;
    for (int be = geo.n(); be < geo.m(); ++be) {
        const double w = geo.omega(i, alpha, be) - geo.inner(br, geo.ev(be));
        s -= w * geo.omega(alpha, i, be);
    }
    return s;
}

double PointEvaluator::sum_hcal(int alpha) const
{
    double s = 0.0;
    for (int i = 0; i < geo_->n(); ++i) s += hcal(i, alpha);
    return s;
}

Theorem1Terms PointEvaluator::theorem1(int alpha) const
{
    const auto& geo = *geo_;
    const int k = alpha - geo.n();
    Theorem1Terms t;
    t.derivative = geo.derivative(alpha, geo.inner(h_, geo.e1(alpha)));
    t.norm2_H = fg_.forms.norm2_H_F[static_cast<std::size_t>(k)];
    t.traceK = fg_.traceK[static_cast<std::size_t>(k)];
    t.sum_hcal = sum_hcal(alpha);
    t.div_F = div_along_at(geo, geo.nabla(alpha, alpha), Side::Leaf);
    t.lhs = t.derivative - t.norm2_H - t.traceK;
    t.rhs = t.sum_hcal - t.div_F;
    t.residual = t.lhs - t.rhs;
    return t;
}

double PointEvaluator::eq5(int alpha) const
{
    const auto& geo = *geo_;
    const auto& eig = fg_.forms.weingarten.perp_eigen[static_cast<std::size_t>(alpha - geo.n())];
    const FrameGeometry rot(geo.spec(), geo.point(), rotate_leaf_block(geo.frame(), eig.vectors));
    double worst = 0.0;
    for (int i = 0; i < geo.n(); ++i) {
        const Vec v = lie_bracket(rot.e1(alpha), rot.e1(i));
        const Vec v_bot = project_top_bot(rot.frame(), rot.metric(), v).second;
        const double t1 = rot.inner(covariant_derivative(rot.christoffel(), v, rot.e1(i)), rot.ev(alpha));
        const double t2 = -rot.inner(covariant_derivative(rot.christoffel(), v_bot, rot.e1(i)), rot.ev(alpha));
        const double lambda = eig.values[static_cast<std::size_t>(i)];
        worst = std::max(worst, std::fabs(t1 + t2 - lambda * lambda));
    }
    return worst;
}

double PointEvaluator::eq7(int alpha) const
{
    const auto& geo = *geo_;
    double worst = 0.0;
    for (int i = 0; i < geo.n(); ++i) {
        const double t1 = geo.inner(geo.covariant(i, geo.nabla(alpha, i)), geo.ev(alpha));
        const double t2 = geo.inner(values(geo.nabla(alpha, i)), values(geo.nabla(i, alpha)));
        const double t3 = geo.inner(values(geo.nabla(i, i)), values(geo.nabla(alpha, alpha)));
        const double t4 = geo.inner(geo.ev(i), geo.covariant(i, geo.nabla(alpha, alpha)));
        worst = std::max(worst, std::fabs(t1 + t2 + t3 + t4));
    }
    return worst;
}

UmbilicalResiduals PointEvaluator::umbilical() const
{
    const auto& geo = *geo_;
    UmbilicalResiduals out;
    out.umbilical = umbilicity_.is_umbilical;
    out.deviation = umbilicity_.max_deviation;
    if (!out.umbilical) return out;

    const int n = geo.n();
    double sum_lambda2 = 0.0;
    for (double l : umbilicity_.lambda) sum_lambda2 += l * l;
    const FieldJet1 h_perp_norm = scaled(h_perp_, 1.0 / geo.p());
    const double h_perp_norm2 = norm2(geo, fg_.mean.h_perp_normalized);
    const double div_h_perp_norm = div_along_at(geo, h_perp_norm, Side::Leaf);

    for (const IdentityId id : {IdentityId::EQ8, IdentityId::EQ10, IdentityId::EQ11, IdentityId::THEOREM2,
                                IdentityId::PROP2}) {
        out.residuals[id] = 0.0;
    }
    auto record = [&](IdentityId id, double r) { out.residuals[id] = std::max(out.residuals[id], std::fabs(r)); };

    for (int al = n; al < geo.m(); ++al) {
        const Theorem1Terms t = theorem1(al);
        const Vec nabla_aa = values(geo.nabla(al, al));
        record(IdentityId::EQ8, t.sum_hcal - sum_lambda2);
        record(IdentityId::EQ10, t.sum_hcal - h_perp_norm2);
        // n <∇_{e_alpha} e_alpha, h_norm> = <∇_{e_alpha} e_alpha, h>
        record(IdentityId::EQ11, t.div_F - div_h_perp_norm + geo.inner(nabla_aa, fg_.mean.h));
        record(IdentityId::THEOREM2, t.derivative - t.norm2_H - t.traceK - sum_lambda2 + t.div_F);
        // n <∇_{e_alpha} h_norm, e_alpha> = <∇_{e_alpha} h, e_alpha>
        const double dh = geo.inner(geo.covariant(al, h_), geo.ev(al));
        record(IdentityId::PROP2, dh - t.norm2_H - t.traceK - h_perp_norm2 + div_h_perp_norm);
    }
    return out;
}

double PointEvaluator::lemma2() const
{
    const auto& geo = *geo_;
    double s = -div_along_at(geo, h_perp_, Side::Leaf);
    for (int al = geo.n(); al < geo.m(); ++al) {
        s += div_along_at(geo, geo.nabla(al, al), Side::Leaf);
        s += geo.inner(fg_.mean.h, values(geo.nabla(al, al)));
    }
    return s;
}

double PointEvaluator::eq12() const
{
    double s = fg_.b.B_F_norm2;
    for (double v : fg_.forms.norm2_H_F) s -= v;
    return s;
}

double PointEvaluator::eq13() const
{
    double s = -fg_.b.B_Fperp_norm2;
    for (int al = geo_->n(); al < geo_->m(); ++al) s += sum_hcal(al);
    return s;
}

double PointEvaluator::theorem5_integrand(int alpha) const
{
    const Theorem1Terms t = theorem1(alpha);
    const double div_perp = div_along_at(*geo_, geo_->nabla(alpha, alpha), Side::Perp);
    return t.derivative - t.norm2_H - t.traceK - t.sum_hcal - div_perp;
}

double PointEvaluator::theorem5_integrand_sum() const
{
    double s = 0.0;
    for (int al = geo_->n(); al < geo_->m(); ++al) s += theorem5_integrand(al);
    return s;
}

double PointEvaluator::theorem6_integrand() const
{
    const auto& geo = *geo_;
    return fg_.b.K_mixed + fg_.b.B_F_norm2 + fg_.b.B_Fperp_norm2 - norm2(geo, fg_.mean.h)
           - norm2(geo, fg_.mean.h_perp);
}

ResidualMap PointEvaluator::pointwise_residuals() const
{
    const auto& geo = *geo_;
    ResidualMap r;
    double t1 = 0.0;
    double e5 = 0.0;
    double e7 = 0.0;
    for (int al = geo.n(); al < geo.m(); ++al) {
        t1 = std::max(t1, std::fabs(theorem1(al).residual));
        e5 = std::max(e5, eq5(al));
        e7 = std::max(e7, eq7(al));
    }
    r[IdentityId::THEOREM1] = t1;
    r[IdentityId::EQ5] = e5;
    r[IdentityId::EQ7] = e7;
    r[IdentityId::EQ12] = std::fabs(eq12());
    r[IdentityId::EQ13] = std::fabs(eq13());
    r[IdentityId::LEMMA2] = std::fabs(lemma2());
    for (const auto& [id, v] : umbilical().residuals) r[id] = v;
    return r;
}

double theorem1_residual(const ManifoldSpec& spec, std::span<const double> point, int alpha)
{
    const int al = zero_based_alpha(spec, alpha);
    const FrameGeometry geo(spec, point);
    return PointEvaluator(geo).theorem1(al).residual;
}

ResidualMap proof_step_residuals(const ManifoldSpec& spec, std::span<const double> point, int alpha)
{
    const int al = zero_based_alpha(spec, alpha);
    const FrameGeometry geo(spec, point);
    const PointEvaluator ev(geo);
    return {{IdentityId::EQ5, ev.eq5(al)}, {IdentityId::EQ7, ev.eq7(al)}};
}

UmbilicalResiduals umbilical_residuals(const ManifoldSpec& spec, std::span<const double> point)
{
    const FrameGeometry geo(spec, point);
    return PointEvaluator(geo).umbilical();
}

double lemma2_residual(const ManifoldSpec& spec, std::span<const double> point)
{
    const FrameGeometry geo(spec, point);
    return std::fabs(PointEvaluator(geo).lemma2());
}

double integrand_theorem5(const ManifoldSpec& spec, std::span<const double> point, int alpha)
{
    const int al = zero_based_alpha(spec, alpha);
    const FrameGeometry geo(spec, point);
    return PointEvaluator(geo).theorem5_integrand(al);
}

Theorem6Terms integrand_theorem6(const ManifoldSpec& spec, std::span<const double> point)
{
    const FrameGeometry geo(spec, point);
    const PointEvaluator ev(geo);
    return {ev.theorem6_integrand(), ev.eq13()};
}

} // namespace foliage
