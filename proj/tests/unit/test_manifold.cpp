#include "foliage/manifold.hpp"

#include "foliage/catalog.hpp"
#include "foliage/sampling.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace foliage;

namespace {

ManifoldSpec sphere_patch()
{
    ManifoldSpec s;
    s.name = "sphere_patch";
    s.m = 2;
    s.n = 1;
    s.p = 1;
    s.box = {2.0 * M_PI, 2.0 * M_PI};
    s.metric = {expr::parse("1"), expr::parse("0"), expr::parse("0"), expr::parse("sin(x1)^2")};
    s.foliation = CoordinateSplit{{0}, {1}};
    return s;
}

} // namespace

TEST(Metric, FlatTorusIsIdentity)
{
    const auto spec = build_manifold("flat_torus", {{"m", 3}, {"n", 1}});
    const Vec x{0.3, 1.0, 2.0};
    const auto mp = metric_at(spec, x);
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            EXPECT_EQ(mp.g(a, b), a == b ? 1.0 : 0.0);
            for (int c = 0; c < 3; ++c) EXPECT_EQ(mp.g_grad(a, b, c), 0.0);
        }
    }
}

TEST(Metric, WarpedAtOrigin)
{
    const auto spec = build_manifold("warped_t2");
    const auto mp = metric_at(spec, Vec{0.0, 0.0});
    EXPECT_DOUBLE_EQ(mp.g(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(mp.g(1, 1), 9.0);
    EXPECT_DOUBLE_EQ(mp.g(0, 1), 0.0);
}

TEST(Metric, InverseTimesMetricIsIdentity)
{
    for (const auto& name : ref::catalog_names()) {
        const auto spec = build_manifold(name);
        for (const auto& x : sample_points(spec.box, 20, 1)) {
            const auto mp = metric_at(spec, x);
            for (int a = 0; a < spec.m; ++a) {
                for (int b = 0; b < spec.m; ++b) {
                    double s = 0.0;
                    for (int c = 0; c < spec.m; ++c) s += mp.g_inv(a, c) * mp.g(c, b);
                    EXPECT_NEAR(s, a == b ? 1.0 : 0.0, 1e-12) << name;
                    EXPECT_EQ(mp.g(a, b), mp.g(b, a));
                }
            }
        }
    }
}

TEST(Metric, IndefiniteMetricIsRejected)
{
    auto spec = build_manifold("warped_t2");
    spec.metric[3] = expr::parse("cos(x1)");
    EXPECT_NO_THROW(metric_at(spec, Vec{0.1, 0.0}));
    try {
        metric_at(spec, Vec{3.0, 0.0});
        FAIL();
    } catch (const GeometryError& e) {
        EXPECT_NE(std::string(e.what()).find("eigenvalue"), std::string::npos);
    }
}

TEST(Christoffel, WarpedHandValues)
{
    // f = 2 + cos x, at x = pi/2: f = 2, f' = -1.
    const auto spec = build_manifold("warped_t2");
    const auto cp = christoffel_at(metric_at(spec, Vec{M_PI / 2, 0.0}));
    EXPECT_NEAR(cp.gamma(0, 1, 1), 2.0, 1e-14);   // -f f'
    EXPECT_NEAR(cp.gamma(1, 0, 1), -0.5, 1e-14);  // f'/f
    EXPECT_NEAR(cp.gamma(1, 1, 0), -0.5, 1e-14);
    EXPECT_NEAR(cp.gamma(0, 0, 0), 0.0, 1e-14);
}

TEST(Christoffel, MatchesFiniteDifferencesOnCatalog)
{
    for (const auto& name : ref::catalog_names()) {
        const auto spec = build_manifold(name);
        for (const auto& x : sample_points(spec.box, 10, 2)) {
            const auto cp = christoffel_at(metric_at(spec, x));
            const auto ref = ref::fd_christoffel(spec, x);
            for (int c = 0; c < spec.m; ++c) {
                for (int a = 0; a < spec.m; ++a) {
                    for (int b = 0; b < spec.m; ++b) EXPECT_NEAR(cp.gamma(c, a, b), ref(c, a, b), 1e-8) << name;
                }
            }
        }
    }
}

TEST(Riemann, MatchesFiniteDifferencesOnCatalog)
{
    for (const auto& name : ref::catalog_names()) {
        const auto spec = build_manifold(name);
        for (const auto& x : sample_points(spec.box, 5, 3)) {
            const auto mp = metric_at(spec, x);
            const auto r = riemann_at(mp, christoffel_at(mp));
            const auto ref = ref::fd_riemann(spec, x);
            for (std::size_t k = 0; k < r.R.data().size(); ++k) EXPECT_NEAR(r.R.data()[k], ref.data()[k], 1e-6) << name;
        }
    }
}

TEST(Riemann, SpherePatchHasUnitCurvature)
{
    const auto spec = sphere_patch();
    for (double x1 : {0.4, 1.0, 1.9, 2.7}) {
        const auto mp = metric_at(spec, Vec{x1, 0.5});
        const auto r = riemann_at(mp, christoffel_at(mp));
        const double sectional = r.R(1, 0, 0, 1) / (mp.g(0, 0) * mp.g(1, 1));
        EXPECT_NEAR(sectional, 1.0, 1e-12);
    }
}

TEST(Riemann, SanityOnCatalog)
{
    for (const auto& name : ref::catalog_names()) {
        const auto spec = build_manifold(name);
        const auto s = curvature_sanity(spec, sample_points(spec.box, 50, 4));
        EXPECT_LE(s.metric_compatibility, 1e-10) << name;
        EXPECT_LE(s.torsion, 1e-10) << name;
        EXPECT_LE(s.riemann_symmetry, 1e-10) << name;
        EXPECT_EQ(s.samples, 50u);
    }
}

TEST(Connection, LeibnizAndTorsionOnRandomFields)
{
    const auto spec = build_manifold("twisted_t3");
    const VectorFieldExpr x{expr::parse("sin(x2)"), expr::parse("1 + cos(x1)*0.3"), expr::parse("x3*0.1")};
    const VectorFieldExpr y{expr::parse("cos(x1+x3)"), expr::parse("exp(sin(x2))"), expr::parse("0.5")};
    const expr::Expr phi = expr::parse("2 + sin(x1*x2)");
    VectorFieldExpr phi_y;
    for (const auto& c : y) phi_y.push_back(expr::mul(phi, c));
    for (const auto& p : sample_points(spec.box, 20, 5)) {
        // ∇_X(φY) = X(φ) Y + φ ∇_X Y
        const Vec lhs = covariant_derivative_at(spec, x, phi_y, p);
        const Vec nxy = covariant_derivative_at(spec, x, y, p);
        const Jet2 phij = expr::eval_jet2(phi, p);
        double xphi = 0.0;
        for (int d = 0; d < 3; ++d) xphi += expr::eval(x[static_cast<std::size_t>(d)], p) * phij.grad(d);
        for (int c = 0; c < 3; ++c) {
            const double yc = expr::eval(y[static_cast<std::size_t>(c)], p);
            EXPECT_NEAR(lhs[static_cast<std::size_t>(c)], xphi * yc + phij.value() * nxy[static_cast<std::size_t>(c)], 1e-12);
        }
        // ∇_X Y - ∇_Y X - [X,Y] = 0
        const Vec nyx = covariant_derivative_at(spec, y, x, p);
        const Vec br = lie_bracket_at(spec, x, y, p);
        for (int c = 0; c < 3; ++c) {
            const auto k = static_cast<std::size_t>(c);
            EXPECT_NEAR(nxy[k] - nyx[k] - br[k], 0.0, 1e-12);
        }
    }
}

TEST(Connection, BracketOfCoordinateFieldsVanishes)
{
    const auto spec = build_manifold("warped_t2");
    const VectorFieldExpr d1{expr::parse("1"), expr::parse("0")};
    const VectorFieldExpr d2{expr::parse("0"), expr::parse("1")};
    const Vec br = lie_bracket_at(spec, d1, d2, Vec{0.3, 0.4});
    EXPECT_EQ(br[0], 0.0);
    EXPECT_EQ(br[1], 0.0);
}
