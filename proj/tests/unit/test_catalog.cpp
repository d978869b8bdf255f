#include "foliage/catalog.hpp"

#include "foliage/identities.hpp"
#include "foliage/integration.hpp"
#include "foliage/manifest.hpp"
#include "foliage/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

using namespace foliage;

namespace {

const std::filesystem::path kManifests = FOLIAGE_MANIFEST_DIR;

void expect_input_error(const std::string& text, const std::string& fragment)
{
    try {
        parse_manifest(text, "t.manifest");
        FAIL() << "expected InputError containing " << fragment;
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
}

} // namespace

TEST(Catalog, BuildsEveryEntry)
{
    for (const auto& e : catalog()) {
        const auto spec = build_manifold(e.name);
        EXPECT_EQ(spec.m, e.m);
        EXPECT_EQ(spec.n, e.n);
        EXPECT_EQ(spec.p, e.p);
        EXPECT_EQ(spec.oracle.has_value(), e.has_oracle);
        for (double l : spec.box) EXPECT_EQ(l, 2 * M_PI);
    }
}

TEST(Catalog, ParameterValidation)
{
    EXPECT_THROW(build_manifold("warped_t2", {{"a", 0.5}}), InputError);
    EXPECT_THROW(build_manifold("warped_t2", {{"a", 1.0}}), InputError);
    EXPECT_THROW(build_manifold("diagonal_t3", {{"b", 0.9}}), InputError);
    EXPECT_THROW(build_manifold("warped_t2", {{"b", 3.0}}), InputError);
    EXPECT_THROW(build_manifold("flat_torus", {{"n", 2}}), InputError);
    EXPECT_THROW(build_manifold("flat_torus", {{"m", 2.5}}), InputError);
    EXPECT_THROW(build_manifold("flat_torus", {{"m", 7}}), InputError);
    EXPECT_THROW(build_manifold("klein_bottle"), InputError);
    EXPECT_NO_THROW(build_manifold("warped_t2", {{"a", 1.5}}));
    const auto f = build_manifold("flat_torus", {{"m", 5}, {"n", 3}});
    EXPECT_EQ(f.m, 5);
    EXPECT_EQ(f.p, 2);
}

TEST(Oracle, QuarterTurnValues)
{
    const auto o = closed_form_oracle("warped_t2", Vec{M_PI / 2, 0.0});
    EXPECT_NEAR(o.at("h_perp.1"), 0.5, 1e-15);
    EXPECT_NEAR(o.at("h_perp.2"), 0.0, 1e-15);
    // f'' = -cos(pi/2) = 0
    EXPECT_NEAR(o.at("traceK.2"), 0.0, 1e-15);
    EXPECT_NEAR(closed_form_oracle("umbilical_t3", Vec{0.0, 0.0, 0.0}).at("lambda.1"), 0.0, 1e-15);
    for (const auto& [k, v] : closed_form_oracle("flat_torus", Vec{1.0, 2.0})) {
        EXPECT_EQ(v, k == "volume_form" ? 1.0 : 0.0) << k;
    }
    EXPECT_THROW(closed_form_oracle("diagonal_t3", Vec{0.0, 0.0, 0.0}), InputError);
}

TEST(Oracle, SpotValues)
{
    const auto w0 = closed_form_oracle("warped_t2", Vec{0.0, 1.0});
    EXPECT_NEAR(w0.at("theorem6_integrand"), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(w0.at("traceK.2"), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(w0.at("volume_form"), 3.0, 1e-15);
    const auto wpi = closed_form_oracle("warped_t2", Vec{M_PI, 0.0});
    EXPECT_NEAR(wpi.at("theorem6_integrand"), -1.0, 1e-15);
    const auto u0 = closed_form_oracle("umbilical_t3", Vec{0.0, 0.0, 0.0});
    EXPECT_NEAR(u0.at("theorem6_integrand"), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(u0.at("K_mixed"), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(u0.at("volume_form"), 9.0, 1e-14);
    const auto uq = closed_form_oracle("umbilical_t3", Vec{M_PI / 2, 0.0, 0.0});
    EXPECT_NEAR(uq.at("theorem6_integrand"), -0.5, 1e-15);
    EXPECT_NEAR(uq.at("B_Fperp_norm2"), 0.5, 1e-15);
    EXPECT_NEAR(uq.at("h_perp.1"), 1.0, 1e-15);
}

TEST(Oracle, EngineMatchesOracleAtRandomPoints)
{
    for (const std::string name : {"flat_torus", "warped_t2", "umbilical_t3"}) {
        const auto spec = build_manifold(name);
        for (const auto& x : sample_points(spec.box, 50, 25)) {
            const FrameGeometry geo(spec, x);
            const PointEvaluator ev(geo);
            const auto& fg = ev.foliation();
            const auto o = closed_form_oracle(spec, x);
            for (int k = 0; k < spec.m; ++k) {
                const auto key = std::to_string(k + 1);
                EXPECT_NEAR(fg.mean.h[static_cast<std::size_t>(k)], o.at("h." + key), 1e-10);
                EXPECT_NEAR(fg.mean.h_perp[static_cast<std::size_t>(k)], o.at("h_perp." + key), 1e-10);
                EXPECT_NEAR(fg.mean.h_perp_normalized[static_cast<std::size_t>(k)], o.at("h_perp_normalized." + key), 1e-10);
            }
            EXPECT_NEAR(ev.umbilicity().lambda[0], o.at("lambda.1"), 1e-10);
            for (int al = spec.n; al < spec.m; ++al) {
                EXPECT_NEAR(fg.traceK[static_cast<std::size_t>(al - spec.n)], o.at("traceK." + std::to_string(al + 1)), 1e-10);
            }
            EXPECT_NEAR(fg.b.B_F_norm2, o.at("B_F_norm2"), 1e-10);
            EXPECT_NEAR(fg.b.B_Fperp_norm2, o.at("B_Fperp_norm2"), 1e-10);
            EXPECT_NEAR(fg.b.K_mixed, o.at("K_mixed"), 1e-10);
            EXPECT_NEAR(ev.theorem6_integrand(), o.at("theorem6_integrand"), 1e-10);
            EXPECT_NEAR(volume_form_at(geo.metric()), o.at("volume_form"), 1e-10);
        }
    }
}

TEST(Manifest, ShippedFilesMirrorBuiltins)
{
    for (const auto& e : catalog()) {
        const auto path = kManifests / (e.name + ".manifest");
        ASSERT_TRUE(std::filesystem::exists(path)) << path;
        const auto loaded = load_manifest(path);
        EXPECT_TRUE(same_spec(loaded, build_manifold(e.name))) << e.name;
    }
}

TEST(Manifest, ParsesSpanningFields)
{
    const auto spec = parse_manifest(R"(
name = tilted
dims = 3
box = 2*pi, 2*pi, 2*pi   # trailing comment
[params]
a = 0.5
[metric]
g 1 1 = 1
g 2 2 = exp(2*a*sin(x1)*sin(x2))
g 3 3 = exp(2*a*cos(x1))
[foliation]
span = 1, 1, 0
span = 1, -1, 0
)");
    EXPECT_EQ(spec.n, 2);
    EXPECT_EQ(spec.p, 1);
    ASSERT_TRUE(std::holds_alternative<SpanningFields>(spec.foliation));
    EXPECT_EQ(spec.metric_entry(0, 1), expr::parse("0"));
    const Vec x{0.3, 0.6, 0.9};
    const FrameGeometry geo(spec, x);
    EXPECT_LE(std::fabs(PointEvaluator(geo).theorem1(2).residual), 1e-10);
}

TEST(Manifest, OffDiagonalEntriesAreSymmetric)
{
    const auto spec = parse_manifest("name = s\ndims = 2\nbox = 1, 1\n[metric]\ng 1 1 = 2\ng 2 1 = 0.5\ng 2 2 = 2\n[foliation]\nsplit = 1 | 2\n");
    EXPECT_EQ(spec.metric_entry(0, 1), spec.metric_entry(1, 0));
    EXPECT_EQ(spec.metric_entry(0, 1), expr::parse("0.5"));
}

TEST(Manifest, ErrorsCarryLineNumbers)
{
    const std::string head = "name = s\ndims = 2\nbox = 1, 1\n";
    expect_input_error(head + "[metric]\ng 1 1 = 1\n[foliation]\nsplit = 1 | 2\n", "missing diagonal metric entry g 2 2");
    expect_input_error(head + "[metric]\ng 1 1 = 1 +\n", "t.manifest:5:");
    expect_input_error(head + "[metric]\ng 1 1 = x3\n", "t.manifest:5:");
    expect_input_error(head + "[metric]\ng 1 3 = 1\n", "t.manifest:5: index 3 out of range");
    expect_input_error(head + "[bogus]\n", "t.manifest:4: unknown section");
    expect_input_error(head + "colour = red\n", "t.manifest:4: unknown key");
    expect_input_error(head + "[metric]\ng 1 1 = 1\ng 1 1 = 2\n", "t.manifest:6: duplicate metric entry");
    expect_input_error(head + "[metric]\ng 1 1 = 1\ng 2 2 = a\n[foliation]\nsplit = 1 | 2\n", "unbound parameter 'a'");
    expect_input_error(head + "[metric]\ng 1 1 = 1\ng 2 2 = 1\n[foliation]\nsplit = 1 | 1\n", "disjoint");
    expect_input_error(head + "[metric]\ng 1 1 = 1\ng 2 2 = 1\n[foliation]\nspan = 1\n", "t.manifest:8: span needs 2 components");
    expect_input_error("name = s\ndims = 2\nbox = 1\n[metric]\ng 1 1 = 1\ng 2 2 = 1\n[foliation]\nsplit = 1 | 2\n", "t.manifest:3: box lists 1");
    expect_input_error("name = s\n[metric]\n", "t.manifest:2: dims must be declared");
    expect_input_error(head + "[params]\na = x1\n", "t.manifest:5:");
    EXPECT_THROW(load_manifest("/nonexistent/file.manifest"), InputError);
}

TEST(Manifest, SameSpecDetectsDifferences)
{
    const auto a = build_manifold("warped_t2");
    auto b = a;
    EXPECT_TRUE(same_spec(a, b));
    b.params["a"] = 3.0;
    EXPECT_FALSE(same_spec(a, b));
    b = a;
    b.metric[3] = expr::parse("(a + cos(x1))^3");
    EXPECT_FALSE(same_spec(a, b));
}
