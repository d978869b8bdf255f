// Acceptance criteria AC1..AC8. One PASS/FAIL line each; exit status 1 if any fails.

#include "foliage/catalog.hpp"
#include "foliage/integration.hpp"
#include "foliage/parallel.hpp"
#include "foliage/report.hpp"
#include "foliage/sampling.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

using namespace foliage;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

constexpr double kIdentityTol = 1e-8;

Outcome ac1_theorem1()
{
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (const auto& name : ref::catalog_names()) {
        const auto spec = build_manifold(name);
        const auto pts = sample_points(spec.box, 200, 42);
        std::vector<double> r(pts.size());
        parallel_for(pts.size(), [&](std::size_t k) {
            const FrameGeometry geo(spec, pts[k]);
            const PointEvaluator ev(geo);
            for (int al = spec.n; al < spec.m; ++al) r[k] = std::max(r[k], std::fabs(ev.theorem1(al).residual));
        });
        for (double v : r) worst = std::max(worst, v);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {worst <= kIdentityTol && secs <= 10.0, "max residual " + sci(worst) + " in " + sci(secs) + " s"};
}

Outcome ac2_oracles()
{
    double worst = 0.0;
    for (const std::string name : {"flat_torus", "warped_t2", "umbilical_t3"}) {
        const auto spec = build_manifold(name);
        auto pts = sample_points(spec.box, 50, 9);
        pts.push_back(Vec(static_cast<std::size_t>(spec.m), std::numbers::pi / 2));
        for (const auto& x : pts) {
            const FrameGeometry geo(spec, x);
            const PointEvaluator ev(geo);
            const auto& fg = ev.foliation();
            const auto o = closed_form_oracle(spec, x);
            auto diff = [&](double got, const std::string& key) { worst = std::max(worst, std::fabs(got - o.at(key))); };
            for (int k = 0; k < spec.m; ++k) {
                const auto s = static_cast<std::size_t>(k);
                const auto key = std::to_string(k + 1);
                diff(fg.mean.h[s], "h." + key);
                diff(fg.mean.h_perp[s], "h_perp." + key);
                diff(fg.mean.h_perp_normalized[s], "h_perp_normalized." + key);
            }
            for (int i = 0; i < spec.n; ++i) diff(ev.umbilicity().lambda[static_cast<std::size_t>(i)], "lambda." + std::to_string(i + 1));
            for (int al = spec.n; al < spec.m; ++al) {
                diff(fg.traceK[static_cast<std::size_t>(al - spec.n)], "traceK." + std::to_string(al + 1));
            }
            diff(fg.b.B_F_norm2, "B_F_norm2");
            diff(fg.b.B_Fperp_norm2, "B_Fperp_norm2");
            diff(fg.b.K_mixed, "K_mixed");
            diff(ev.theorem6_integrand(), "theorem6_integrand");
            diff(volume_form_at(geo.metric()), "volume_form");
        }
    }
    return {worst <= 1e-10, "max oracle deviation " + sci(worst)};
}

Outcome ac3_umbilical()
{
    double worst = 0.0;
    bool all_umbilical = true;
    for (const std::string name : {"umbilical_t3", "flat_torus"}) {
        const auto umb = build_manifold(name);
        for (const auto& x : sample_points(umb.box, 200, 42)) {
            const auto r = umbilical_residuals(umb, x);
            all_umbilical = all_umbilical && r.umbilical && r.residuals.size() == 5;
            for (const auto& [id, v] : r.residuals) worst = std::max(worst, v);
        }
    }
    const auto diag = build_manifold("diagonal_t3");
    double deviation = 0.0;
    bool any_umbilical = false;
    for (const auto& x : sample_points(diag.box, 200, 42)) {
        const auto r = umbilical_residuals(diag, x);
        deviation = std::max(deviation, r.deviation);
        any_umbilical = any_umbilical || r.umbilical;
    }
    const auto report = run_check(diag, CheckOptions{}, "catalog");
    bool skipped = !report.umbilical;
    for (const auto& res : report.results) {
        if (is_umbilical_identity(res.id)) skipped = skipped && res.status == Status::Skipped;
    }
    return {all_umbilical && worst <= kIdentityTol && deviation >= 1e-2 && skipped,
            "umbilical_t3/flat_torus max residual " + sci(worst) + ", diagonal_t3 deviation " + sci(deviation)
                + (skipped ? ", skipped" : ", NOT skipped")};
}

Outcome ac4_integrals()
{
    bool ok = true;
    std::ostringstream os;
    double worst64 = 0.0;
    for (const auto& name : ref::catalog_names()) {
        const auto spec = build_manifold(name);
        std::vector<std::array<double, 2>> r;
        for (int n : {8, 16, 32, 64}) {
            const auto c = run_integral_checks(spec, make_grid(spec, n));
            r.push_back({std::fabs(c[0].integral), std::fabs(c[1].integral)});
        }
        for (int k = 0; k < 2; ++k) {
            worst64 = std::max(worst64, r[3][static_cast<std::size_t>(k)]);
            ok = ok && r[3][static_cast<std::size_t>(k)] <= kIdentityTol;
            for (std::size_t s = 1; s < 3; ++s) {
                const double prev = r[s - 1][static_cast<std::size_t>(k)];
                const double cur = r[s][static_cast<std::size_t>(k)];
                if (!(cur <= prev / 2 || cur <= 1e-12)) {
                    ok = false;
                    os << " " << name << " stalls at N=" << (8 << s);
                }
            }
        }
        if (name == "warped_t2" && r[3][1] > 1e-10) {
            ok = false;
            os << " warped_t2 T6 " << sci(r[3][1]);
        }
    }
    return {ok, "max |integral| at N=64 " + sci(worst64) + os.str()};
}

Outcome ac5_proof_steps()
{
    double worst = 0.0;
    for (const auto& name : ref::catalog_names()) {
        const auto spec = build_manifold(name);
        const auto pts = sample_points(spec.box, 200, 42);
        std::vector<double> r(pts.size());
        parallel_for(pts.size(), [&](std::size_t k) {
            const FrameGeometry geo(spec, pts[k]);
            const PointEvaluator ev(geo);
            double w = std::max({std::fabs(ev.eq12()), std::fabs(ev.eq13()), std::fabs(ev.lemma2())});
            for (int al = spec.n; al < spec.m; ++al) w = std::max({w, ev.eq5(al), ev.eq7(al)});
            r[k] = w;
        });
        for (double v : r) worst = std::max(worst, v);
    }
    return {worst <= kIdentityTol, "max EQ5/EQ7/EQ12/EQ13/LEMMA2 residual " + sci(worst)};
}

Outcome ac6_sanity_and_jets()
{
    double sanity = 0.0;
    double fd = 0.0;
    for (const auto& name : ref::catalog_names()) {
        const auto spec = build_manifold(name);
        const auto pts = sample_points(spec.box, 200, 42);
        const auto s = curvature_sanity(spec, pts);
        sanity = std::max({sanity, s.metric_compatibility, s.torsion, s.riemann_symmetry});
        for (std::size_t k = 0; k < 5; ++k) {
            const auto& x = pts[k];
            const auto mp = metric_at(spec, x);
            const auto cp = christoffel_at(mp);
            const auto rp = riemann_at(mp, cp);
            const auto g_ref = ref::fd_christoffel(spec, x);
            const auto r_ref = ref::fd_riemann(spec, x);
            for (int a = 0; a < spec.m; ++a)
                for (int b = 0; b < spec.m; ++b)
                    for (int c = 0; c < spec.m; ++c) {
                        fd = std::max(fd, std::fabs(cp.gamma(a, b, c) - g_ref(a, b, c)));
                        for (int d = 0; d < spec.m; ++d) fd = std::max(fd, std::fabs(rp.R(a, b, c, d) - r_ref(a, b, c, d)));
                    }
        }
    }
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> coord(0.0, 2.0 * std::numbers::pi);
    const expr::ParamMap params{{"c", 0.8}, {"k", 1.3}};
    double jets = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto e = expr::parse(ref::random_expression(rng, 3), 3);
        const Vec x{coord(rng), coord(rng), coord(rng)};
        const Jet2 j = expr::eval_jet2(e, x, params);
        const ref::ValueFn f = [&](const Vec& p) { return expr::eval(e, p, params); };
        const Vec g = ref::fd_gradient(f, x);
        const auto h = ref::fd_hessian(f, x);
        for (int a = 0; a < 3; ++a) {
            const auto sa = static_cast<std::size_t>(a);
            jets = std::max(jets, std::fabs(j.grad(a) - g[sa]) / std::max(1.0, std::fabs(g[sa])));
            for (int b = 0; b < 3; ++b) jets = std::max(jets, std::fabs(j.hess(a, b) - h(a, b)) / std::max(1.0, std::fabs(h(a, b))));
        }
    }
    return {sanity <= kSanityTolerance && fd <= 1e-6 && jets <= 1e-6,
            "sanity " + sci(sanity) + ", Gamma/R vs FD " + sci(fd) + ", jets vs FD " + sci(jets)};
}

Outcome ac7_flat()
{
    double worst = 0.0;
    for (int m = 2; m <= 4; ++m) {
        for (int n = 1; n < m; ++n) {
            const auto spec = build_manifold("flat_torus", {{"m", m}, {"n", n}});
            CheckOptions o;
            o.grid = 16;
            const auto r = run_check(spec, o, "catalog");
            for (const auto& res : r.results) worst = std::max(worst, res.max_abs);
            for (const auto& x : sample_points(spec.box, 20, 3)) {
                const FrameGeometry geo(spec, x);
                const PointEvaluator ev(geo);
                const auto& fg = ev.foliation();
                for (double v : fg.mean.h) worst = std::max(worst, std::fabs(v));
                for (double v : fg.mean.h_perp) worst = std::max(worst, std::fabs(v));
                for (double v : fg.traceK) worst = std::max(worst, std::fabs(v));
                worst = std::max({worst, fg.b.B_F_norm2, fg.b.B_Fperp_norm2, std::fabs(fg.b.K_mixed)});
            }
        }
    }
    return {worst <= 1e-12, "max flat-torus quantity " + sci(worst)};
}

Outcome ac8_determinism()
{
    CheckOptions o;
    o.grid = 32;
    std::string first;
    bool same = true;
    for (const auto& name : ref::catalog_names()) {
        const auto spec = build_manifold(name);
        std::vector<std::string> dumps;
        for (int workers : {1, 2, 4, 0}) {
            set_worker_count(workers);
            dumps.push_back(run_check(spec, o, "catalog").to_json().dump(2));
        }
        for (const auto& d : dumps) same = same && d == dumps.front();
    }
    set_worker_count(0);
    return {same, same ? "reports byte-identical for 1, 2, 4 and default workers" : "reports differ across worker counts"};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"AC1", ac1_theorem1}, {"AC2", ac2_oracles},         {"AC3", ac3_umbilical}, {"AC4", ac4_integrals},
        {"AC5", ac5_proof_steps}, {"AC6", ac6_sanity_and_jets}, {"AC7", ac7_flat},   {"AC8", ac8_determinism},
    };
    bool all = true;
    for (const auto& [id, fn] : criteria) {
        Outcome out;
        try {
            out = fn();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        all = all && out.pass;
        std::printf("%s %s  %s\n", id, out.pass ? "PASS" : "FAIL", out.detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
