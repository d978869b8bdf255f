#include "foliage/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace foliage {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Draft {
    std::string name;
    int m = 0;
    std::vector<std::vector<std::string>> metric;  // upper triangle used, "" means 0
    std::vector<int> f_coords;                     // 0-based
    expr::ParamMap params;
    bool oracle = false;
};

ManifoldSpec finish(const Draft& d)
{
    ManifoldSpec s;
    s.name = d.name;
    s.m = d.m;
    s.box.assign(static_cast<std::size_t>(d.m), kTwoPi);
    s.metric.assign(static_cast<std::size_t>(d.m * d.m), expr::parse("0"));
    for (int a = 0; a < d.m; ++a) {
        for (int b = a; b < d.m; ++b) {
            const std::string& src = d.metric[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            const expr::Expr e = expr::parse(src.empty() ? "0" : src, d.m);
            s.metric[static_cast<std::size_t>(a * d.m + b)] = e;
            s.metric[static_cast<std::size_t>(b * d.m + a)] = e;
        }
    }
    CoordinateSplit split;
    split.f_coords = d.f_coords;
    for (int k = 0; k < d.m; ++k) {
        if (std::find(d.f_coords.begin(), d.f_coords.end(), k) == d.f_coords.end()) split.perp_coords.push_back(k);
    }
    s.n = static_cast<int>(split.f_coords.size());
    s.p = d.m - s.n;
    s.foliation = split;
    s.params = d.params;
    if (d.oracle) s.oracle = d.name;
    validate(s);
    return s;
}

std::vector<std::vector<std::string>> diagonal(const std::vector<std::string>& entries)
{
    const auto m = entries.size();
    std::vector<std::vector<std::string>> g(m, std::vector<std::string>(m));
    for (std::size_t k = 0; k < m; ++k) g[k][k] = entries[k];
    return g;
}

double param(const expr::ParamMap& p, const std::string& name)
{
    const auto it = p.find(name);
    return it->second;
}

void require(bool ok, const std::string& message)
{
    if (!ok) throw InputError(message);
}

int integer_param(const expr::ParamMap& p, const std::string& name)
{
    const double v = param(p, name);
    require(std::isfinite(v) && v == std::trunc(v), "parameter " + name + " must be an integer");
    return static_cast<int>(v);
}

} // namespace

const std::vector<CatalogEntry>& catalog()
{
    static const std::vector<CatalogEntry> entries = {
        {"flat_torus", 2, 1, 1, {{"m", 2.0}, {"n", 1.0}}, true, "identity metric, coordinate split (totally geodesic)"},
        {"warped_t2", 2, 1, 1, {{"a", 2.0}}, true, "dx1^2 + (a+cos x1)^2 dx2^2, F = {x1}"},
        {"umbilical_t3", 3, 1, 2, {{"a", 2.0}}, true, "dx1^2 + (a+cos x1)^2 (dx2^2+dx3^2), F-perp totally umbilical"},
        {"diagonal_t3", 3, 1, 2, {{"a", 2.0}, {"b", 2.0}}, false,
         "dx1^2 + (a+cos x1)^2 dx2^2 + (b+sin x1)^2 dx3^2, F-perp not umbilical"},
        {"twisted_t3", 3, 2, 1, {{"a", 0.5}}, false,
         "dx1^2 + exp(2a sin x1 sin x2) dx2^2 + exp(2a cos x1) dx3^2, F = {x1, x2}"},
    };
    return entries;
}

ManifoldSpec build_manifold(const std::string& name, const expr::ParamMap& params)
{
    const CatalogEntry* entry = nullptr;
    for (const auto& e : catalog()) {
        if (e.name == name) entry = &e;
    }
    if (!entry) throw InputError("unknown manifold '" + name + "'");

    expr::ParamMap p = entry->defaults;
    for (const auto& [k, v] : params) {
        if (!p.contains(k)) throw InputError("manifold '" + name + "' has no parameter '" + k + "'");
        if (!std::isfinite(v)) throw InputError("parameter " + k + " must be finite");
        p[k] = v;
    }

    Draft d;
    d.name = name;
    d.params = p;
    d.oracle = entry->has_oracle;
    if (name == "flat_torus") {
        const int m = integer_param(p, "m");
        const int n = integer_param(p, "n");
        require(m >= 2 && m <= 6, "flat_torus needs 2 <= m <= 6");
        require(n >= 1 && n < m, "flat_torus needs 1 <= n < m");
        d.m = m;
        d.metric = diagonal(std::vector<std::string>(static_cast<std::size_t>(m), "1"));
        for (int k = 0; k < n; ++k) d.f_coords.push_back(k);
    } else if (name == "warped_t2") {
        require(param(p, "a") > 1.0, "warped_t2 needs a > 1 so that a + cos(x1) > 0");
        d.m = 2;
        d.metric = diagonal({"1", "(a+cos(x1))^2"});
        d.f_coords = {0};
    } else if (name == "umbilical_t3") {
        require(param(p, "a") > 1.0, "umbilical_t3 needs a > 1 so that a + cos(x1) > 0");
        d.m = 3;
        d.metric = diagonal({"1", "(a+cos(x1))^2", "(a+cos(x1))^2"});
        d.f_coords = {0};
    } else if (name == "diagonal_t3") {
        require(param(p, "a") > 1.0, "diagonal_t3 needs a > 1 so that a + cos(x1) > 0");
        require(param(p, "b") > 1.0, "diagonal_t3 needs b > 1 so that b + sin(x1) > 0");
        d.m = 3;
        d.metric = diagonal({"1", "(a+cos(x1))^2", "(b+sin(x1))^2"});
        d.f_coords = {0};
    } else {
        d.m = 3;
        d.metric = diagonal({"1", "exp(2*a*sin(x1)*sin(x2))", "exp(2*a*cos(x1))"});
        d.f_coords = {0, 1};
    }
    return finish(d);
}

OracleValues closed_form_oracle(const ManifoldSpec& spec, std::span<const double> point)
{
    if (!spec.oracle) throw InputError("no closed-form oracle for '" + spec.name + "'");
    const std::string& name = *spec.oracle;
    const int m = spec.m;
    OracleValues o;
    auto vector_key = [&](const std::string& key, const Vec& v) {
        for (int k = 0; k < m; ++k) o[key + "." + std::to_string(k + 1)] = v[static_cast<std::size_t>(k)];
    };
    const Vec zero(static_cast<std::size_t>(m), 0.0);

    if (name == "flat_torus") {
        vector_key("h", zero);
        vector_key("h_perp", zero);
        vector_key("h_perp_normalized", zero);
        for (int i = 1; i <= spec.n; ++i) o["lambda." + std::to_string(i)] = 0.0;
        for (int al = spec.n + 1; al <= m; ++al) o["traceK." + std::to_string(al)] = 0.0;
        o["B_F_norm2"] = 0.0;
        o["B_Fperp_norm2"] = 0.0;
        o["K_mixed"] = 0.0;
        o["theorem6_integrand"] = 0.0;
        o["volume_form"] = 1.0;
        return o;
    }
    if (name != "warped_t2" && name != "umbilical_t3") throw InputError("no closed-form oracle for '" + name + "'");

    // f = a + cos x1, F-perp leaves are scaled flat tori of dimension p.
    const double a = spec.params.at("a");
    const double x = point[0];
    const double f = a + std::cos(x);
    const double f1 = -std::sin(x);
    const double f2 = -std::cos(x);
    const double p = spec.p;
    const double q = f1 / f;

    Vec h_perp = zero;
    h_perp[0] = -p * q;
    Vec h_perp_norm = zero;
    h_perp_norm[0] = -q;
    vector_key("h", zero);
    vector_key("h_perp", h_perp);
    vector_key("h_perp_normalized", h_perp_norm);
    o["lambda.1"] = -q;
    for (int al = 2; al <= m; ++al) o["traceK." + std::to_string(al)] = -f2 / f;
    o["B_F_norm2"] = 0.0;
    o["B_Fperp_norm2"] = p * q * q;
    o["K_mixed"] = -p * f2 / f;
    o["theorem6_integrand"] = -p * f2 / f + p * q * q - p * p * q * q;
    o["volume_form"] = std::pow(f, p);
    return o;
}

OracleValues closed_form_oracle(const std::string& name, std::span<const double> point, const expr::ParamMap& params)
{
    return closed_form_oracle(build_manifold(name, params), point);
}

} // namespace foliage
