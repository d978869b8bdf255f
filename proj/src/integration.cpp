#include "foliage/integration.hpp"

#include "foliage/parallel.hpp"

#include <cmath>
#include <set>

namespace foliage {

namespace {

std::size_t ipow_size(std::size_t base, int exp)
{
    std::size_t r = 1;
    for (int k = 0; k < exp; ++k) r *= base;
    return r;
}

// Node coordinates over the active axes; inactive axes sit at 0.
struct ReducedGrid {
    QuadratureGrid grid;
    std::vector<int> axes;

    std::size_t node_count() const { return ipow_size(static_cast<std::size_t>(grid.points_per_axis), static_cast<int>(axes.size())); }

    Vec node(std::size_t index) const
    {
        const auto n = static_cast<std::size_t>(grid.points_per_axis);
        Vec x(grid.box.size(), 0.0);
        for (int a : axes) {
            const auto k = static_cast<std::size_t>(a);
            x[k] = grid.box[k] * static_cast<double>(index % n) / static_cast<double>(n);
            index /= n;
        }
        return x;
    }

    double weight() const
    {
        double w = 1.0;
        for (double l : grid.box) w *= l;
        return w / static_cast<double>(node_count());
    }
};

ReducedGrid reduce(const ManifoldSpec& spec, const QuadratureGrid& grid, bool reduce_axes)
{
    ReducedGrid r{grid, {}};
    if (reduce_axes) {
        r.axes = active_axes(spec);
    } else {
        for (int a = 0; a < spec.m; ++a) r.axes.push_back(a);
    }
    return r;
}

} // namespace

std::size_t QuadratureGrid::node_count() const
{
    return ipow_size(static_cast<std::size_t>(points_per_axis), static_cast<int>(box.size()));
}

double QuadratureGrid::weight() const
{
    double w = 1.0;
    for (double l : box) w *= l;
    return w / static_cast<double>(node_count());
}

Vec QuadratureGrid::node(std::size_t index) const
{
    const auto n = static_cast<std::size_t>(points_per_axis);
    Vec x(box.size());
    for (std::size_t k = 0; k < box.size(); ++k) {
        x[k] = box[k] * static_cast<double>(index % n) / static_cast<double>(n);
        index /= n;
    }
    return x;
}

QuadratureGrid make_grid(const ManifoldSpec& spec, int points_per_axis)
{
    if (points_per_axis < 8) throw InputError("grid needs at least 8 points per axis");
    return {points_per_axis, spec.box};
}

double volume_form_at(const MetricAtPoint& mp)
{
    const int m = mp.dim;
    linalg::Matrix g(m, m);
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) g(a, b) = mp.g(a, b);
    }
    const auto l = linalg::cholesky(g);
    if (!l) throw GeometryError("metric determinant is not positive");
    double v = 1.0;
    for (int a = 0; a < m; ++a) v *= (*l)(a, a);
    return v;
}

double integrate_over_torus(const ManifoldSpec& spec, const ScalarField& field, const QuadratureGrid& grid)
{
    std::vector<double> terms(grid.node_count());
    parallel_for(terms.size(), [&](std::size_t k) {
        const Vec x = grid.node(k);
        terms[k] = field(x) * volume_form_at(metric_at(spec, x));
    });
    return compensated_sum(terms) * grid.weight();
}

std::vector<int> active_axes(const ManifoldSpec& spec)
{
    std::set<int> vars;
    for (const auto& e : spec.metric) vars.merge(expr::variables(e));
    if (const auto* span = std::get_if<SpanningFields>(&spec.foliation)) {
        for (const auto& f : span->fields) {
            for (const auto& e : f) vars.merge(expr::variables(e));
        }
    }
    std::vector<int> out;
    for (int v : vars) out.push_back(v - 1);
    return out;
}

std::array<IntegralCheck, 2> run_integral_checks(const ManifoldSpec& spec, const QuadratureGrid& grid, bool reduce_axes)
{
    const ReducedGrid rg = reduce(spec, grid, reduce_axes);
    const std::size_t count = rg.node_count();
    std::vector<double> t5(count);
    std::vector<double> t6(count);
    parallel_for(count, [&](std::size_t k) {
        const Vec x = rg.node(k);
        const FrameGeometry geo(spec, x);
        const PointEvaluator ev(geo);
        const double vol = volume_form_at(geo.metric());
        t5[k] = ev.theorem5_integrand_sum() * vol;
        t6[k] = ev.theorem6_integrand() * vol;
    });
    const double w = rg.weight();
    return {IntegralCheck{IdentityId::THEOREM5_INTEGRAND, grid.points_per_axis, count, compensated_sum(t5) * w},
            IntegralCheck{IdentityId::THEOREM6_INTEGRAND, grid.points_per_axis, count, compensated_sum(t6) * w}};
}

IntegralCheck run_integral_check(const ManifoldSpec& spec, IdentityId which, const QuadratureGrid& grid, bool reduce_axes)
{
    if (!is_integral_identity(which)) throw std::invalid_argument("not an integral identity");
    const auto both = run_integral_checks(spec, grid, reduce_axes);
    return which == IdentityId::THEOREM5_INTEGRAND ? both[0] : both[1];
}

} // namespace foliage
