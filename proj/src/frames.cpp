#include "foliage/frames.hpp"

#include <cmath>
#include <sstream>

namespace foliage {

namespace {

Jet2 inner2(const std::vector<std::vector<Jet2>>& g, const FieldJet2& u, const FieldJet2& v)
{
    const auto m = g.size();
    Jet2 s;
    for (std::size_t a = 0; a < m; ++a) {
        Jet2 row;
        for (std::size_t b = 0; b < m; ++b) row += g[a][b] * v[b];
        s += u[a] * row;
    }
    return s;
}

FieldJet2 coordinate_field(int k, int m)
{
    FieldJet2 f(static_cast<std::size_t>(m));
    for (auto& c : f) c.set_dim(m);
    f[static_cast<std::size_t>(k)] = Jet2(1.0);
    f[static_cast<std::size_t>(k)].set_dim(m);
    return f;
}

// Orthogonalizes v against `basis` (modified Gram-Schmidt). Returns the
// residual and its squared norm relative to |v|^2.
std::pair<FieldJet2, double> residual_against(const std::vector<std::vector<Jet2>>& g,
                                               const std::vector<FieldJet2>& basis, const FieldJet2& v)
{
    FieldJet2 w = v;
    for (const auto& u : basis) {
        const Jet2 c = inner2(g, w, u);
        for (std::size_t k = 0; k < w.size(); ++k) w[k] -= c * u[k];
    }
    const double ref = inner2(g, v, v).value();
    const double res = inner2(g, w, w).value();
    return {std::move(w), ref > 0.0 ? res / ref : 0.0};
}

FieldJet2 normalized(const std::vector<std::vector<Jet2>>& g, FieldJet2 w)
{
    const Jet2 inv_norm = sqrt(inner2(g, w, w)).reciprocal();
    for (auto& c : w) c = c * inv_norm;
    return w;
}

std::string describe(std::span<const double> point)
{
    std::ostringstream os;
    os.precision(6);
    os << '(';
    for (std::size_t i = 0; i < point.size(); ++i) os << (i ? ", " : "") << point[i];
    os << ')';
    return os.str();
}

} // namespace

FieldJet2 AdaptedFrame::field(int a) const
{
    FieldJet2 out(static_cast<std::size_t>(m));
    for (int c = 0; c < m; ++c) {
        Jet2 j(e(a, c));
        j.set_dim(m);
        for (int d = 0; d < m; ++d) j.set_grad(d, e_grad(a, c, d));
        for (int d = 0; d < m; ++d) {
            for (int k = d; k < m; ++k) j.set_hess(d, k, e_hess(a, c, d, k));
        }
        out[static_cast<std::size_t>(c)] = j;
    }
    return out;
}

Vec AdaptedFrame::vector(int a) const
{
    Vec v(static_cast<std::size_t>(m));
    for (int c = 0; c < m; ++c) v[static_cast<std::size_t>(c)] = e(a, c);
    return v;
}

AdaptedFrame adapted_frame_at(const ManifoldSpec& spec, const MetricAtPoint& mp, std::span<const double> point)
{
    const int m = spec.m;
    std::vector<std::vector<Jet2>> g(static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) g[static_cast<std::size_t>(a)].push_back(mp.jet(a, b));
    }

    std::vector<FieldJet2> leaf_candidates;
    std::vector<FieldJet2> perp_candidates;
    bool perp_all_required = true;
    if (const auto* split = std::get_if<CoordinateSplit>(&spec.foliation)) {
        for (int k : split->f_coords) leaf_candidates.push_back(coordinate_field(k, m));
        for (int k : split->perp_coords) perp_candidates.push_back(coordinate_field(k, m));
    } else {
        for (const auto& f : std::get<SpanningFields>(spec.foliation).fields) {
            leaf_candidates.push_back(eval_field(f, point, spec.params));
        }
        for (int k = 0; k < m; ++k) perp_candidates.push_back(coordinate_field(k, m));
        perp_all_required = false;
    }

    std::vector<FieldJet2> basis;
    for (std::size_t a = 0; a < leaf_candidates.size(); ++a) {
        auto [w, rel] = residual_against(g, basis, leaf_candidates[a]);
        if (!(std::sqrt(rel) > kPivotTolerance)) {
            throw GeometryError("F-spanning fields are rank deficient at " + describe(point) + " (field "
                                + std::to_string(a + 1) + ")");
        }
        basis.push_back(normalized(g, std::move(w)));
    }
    for (std::size_t k = 0; k < perp_candidates.size() && static_cast<int>(basis.size()) < m; ++k) {
        auto [w, rel] = residual_against(g, basis, perp_candidates[k]);
        if (!(std::sqrt(rel) > kPivotTolerance)) {
            if (perp_all_required) {
                throw GeometryError("complement coordinate field is rank deficient at " + describe(point));
            }
            continue;
        }
        basis.push_back(normalized(g, std::move(w)));
    }
    if (static_cast<int>(basis.size()) != m) {
        throw GeometryError("could not complete the adapted frame at " + describe(point));
    }

    AdaptedFrame frame;
    frame.m = m;
    frame.n = spec.n;
    frame.p = spec.p;
    frame.e = Tensor<2>(m);
    frame.e_grad = Tensor<3>(m);
    frame.e_hess = Tensor<4>(m);
    for (int a = 0; a < m; ++a) {
        for (int c = 0; c < m; ++c) {
            const Jet2& j = basis[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)];
            frame.e(a, c) = j.value();
            for (int d = 0; d < m; ++d) {
                frame.e_grad(a, c, d) = j.grad(d);
                for (int k = 0; k < m; ++k) frame.e_hess(a, c, d, k) = j.hess(d, k);
            }
        }
    }
    return frame;
}

AdaptedFrame adapted_frame_at(const ManifoldSpec& spec, std::span<const double> point)
{
    return adapted_frame_at(spec, metric_at(spec, point), point);
}

FrameConnection frame_connection(const MetricAtPoint& mp, const ChristoffelAtPoint& cp, const AdaptedFrame& frame)
{
    const int m = frame.m;
    FrameConnection conn;
    conn.m = m;
    conn.n = frame.n;
    conn.p = frame.p;
    conn.omega = Tensor<3>(m);

    std::vector<Vec> vecs;
    for (int a = 0; a < m; ++a) vecs.push_back(frame.vector(a));
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            const Vec d = covariant_derivative(cp, vecs[a], truncate(frame.field(b)));
            for (int c = 0; c < m; ++c) conn.omega(a, b, c) = mp.inner(d, vecs[c]);
        }
    }
    return conn;
}

IntegrabilityResidual integrability_residual(const FrameConnection& conn)
{
    IntegrabilityResidual r;
    const int n = conn.n;
    const int m = conn.m;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int al = n; al < m; ++al) {
                r.leaf = std::max(r.leaf, std::fabs(conn.omega(i, j, al) - conn.omega(j, i, al)));
            }
        }
    }
    for (int al = n; al < m; ++al) {
        for (int be = n; be < m; ++be) {
            for (int i = 0; i < n; ++i) {
                r.perp = std::max(r.perp, std::fabs(conn.omega(al, be, i) - conn.omega(be, al, i)));
            }
        }
    }
    return r;
}

std::pair<Vec, Vec> project_top_bot(const AdaptedFrame& frame, const MetricAtPoint& mp, std::span<const double> v)
{
    const int m = frame.m;
    Vec top(static_cast<std::size_t>(m), 0.0);
    Vec bot(static_cast<std::size_t>(m), 0.0);
    for (int a = 0; a < m; ++a) {
        const Vec ea = frame.vector(a);
        const double c = mp.inner(v, ea);
        Vec& target = a < frame.n ? top : bot;
        for (int k = 0; k < m; ++k) target[static_cast<std::size_t>(k)] += c * ea[static_cast<std::size_t>(k)];
    }
    return {top, bot};
}

AdaptedFrame rotate_leaf_block(const AdaptedFrame& frame, const linalg::Matrix& q)
{
    AdaptedFrame out = frame;
    const int m = frame.m;
    const int n = frame.n;
    for (int i = 0; i < n; ++i) {
        for (int c = 0; c < m; ++c) {
            double v = 0.0;
            for (int k = 0; k < n; ++k) v += q(k, i) * frame.e(k, c);
            out.e(i, c) = v;
            for (int d = 0; d < m; ++d) {
                double gv = 0.0;
                for (int k = 0; k < n; ++k) gv += q(k, i) * frame.e_grad(k, c, d);
                out.e_grad(i, c, d) = gv;
                for (int h = 0; h < m; ++h) {
                    double hv = 0.0;
                    for (int k = 0; k < n; ++k) hv += q(k, i) * frame.e_hess(k, c, d, h);
                    out.e_hess(i, c, d, h) = hv;
                }
            }
        }
    }
    return out;
}

FrameGeometry::FrameGeometry(const ManifoldSpec& spec, std::span<const double> point, bool check_integrability)
    : spec_(&spec), point_(point.begin(), point.end())
{
    metric_ = metric_at(spec, point);
    frame_ = adapted_frame_at(spec, metric_, point);
    build();
    if (check_integrability) {
        const auto r = integrability_residual(connection_);
        if (r.leaf > kIntegrabilityTolerance || r.perp > kIntegrabilityTolerance) {
            std::ostringstream os;
            os << (r.leaf > kIntegrabilityTolerance ? "F" : "F-perp") << " is not integrable at "
               << describe(point) << ": bracket residual " << std::max(r.leaf, r.perp);
            throw GeometryError(os.str());
        }
    }
}

FrameGeometry::FrameGeometry(const ManifoldSpec& spec, std::span<const double> point, AdaptedFrame frame)
    : spec_(&spec), point_(point.begin(), point.end())
{
    metric_ = metric_at(spec, point);
    frame_ = std::move(frame);
    build();
}

void FrameGeometry::build()
{
    christoffel_ = christoffel_at(metric_);
    riemann_ = riemann_at(metric_, christoffel_);
    connection_ = frame_connection(metric_, christoffel_, frame_);

    const int mm = frame_.m;
    fields_.clear();
    fields1_.clear();
    vectors_.clear();
    for (int a = 0; a < mm; ++a) {
        fields_.push_back(frame_.field(a));
        fields1_.push_back(truncate(fields_.back()));
        vectors_.push_back(values(fields_.back()));
    }
    nabla_.clear();
    nabla_.reserve(static_cast<std::size_t>(mm * mm));
    for (int a = 0; a < mm; ++a) {
        for (int b = 0; b < mm; ++b) nabla_.push_back(covariant_derivative_field(christoffel_, fields1_[a], fields_[b]));
    }
}

} // namespace foliage
