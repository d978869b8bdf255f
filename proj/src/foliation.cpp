#include "foliage/foliation.hpp"

#include <cmath>

namespace foliage {

namespace {

// Fixed orthogonal matrix (Householder reflection about (1, 2, ..., p)).
linalg::Matrix probe_rotation(int p)
{
    linalg::Matrix q = linalg::Matrix::identity(p);
    double norm2 = 0.0;
    for (int k = 0; k < p; ++k) norm2 += (k + 1.0) * (k + 1.0);
    for (int r = 0; r < p; ++r) {
        for (int c = 0; c < p; ++c) q(r, c) -= 2.0 * (r + 1.0) * (c + 1.0) / norm2;
    }
    return q;
}

// sum over the listed frame indices of <∇_{e_A} e_A, e_B> e_B for B in `onto`.
FieldJet1 projected_trace_field(const FrameGeometry& geo, int from_begin, int from_end, int onto_begin, int onto_end)
{
    const int m = geo.m();
    FieldJet1 out(static_cast<std::size_t>(m));
    for (auto& c : out) c.set_dim(m);
    for (int a = from_begin; a < from_end; ++a) {
        for (int b = onto_begin; b < onto_end; ++b) {
            const Jet1 coeff = geo.inner(geo.nabla(a, a), geo.e1(b));
            for (int c = 0; c < m; ++c) out[static_cast<std::size_t>(c)] += coeff * geo.e1(b)[static_cast<std::size_t>(c)];
        }
    }
    return out;
}

} // namespace

SecondForms second_forms_at(const FrameConnection& conn)
{
    const int n = conn.n;
    const int p = conn.p;
    SecondForms sf;
    sf.n = n;
    sf.p = p;
    for (int k = 0; k < p; ++k) {
        const int al = n + k;
        linalg::Matrix h(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) h(i, j) = -conn.omega(i, al, j);
        }
        sf.norm2_H_F.push_back(linalg::frobenius_norm2(h));
        sf.H_F.push_back(h);
    }
    for (int i = 0; i < n; ++i) {
        linalg::Matrix h(p, p);
        for (int a = 0; a < p; ++a) {
            for (int b = 0; b < p; ++b) h(a, b) = -conn.omega(n + a, i, n + b);
        }
        sf.norm2_H_Fperp.push_back(linalg::frobenius_norm2(h));
        sf.H_Fperp.push_back(h);
    }

    // Weingarten matrices coincide with the form matrices in an orthonormal frame;
    // eigen-decompose the symmetric part.
    auto symmetric = [](const linalg::Matrix& a) {
        linalg::Matrix s = a;
        for (int r = 0; r < a.rows(); ++r) {
            for (int c = 0; c < a.cols(); ++c) s(r, c) = 0.5 * (a(r, c) + a(c, r));
        }
        return s;
    };
    sf.weingarten.perp = sf.H_F;
    sf.weingarten.leaf = sf.H_Fperp;
    for (const auto& h : sf.H_F) sf.weingarten.perp_eigen.push_back(linalg::jacobi_eigen(symmetric(h)));
    for (const auto& h : sf.H_Fperp) sf.weingarten.leaf_eigen.push_back(linalg::jacobi_eigen(symmetric(h)));
    return sf;
}

MeanCurvatures mean_curvatures_at(const FrameConnection& conn, const AdaptedFrame& frame)
{
    const int m = conn.m;
    const int n = conn.n;
    MeanCurvatures mc;
    mc.h.assign(static_cast<std::size_t>(m), 0.0);
    mc.h_perp.assign(static_cast<std::size_t>(m), 0.0);
    for (int i = 0; i < n; ++i) {
        for (int be = n; be < m; ++be) {
            const double c = conn.omega(i, i, be);
            for (int k = 0; k < m; ++k) mc.h[static_cast<std::size_t>(k)] += c * frame.e(be, k);
        }
    }
    for (int al = n; al < m; ++al) {
        for (int j = 0; j < n; ++j) {
            const double c = conn.omega(al, al, j);
            for (int k = 0; k < m; ++k) mc.h_perp[static_cast<std::size_t>(k)] += c * frame.e(j, k);
        }
    }
    mc.h_normalized = mc.h;
    for (auto& v : mc.h_normalized) v /= n;
    mc.h_perp_normalized = mc.h_perp;
    for (auto& v : mc.h_perp_normalized) v /= conn.p;
    return mc;
}

std::vector<double> trace_K_at(const RiemannAtPoint& riemann, const AdaptedFrame& frame)
{
    std::vector<double> out;
    for (int al = frame.n; al < frame.m; ++al) {
        const Vec ea = frame.vector(al);
        double s = 0.0;
        for (int i = 0; i < frame.n; ++i) {
            const Vec ei = frame.vector(i);
            s += riemann.eval(ea, ei, ei, ea);
        }
        out.push_back(s);
    }
    return out;
}

BNorms B_norms_and_K_at(const FrameConnection& conn, std::span<const double> traceK)
{
    const int m = conn.m;
    const int n = conn.n;
    BNorms b;
    // |B_F|^2 = sum_{i,j} <(∇_{e_i} e_j)^perp, (∇_{e_j} e_i)^perp>
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int be = n; be < m; ++be) b.B_F_norm2 += conn.omega(i, j, be) * conn.omega(j, i, be);
        }
    }
    for (int al = n; al < m; ++al) {
        for (int be = n; be < m; ++be) {
            for (int k = 0; k < n; ++k) b.B_Fperp_norm2 += conn.omega(al, be, k) * conn.omega(be, al, k);
        }
    }
    for (double t : traceK) b.K_mixed += t;
    return b;
}

Umbilicity umbilicity_test(const SecondForms& forms, double tolerance)
{
    Umbilicity u;
    const int p = forms.p;
    const linalg::Matrix q = probe_rotation(p);
    for (const auto& h : forms.H_Fperp) {
        double trace = 0.0;
        for (int a = 0; a < p; ++a) trace += h(a, a);
        const double lambda = trace / p;
        u.lambda.push_back(lambda);
        for (int a = 0; a < p; ++a) {
            for (int b = 0; b < p; ++b) {
                const double target = a == b ? lambda : 0.0;
                u.max_deviation = std::max(u.max_deviation, std::fabs(h(a, b) - target));
            }
        }
        const linalg::Matrix r = q.transpose() * h * q;
        for (int a = 0; a < p; ++a) {
            for (int b = 0; b < p; ++b) {
                if (a != b) u.rotated_offdiag = std::max(u.rotated_offdiag, std::fabs(r(a, b)));
            }
        }
    }
    u.is_umbilical = u.max_deviation <= tolerance;
    return u;
}

FoliationGeometryAtPoint foliation_geometry_at(const FrameGeometry& geo)
{
    FoliationGeometryAtPoint fg;
    fg.forms = second_forms_at(geo.connection());
    fg.mean = mean_curvatures_at(geo.connection(), geo.frame());
    fg.traceK = trace_K_at(geo.riemann(), geo.frame());
    fg.b = B_norms_and_K_at(geo.connection(), fg.traceK);
    return fg;
}

double div_along_at(const FrameGeometry& geo, const FieldJet1& x, Side side)
{
    const int begin = side == Side::Leaf ? 0 : geo.n();
    const int end = side == Side::Leaf ? geo.n() : geo.m();
    double s = 0.0;
    for (int a = begin; a < end; ++a) s += geo.inner(geo.ev(a), geo.covariant(a, x));
    return s;
}

double divergence(const FrameGeometry& geo, const FieldJet1& x)
{
    double s = 0.0;
    for (int a = 0; a < geo.m(); ++a) s += geo.inner(geo.ev(a), geo.covariant(a, x));
    return s;
}

FieldJet1 mean_curvature_field(const FrameGeometry& geo)
{
    return projected_trace_field(geo, 0, geo.n(), geo.n(), geo.m());
}

FieldJet1 mean_curvature_perp_field(const FrameGeometry& geo)
{
    return projected_trace_field(geo, geo.n(), geo.m(), 0, geo.n());
}

FieldJet1 scaled(FieldJet1 x, double s)
{
    for (auto& c : x) c *= s;
    return x;
}

} // namespace foliage
