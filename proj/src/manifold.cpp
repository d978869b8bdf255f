#include "foliage/manifold.hpp"

#include "foliage/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace foliage {

namespace {

std::string format_point(std::span<const double> point)
{
    std::ostringstream os;
    os.precision(6);
    os << '(';
    for (std::size_t i = 0; i < point.size(); ++i) os << (i ? ", " : "") << point[i];
    os << ')';
    return os.str();
}

} // namespace

Jet2 MetricAtPoint::jet(int a, int b) const
{
    Jet2 j(g(a, b));
    j.set_dim(dim);
    for (int c = 0; c < dim; ++c) j.set_grad(c, g_grad(a, b, c));
    for (int c = 0; c < dim; ++c) {
        for (int d = c; d < dim; ++d) j.set_hess(c, d, g_hess(a, b, c, d));
    }
    return j;
}

Jet1 MetricAtPoint::jet1(int a, int b) const
{
    Jet1 j(g(a, b));
    j.set_dim(dim);
    for (int c = 0; c < dim; ++c) j.set_grad(c, g_grad(a, b, c));
    return j;
}

double MetricAtPoint::inner(std::span<const double> u, std::span<const double> v) const
{
    double s = 0.0;
    for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) s += g(a, b) * u[static_cast<std::size_t>(a)] * v[static_cast<std::size_t>(b)];
    }
    return s;
}

Jet1 ChristoffelAtPoint::jet(int c, int a, int b) const
{
    Jet1 j(gamma(c, a, b));
    j.set_dim(dim);
    for (int d = 0; d < dim; ++d) j.set_grad(d, gamma_grad(c, a, b, d));
    return j;
}

double RiemannAtPoint::eval(std::span<const double> u, std::span<const double> v, std::span<const double> w,
                            std::span<const double> z) const
{
    double s = 0.0;
    for (int a = 0; a < dim; ++a) {
        if (u[a] == 0.0) continue;
        for (int b = 0; b < dim; ++b) {
            if (v[b] == 0.0) continue;
            const double uv = u[a] * v[b];
            for (int c = 0; c < dim; ++c) {
                if (w[c] == 0.0) continue;
                for (int d = 0; d < dim; ++d) s += uv * w[c] * z[d] * R(a, b, c, d);
            }
        }
    }
    return s;
}

MetricAtPoint metric_at(const ManifoldSpec& spec, std::span<const double> point)
{
    const int m = spec.m;
    MetricAtPoint mp;
    mp.dim = m;
    mp.g = Tensor<2>(m);
    mp.g_grad = Tensor<3>(m);
    mp.g_hess = Tensor<4>(m);
    mp.g_inv = Tensor<2>(m);

    for (int a = 0; a < m; ++a) {
        for (int b = a; b < m; ++b) {
            const Jet2 j = expr::eval_jet2(spec.metric_entry(a, b), point, spec.params);
            for (const auto& [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
                mp.g(x, y) = j.value();
                for (int c = 0; c < m; ++c) {
                    mp.g_grad(x, y, c) = j.grad(c);
                    for (int d = 0; d < m; ++d) mp.g_hess(x, y, c, d) = j.hess(c, d);
                }
            }
        }
    }

    linalg::Matrix g(m, m);
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) g(a, b) = mp.g(a, b);
    }
    if (!linalg::cholesky(g)) {
        const auto eig = linalg::jacobi_eigen(g);
        std::ostringstream os;
        os << "metric is not positive definite at " << format_point(point)
           << ": smallest eigenvalue " << eig.values.back();
        throw GeometryError(os.str());
    }
    const auto inv = linalg::inverse(g);
    if (!inv) throw GeometryError("metric is singular at " + format_point(point));
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) mp.g_inv(a, b) = 0.5 * ((*inv)(a, b) + (*inv)(b, a));
    }
    return mp;
}

ChristoffelAtPoint christoffel_at(const MetricAtPoint& mp)
{
    const int m = mp.dim;
    // Lowered symbols Γ_DAB = 1/2 (∂_A g_DB + ∂_B g_DA - ∂_D g_AB) and their gradients.
    Tensor<3> low(m);
    Tensor<4> low_grad(m);
    for (int d = 0; d < m; ++d) {
        for (int a = 0; a < m; ++a) {
            for (int b = a; b < m; ++b) {
                const double v = 0.5 * (mp.g_grad(d, b, a) + mp.g_grad(d, a, b) - mp.g_grad(a, b, d));
                low(d, a, b) = v;
                low(d, b, a) = v;
                for (int e = 0; e < m; ++e) {
                    const double w =
                        0.5 * (mp.g_hess(d, b, a, e) + mp.g_hess(d, a, b, e) - mp.g_hess(a, b, d, e));
                    low_grad(d, a, b, e) = w;
                    low_grad(d, b, a, e) = w;
                }
            }
        }
    }

    // ∂_E g^{CD} = -g^{CP} ∂_E g_PQ g^{QD}
    Tensor<3> inv_grad(m);
    for (int c = 0; c < m; ++c) {
        for (int d = 0; d < m; ++d) {
            for (int e = 0; e < m; ++e) {
                double s = 0.0;
                for (int p = 0; p < m; ++p) {
                    for (int q = 0; q < m; ++q) s += mp.g_inv(c, p) * mp.g_grad(p, q, e) * mp.g_inv(q, d);
                }
                inv_grad(c, d, e) = -s;
            }
        }
    }

    ChristoffelAtPoint cp;
    cp.dim = m;
    cp.gamma = Tensor<3>(m);
    cp.gamma_grad = Tensor<4>(m);
    for (int c = 0; c < m; ++c) {
        for (int a = 0; a < m; ++a) {
            for (int b = a; b < m; ++b) {
                double v = 0.0;
                for (int d = 0; d < m; ++d) v += mp.g_inv(c, d) * low(d, a, b);
                cp.gamma(c, a, b) = v;
                cp.gamma(c, b, a) = v;
                for (int e = 0; e < m; ++e) {
                    double w = 0.0;
                    for (int d = 0; d < m; ++d) w += inv_grad(c, d, e) * low(d, a, b) + mp.g_inv(c, d) * low_grad(d, a, b, e);
                    cp.gamma_grad(c, a, b, e) = w;
                    cp.gamma_grad(c, b, a, e) = w;
                }
            }
        }
    }
    return cp;
}

RiemannAtPoint riemann_at(const MetricAtPoint& mp, const ChristoffelAtPoint& cp)
{
    const int m = mp.dim;
    RiemannAtPoint rp;
    rp.dim = m;
    rp.R = Tensor<4>(m);
    std::vector<double> up(static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            for (int c = 0; c < m; ++c) {
                // (R(∂_A,∂_B)∂_C)^E
                for (int e = 0; e < m; ++e) {
                    double v = cp.gamma_grad(e, b, c, a) - cp.gamma_grad(e, a, c, b);
                    for (int f = 0; f < m; ++f) v += cp.gamma(f, b, c) * cp.gamma(e, a, f) - cp.gamma(f, a, c) * cp.gamma(e, b, f);
                    up[static_cast<std::size_t>(e)] = v;
                }
                for (int d = 0; d < m; ++d) {
                    double s = 0.0;
                    for (int e = 0; e < m; ++e) s += mp.g(e, d) * up[static_cast<std::size_t>(e)];
                    rp.R(a, b, c, d) = s;
                }
            }
        }
    }
    return rp;
}

FieldJet2 eval_field(const VectorFieldExpr& field, std::span<const double> point, const expr::ParamMap& params)
{
    FieldJet2 out;
    out.reserve(field.size());
    for (const auto& c : field) out.push_back(expr::eval_jet2(c, point, params));
    return out;
}

FieldJet1 truncate(const FieldJet2& field)
{
    FieldJet1 out;
    out.reserve(field.size());
    for (const auto& c : field) out.push_back(c.truncate());
    return out;
}

Vec values(const FieldJet1& field)
{
    Vec out;
    out.reserve(field.size());
    for (const auto& c : field) out.push_back(c.value());
    return out;
}

Vec values(const FieldJet2& field)
{
    Vec out;
    out.reserve(field.size());
    for (const auto& c : field) out.push_back(c.value());
    return out;
}

Vec covariant_derivative(const ChristoffelAtPoint& cp, std::span<const double> x, const FieldJet1& y)
{
    const int m = cp.dim;
    Vec out(static_cast<std::size_t>(m), 0.0);
    for (int c = 0; c < m; ++c) {
        double s = 0.0;
        for (int d = 0; d < m; ++d) {
            if (x[d] == 0.0) continue;
            s += x[d] * y[c].grad(d);
            for (int e = 0; e < m; ++e) s += x[d] * y[e].value() * cp.gamma(c, d, e);
        }
        out[static_cast<std::size_t>(c)] = s;
    }
    return out;
}

FieldJet1 covariant_derivative_field(const ChristoffelAtPoint& cp, const FieldJet1& x, const FieldJet2& y)
{
    const int m = cp.dim;
    FieldJet1 out(static_cast<std::size_t>(m));
    for (int c = 0; c < m; ++c) {
        Jet1 s;
        for (int d = 0; d < m; ++d) {
            s += x[d] * y[c].partial(d);
            for (int e = 0; e < m; ++e) s += x[d] * y[e].truncate() * cp.jet(c, d, e);
        }
        s.set_dim(m);
        out[static_cast<std::size_t>(c)] = s;
    }
    return out;
}

Vec lie_bracket(const FieldJet1& x, const FieldJet1& y)
{
    const int m = static_cast<int>(x.size());
    Vec out(static_cast<std::size_t>(m), 0.0);
    for (int c = 0; c < m; ++c) {
        double s = 0.0;
        for (int a = 0; a < m; ++a) s += x[a].value() * y[c].grad(a) - y[a].value() * x[c].grad(a);
        out[static_cast<std::size_t>(c)] = s;
    }
    return out;
}

Jet1 inner_jet(const MetricAtPoint& mp, const FieldJet1& u, const FieldJet1& v)
{
    const int m = mp.dim;
    Jet1 s;
    for (int a = 0; a < m; ++a) {
        Jet1 row;
        for (int b = 0; b < m; ++b) row += mp.jet1(a, b) * v[b];
        s += u[a] * row;
    }
    s.set_dim(m);
    return s;
}

Vec covariant_derivative_at(const ManifoldSpec& spec, const VectorFieldExpr& x, const VectorFieldExpr& y,
                            std::span<const double> point)
{
    const auto mp = metric_at(spec, point);
    const auto cp = christoffel_at(mp);
    return covariant_derivative(cp, values(eval_field(x, point, spec.params)), truncate(eval_field(y, point, spec.params)));
}

Vec lie_bracket_at(const ManifoldSpec& spec, const VectorFieldExpr& x, const VectorFieldExpr& y,
                   std::span<const double> point)
{
    return lie_bracket(truncate(eval_field(x, point, spec.params)), truncate(eval_field(y, point, spec.params)));
}

CurvatureSanity curvature_sanity_at(const ManifoldSpec& spec, std::span<const double> point)
{
    const int m = spec.m;
    const auto mp = metric_at(spec, point);
    const auto cp = christoffel_at(mp);
    const auto rp = riemann_at(mp, cp);

    CurvatureSanity out;
    out.samples = 1;

    // Rows of g as smooth test fields.
    std::vector<FieldJet2> rows(static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) rows[static_cast<std::size_t>(a)].push_back(mp.jet(a, b));
    }
    std::vector<FieldJet1> rows1;
    for (const auto& r : rows) rows1.push_back(truncate(r));

    for (int a = 0; a < m; ++a) {
        const Vec x = values(rows[a]);
        for (int b = 0; b < m; ++b) {
            const Vec y = values(rows[b]);
            const Vec dxy = covariant_derivative(cp, x, rows1[b]);
            const Vec dyx = covariant_derivative(cp, y, rows1[a]);
            const Vec br = lie_bracket(rows1[a], rows1[b]);
            for (int c = 0; c < m; ++c) {
                out.torsion = std::max(out.torsion, std::fabs(dxy[c] - dyx[c] - br[c]));
            }
            for (int c = 0; c < m; ++c) {
                // X<Y,Z> - <∇_X Y, Z> - <Y, ∇_X Z>
                const double lhs = inner_jet(mp, rows1[b], rows1[c]).directional(x);
                const Vec dxz = covariant_derivative(cp, x, rows1[c]);
                const double rhs = mp.inner(dxy, values(rows[c])) + mp.inner(y, dxz);
                out.metric_compatibility = std::max(out.metric_compatibility, std::fabs(lhs - rhs));
            }
        }
    }

    const auto& R = rp.R;
    double sym = 0.0;
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            for (int c = 0; c < m; ++c) {
                for (int d = 0; d < m; ++d) {
                    const double r = R(a, b, c, d);
                    sym = std::max(sym, std::fabs(r + R(b, a, c, d)));
                    sym = std::max(sym, std::fabs(r + R(a, b, d, c)));
                    sym = std::max(sym, std::fabs(r - R(c, d, a, b)));
                    sym = std::max(sym, std::fabs(r + R(b, c, a, d) + R(c, a, b, d)));
                }
            }
        }
    }
    out.riemann_symmetry = sym;
    return out;
}

CurvatureSanity curvature_sanity(const ManifoldSpec& spec, std::span<const Vec> points)
{
    CurvatureSanity total;
    for (const auto& x : points) {
        const auto s = curvature_sanity_at(spec, x);
        total.metric_compatibility = std::max(total.metric_compatibility, s.metric_compatibility);
        total.torsion = std::max(total.torsion, s.torsion);
        total.riemann_symmetry = std::max(total.riemann_symmetry, s.riemann_symmetry);
        total.samples += 1;
    }
    return total;
}

} // namespace foliage
