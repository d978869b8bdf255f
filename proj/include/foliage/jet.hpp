#pragma once

// Truncated Taylor jets in chart coordinates.
//
// Jet2 carries value, gradient and Hessian; Jet1 carries value and gradient.
// All arithmetic is exact propagation of derivatives (no truncation error
// beyond floating point roundoff). Dimension is a runtime value bounded by
// kMaxDim; a jet with dim 0 is a constant and mixes freely with any dim.

#include <array>
#include <cmath>
#include <cstddef>

namespace foliage {

inline constexpr int kMaxDim = 6;

class Jet1 {
public:
    Jet1() = default;
    explicit Jet1(double value) : value_(value) {}

    static Jet1 constant(double value) { return Jet1(value); }
    static Jet1 variable(double value, int index, int dim)
    {
        Jet1 j(value);
        j.dim_ = dim;
        j.grad_[static_cast<std::size_t>(index)] = 1.0;
        return j;
    }

    int dim() const { return dim_; }
    double value() const { return value_; }
    double grad(int i) const { return grad_[static_cast<std::size_t>(i)]; }

    void set_dim(int d) { dim_ = d; }
    void set_value(double v) { value_ = v; }
    void set_grad(int i, double v) { grad_[static_cast<std::size_t>(i)] = v; }

    /// Derivative along the coordinate vector `direction` (components in chart basis).
    template <class Vec>
    double directional(const Vec& direction) const
    {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i) s += direction[static_cast<std::size_t>(i)] * grad(i);
        return s;
    }

    Jet1 operator-() const
    {
        Jet1 r = *this;
        r.value_ = -value_;
        for (int i = 0; i < dim_; ++i) r.grad_[i] = -grad_[i];
        return r;
    }

    Jet1& operator+=(const Jet1& o)
    {
        widen(o.dim_);
        value_ += o.value_;
        for (int i = 0; i < o.dim_; ++i) grad_[i] += o.grad_[i];
        return *this;
    }
    Jet1& operator-=(const Jet1& o)
    {
        widen(o.dim_);
        value_ -= o.value_;
        for (int i = 0; i < o.dim_; ++i) grad_[i] -= o.grad_[i];
        return *this;
    }
    Jet1& operator*=(double s)
    {
        value_ *= s;
        for (int i = 0; i < dim_; ++i) grad_[i] *= s;
        return *this;
    }

    friend Jet1 operator+(Jet1 a, const Jet1& b) { return a += b; }
    friend Jet1 operator-(Jet1 a, const Jet1& b) { return a -= b; }
    friend Jet1 operator*(Jet1 a, double s) { return a *= s; }
    friend Jet1 operator*(double s, Jet1 a) { return a *= s; }
    friend Jet1 operator*(const Jet1& a, const Jet1& b)
    {
        Jet1 r(a.value_ * b.value_);
        r.dim_ = a.dim_ > b.dim_ ? a.dim_ : b.dim_;
        for (int i = 0; i < r.dim_; ++i) r.grad_[i] = a.grad_[i] * b.value_ + a.value_ * b.grad_[i];
        return r;
    }
    friend Jet1 operator/(const Jet1& a, const Jet1& b)
    {
        const double inv = 1.0 / b.value_;
        Jet1 r(a.value_ * inv);
        r.dim_ = a.dim_ > b.dim_ ? a.dim_ : b.dim_;
        for (int i = 0; i < r.dim_; ++i) r.grad_[i] = (a.grad_[i] - r.value_ * b.grad_[i]) * inv;
        return r;
    }

    /// f(u) given f(u0) and f'(u0).
    Jet1 compose(double f0, double f1) const
    {
        Jet1 r(f0);
        r.dim_ = dim_;
        for (int i = 0; i < dim_; ++i) r.grad_[i] = f1 * grad_[i];
        return r;
    }

private:
    void widen(int d)
    {
        if (d > dim_) dim_ = d;
    }

    double value_ = 0.0;
    std::array<double, kMaxDim> grad_{};
    int dim_ = 0;
};

class Jet2 {
public:
    Jet2() = default;
    explicit Jet2(double value) : value_(value) {}

    static Jet2 constant(double value) { return Jet2(value); }
    static Jet2 variable(double value, int index, int dim)
    {
        Jet2 j(value);
        j.dim_ = dim;
        j.grad_[static_cast<std::size_t>(index)] = 1.0;
        return j;
    }

    int dim() const { return dim_; }
    double value() const { return value_; }
    double grad(int i) const { return grad_[static_cast<std::size_t>(i)]; }
    double hess(int i, int j) const { return hess_[static_cast<std::size_t>(i * kMaxDim + j)]; }

    void set_dim(int d) { dim_ = d; }
    void set_value(double v) { value_ = v; }
    void set_grad(int i, double v) { grad_[static_cast<std::size_t>(i)] = v; }
    /// Writes both (i,j) and (j,i).
    void set_hess(int i, int j, double v)
    {
        hess_[static_cast<std::size_t>(i * kMaxDim + j)] = v;
        hess_[static_cast<std::size_t>(j * kMaxDim + i)] = v;
    }

    /// Drops the Hessian.
    Jet1 truncate() const
    {
        Jet1 r(value_);
        r.set_dim(dim_);
        for (int i = 0; i < dim_; ++i) r.set_grad(i, grad_[i]);
        return r;
    }

    /// The partial derivative along coordinate `c`, as a first-order jet.
    Jet1 partial(int c) const
    {
        Jet1 r(grad(c));
        r.set_dim(dim_);
        for (int i = 0; i < dim_; ++i) r.set_grad(i, hess(c, i));
        return r;
    }

    Jet2 operator-() const
    {
        Jet2 r = *this;
        r.value_ = -value_;
        for (int i = 0; i < dim_; ++i) r.grad_[i] = -grad_[i];
        for (auto& h : r.hess_) h = -h;
        return r;
    }

    Jet2& operator+=(const Jet2& o)
    {
        widen(o.dim_);
        value_ += o.value_;
        for (int i = 0; i < o.dim_; ++i) grad_[i] += o.grad_[i];
        for (std::size_t k = 0; k < hess_.size(); ++k) hess_[k] += o.hess_[k];
        return *this;
    }
    Jet2& operator-=(const Jet2& o)
    {
        widen(o.dim_);
        value_ -= o.value_;
        for (int i = 0; i < o.dim_; ++i) grad_[i] -= o.grad_[i];
        for (std::size_t k = 0; k < hess_.size(); ++k) hess_[k] -= o.hess_[k];
        return *this;
    }
    Jet2& operator*=(double s)
    {
        value_ *= s;
        for (int i = 0; i < dim_; ++i) grad_[i] *= s;
        for (auto& h : hess_) h *= s;
        return *this;
    }

    friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
    friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
    friend Jet2 operator*(Jet2 a, double s) { return a *= s; }
    friend Jet2 operator*(double s, Jet2 a) { return a *= s; }

    friend Jet2 operator*(const Jet2& a, const Jet2& b)
    {
        Jet2 r(a.value_ * b.value_);
        r.dim_ = a.dim_ > b.dim_ ? a.dim_ : b.dim_;
        for (int i = 0; i < r.dim_; ++i) r.grad_[i] = a.grad_[i] * b.value_ + a.value_ * b.grad_[i];
        for (int i = 0; i < r.dim_; ++i) {
            for (int j = i; j < r.dim_; ++j) {
                const double v = a.hess(i, j) * b.value_ + a.value_ * b.hess(i, j)
                    + (a.grad_[i] * b.grad_[j] + a.grad_[j] * b.grad_[i]);
                r.set_hess(i, j, v);
            }
        }
        return r;
    }

    friend Jet2 operator/(const Jet2& a, const Jet2& b) { return a * b.reciprocal(); }

    Jet2 reciprocal() const
    {
        const double inv = 1.0 / value_;
        return compose(inv, -inv * inv, 2.0 * inv * inv * inv);
    }

    /// f(u) given f(u0), f'(u0), f''(u0).
    Jet2 compose(double f0, double f1, double f2) const
    {
        Jet2 r(f0);
        r.dim_ = dim_;
        for (int i = 0; i < dim_; ++i) r.grad_[i] = f1 * grad_[i];
        for (int i = 0; i < dim_; ++i) {
            for (int j = i; j < dim_; ++j) r.set_hess(i, j, f1 * hess(i, j) + f2 * grad_[i] * grad_[j]);
        }
        return r;
    }

private:
    void widen(int d)
    {
        if (d > dim_) dim_ = d;
    }

    double value_ = 0.0;
    std::array<double, kMaxDim> grad_{};
    std::array<double, kMaxDim * kMaxDim> hess_{};
    int dim_ = 0;
};

inline Jet2 sin(const Jet2& u)
{
    const double s = std::sin(u.value()), c = std::cos(u.value());
    return u.compose(s, c, -s);
}
inline Jet2 cos(const Jet2& u)
{
    const double s = std::sin(u.value()), c = std::cos(u.value());
    return u.compose(c, -s, -c);
}
inline Jet2 exp(const Jet2& u)
{
    const double e = std::exp(u.value());
    return u.compose(e, e, e);
}
/// Caller guarantees u > 0.
inline Jet2 log(const Jet2& u)
{
    const double inv = 1.0 / u.value();
    return u.compose(std::log(u.value()), inv, -inv * inv);
}
/// Caller guarantees u > 0.
inline Jet2 sqrt(const Jet2& u)
{
    const double r = std::sqrt(u.value());
    return u.compose(r, 0.5 / r, -0.25 / (r * u.value()));
}

/// Integer power by binary exponentiation on the value, so small powers are
/// bit-reproducible. Caller guarantees u != 0 when n < 0.
inline double ipow(double x, int n)
{
    if (n < 0) return 1.0 / ipow(x, -n);
    double result = 1.0;
    double base = x;
    while (n > 0) {
        if (n & 1) result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

inline Jet2 pow(const Jet2& u, int n)
{
    if (n == 0) return Jet2(1.0);
    if (n == 1) return u;
    const double x = u.value();
    const double f0 = ipow(x, n);
    const double f1 = n * ipow(x, n - 1);
    const double f2 = n == 1 ? 0.0 : static_cast<double>(n) * (n - 1) * ipow(x, n - 2);
    return u.compose(f0, f1, f2);
}

inline Jet1 sqrt(const Jet1& u)
{
    const double r = std::sqrt(u.value());
    return u.compose(r, 0.5 / r);
}

} // namespace foliage
