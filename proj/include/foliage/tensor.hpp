#pragma once

#include <cstddef>
#include <vector>

namespace foliage {

/// Dense rank-R array with every index in [0, dim).
template <int Rank>
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(int dim) : dim_(dim), data_(size_for(dim), 0.0) {}

    int dim() const { return dim_; }

    template <class... I>
    double& operator()(I... idx)
    {
        static_assert(sizeof...(I) == Rank);
        return data_[offset(idx...)];
    }
    template <class... I>
    double operator()(I... idx) const
    {
        static_assert(sizeof...(I) == Rank);
        return data_[offset(idx...)];
    }

    const std::vector<double>& data() const { return data_; }

private:
    static std::size_t size_for(int dim)
    {
        std::size_t n = 1;
        for (int r = 0; r < Rank; ++r) n *= static_cast<std::size_t>(dim);
        return n;
    }

    template <class... I>
    std::size_t offset(I... idx) const
    {
        std::size_t off = 0;
        ((off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(idx)), ...);
        return off;
    }

    int dim_ = 0;
    std::vector<double> data_;
};

/// Components of a vector at a point, chart basis.
using Vec = std::vector<double>;

} // namespace foliage
