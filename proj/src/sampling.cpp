#include "foliage/sampling.hpp"

#include <random>

namespace foliage {

std::vector<Vec> sample_points(std::span<const double> box, std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
    std::vector<Vec> out(count, Vec(box.size()));
    for (auto& p : out) {
        for (std::size_t k = 0; k < box.size(); ++k) p[k] = static_cast<double>(rng() >> 11) * kScale * box[k];
    }
    return out;
}

} // namespace foliage
