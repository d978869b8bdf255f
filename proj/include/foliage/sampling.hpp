#pragma once

// Reproducible sample points. The generator is std::mt19937_64 (whose output
// sequence is fixed by the C++ standard); each coordinate consumes one draw x
// and maps it to ((x >> 11) * 2^-53) * L, uniform in [0, L).

#include "foliage/tensor.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace foliage {

std::vector<Vec> sample_points(std::span<const double> box, std::size_t count, std::uint64_t seed);

} // namespace foliage
