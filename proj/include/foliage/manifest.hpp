#pragma once

// Plain-text manifold manifests. See docs/manifest.md.
//
//   # comment
//   name = warped_t2
//   dims = 2
//   box = 2*pi, 2*pi
//   oracle = warped_t2
//   [params]
//   a = 2
//   [metric]
//   g 1 1 = 1
//   g 2 2 = (a+cos(x1))^2
//   [foliation]
//   split = 1 | 2
//
// A [foliation] section holds either one split line or one `span = c1, ..., cm`
// line per F-spanning field.

#include "foliage/manifold_spec.hpp"

#include <filesystem>
#include <string_view>

namespace foliage {

/// Errors are InputError with "<origin>:<line>: " prefixes.
ManifoldSpec parse_manifest(std::string_view text, const std::string& origin = "<manifest>");
ManifoldSpec load_manifest(const std::filesystem::path& path);

/// Structural equality: identical expression trees, box, parameters, foliation.
bool same_spec(const ManifoldSpec& a, const ManifoldSpec& b);

} // namespace foliage
