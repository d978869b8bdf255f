#pragma once

// Check suite runner and its report. The JSON form has a fixed key order and
// carries no timing, so identical inputs give byte-identical output.
// Schema: docs/report_schema.md.

#include "foliage/identities.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace foliage {

inline constexpr const char* kEngineVersion = "0.1.0";
inline constexpr double kSanityTolerance = 1e-10;

struct CheckOptions {
    std::size_t samples = 200;
    std::uint64_t seed = 42;
    int grid = 64;
    std::vector<IdentityId> identities{kAllIdentities.begin(), kAllIdentities.end()};
    double tolerance = 1e-8;
    double umbilicity_tolerance = kUmbilicityTolerance;
};

enum class Status { Pass, Fail, Skipped };

struct IdentityResult {
    IdentityId id = IdentityId::THEOREM1;
    Status status = Status::Pass;
    double max_abs = 0.0;
    double mean_abs = 0.0;
    std::size_t samples = 0;  // pointwise identities
    int grid = 0;             // integral identities
    std::size_t nodes = 0;
    double integral = 0.0;
    std::string note;
};

struct ResidualReport {
    std::string manifold;
    std::string source;  // "catalog" or the manifest path
    int m = 0;
    int n = 0;
    int p = 0;
    expr::ParamMap params;
    CheckOptions options;
    CurvatureSanity sanity;
    bool sanity_pass = true;
    bool umbilical = false;
    double umbilicity_deviation = 0.0;
    std::vector<IdentityResult> results;
    bool pass = true;
    double wall_seconds = 0.0;  // text output only

    nlohmann::ordered_json to_json() const;
    std::string to_text() const;
};

/// Curvature sanity and pointwise identities at seeded random points, then both
/// integral checks. Throws InputError/GeometryError on bad input.
ResidualReport run_check(const ManifoldSpec& spec, const CheckOptions& options, const std::string& source);

std::string_view status_name(Status s);

/// Identity x manifold table of max residuals from parsed JSON reports.
std::string merge_reports(const std::vector<nlohmann::ordered_json>& reports);

} // namespace foliage
