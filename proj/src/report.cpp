#include "foliage/report.hpp"

#include "foliage/integration.hpp"
#include "foliage/parallel.hpp"
#include "foliage/sampling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace foliage {

namespace {

bool selected(const CheckOptions& o, IdentityId id)
{
    return std::find(o.identities.begin(), o.identities.end(), id) != o.identities.end();
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::string general(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct PointRecord {
    ResidualMap residuals;
    bool umbilical = false;
    double deviation = 0.0;
};

} // namespace

std::string_view status_name(Status s)
{
    switch (s) {
    case Status::Pass:
        return "pass";
    case Status::Fail:
        return "fail";
    default:
        return "skipped";
    }
}

ResidualReport run_check(const ManifoldSpec& spec, const CheckOptions& options, const std::string& source)
{
    const auto start = std::chrono::steady_clock::now();
    validate(spec);
    if (options.samples == 0) throw InputError("samples must be positive");

    ResidualReport r;
    r.manifold = spec.name;
    r.source = source;
    r.m = spec.m;
    r.n = spec.n;
    r.p = spec.p;
    r.params = spec.params;
    r.options = options;

    const std::vector<Vec> points = sample_points(spec.box, options.samples, options.seed);
    r.sanity = curvature_sanity(spec, points);
    r.sanity_pass = r.sanity.metric_compatibility <= kSanityTolerance && r.sanity.torsion <= kSanityTolerance
                    && r.sanity.riemann_symmetry <= kSanityTolerance;

    std::vector<PointRecord> records(points.size());
    parallel_for(points.size(), [&](std::size_t k) {
        const FrameGeometry geo(spec, points[k]);
        const PointEvaluator ev(geo, options.umbilicity_tolerance);
        records[k].residuals = ev.pointwise_residuals();
        records[k].umbilical = ev.umbilicity().is_umbilical;
        records[k].deviation = ev.umbilicity().max_deviation;
    });

    r.umbilical = true;
    for (const auto& rec : records) {
        r.umbilical = r.umbilical && rec.umbilical;
        r.umbilicity_deviation = std::max(r.umbilicity_deviation, rec.deviation);
    }

    std::optional<std::array<IntegralCheck, 2>> integrals;
    if (selected(options, IdentityId::THEOREM5_INTEGRAND) || selected(options, IdentityId::THEOREM6_INTEGRAND)) {
        integrals = run_integral_checks(spec, make_grid(spec, options.grid));
    }

    for (const IdentityId id : kAllIdentities) {
        if (!selected(options, id)) continue;
        IdentityResult res;
        res.id = id;
        if (is_integral_identity(id)) {
            const IntegralCheck& c = (*integrals)[id == IdentityId::THEOREM5_INTEGRAND ? 0 : 1];
            res.grid = c.points_per_axis;
            res.nodes = c.nodes;
            res.integral = c.integral;
            res.max_abs = std::fabs(c.integral);
            res.mean_abs = res.max_abs;
        } else if (is_umbilical_identity(id) && !r.umbilical) {
            res.status = Status::Skipped;
            res.note = "F-perp is not totally umbilical (max deviation " + sci(r.umbilicity_deviation) + ")";
            r.results.push_back(res);
            continue;
        } else {
            std::vector<double> abs_values;
            abs_values.reserve(records.size());
            for (const auto& rec : records) {
                const double v = rec.residuals.at(id);
                abs_values.push_back(v);
                res.max_abs = std::max(res.max_abs, v);
            }
            res.mean_abs = compensated_sum(abs_values) / static_cast<double>(abs_values.size());
            res.samples = abs_values.size();
        }
        res.status = res.max_abs <= options.tolerance ? Status::Pass : Status::Fail;
        r.results.push_back(res);
    }

    r.pass = r.sanity_pass;
    for (const auto& res : r.results) r.pass = r.pass && res.status != Status::Fail;
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

nlohmann::ordered_json ResidualReport::to_json() const
{
    using nlohmann::ordered_json;
    ordered_json j;
    j["engine"] = {{"name", "foliage"}, {"version", kEngineVersion}};

    ordered_json params_json = ordered_json::object();
    for (const auto& [k, v] : params) params_json[k] = v;
    j["manifold"] = {{"name", manifold}, {"source", source}, {"m", m}, {"n", n}, {"p", p}, {"params", params_json}};

    ordered_json ids = ordered_json::array();
    for (IdentityId id : options.identities) ids.push_back(std::string(identity_name(id)));
    j["settings"] = {{"samples", options.samples},
                     {"seed", options.seed},
                     {"grid", options.grid},
                     {"tolerance", options.tolerance},
                     {"sanity_tolerance", kSanityTolerance},
                     {"umbilicity_tolerance", options.umbilicity_tolerance},
                     {"identities", ids}};

    j["sanity"] = {{"metric_compatibility", sanity.metric_compatibility},
                   {"torsion", sanity.torsion},
                   {"riemann_symmetry", sanity.riemann_symmetry},
                   {"samples", sanity.samples},
                   {"status", sanity_pass ? "pass" : "fail"}};
    j["umbilicity"] = {{"totally_umbilical", umbilical}, {"max_deviation", umbilicity_deviation}};

    ordered_json rows = ordered_json::array();
    for (const auto& res : results) {
        ordered_json row;
        row["id"] = std::string(identity_name(res.id));
        row["kind"] = is_integral_identity(res.id) ? "integral" : "pointwise";
        row["status"] = std::string(status_name(res.status));
        if (res.status != Status::Skipped) {
            row["max_abs"] = res.max_abs;
            row["mean_abs"] = res.mean_abs;
            if (is_integral_identity(res.id)) {
                row["grid"] = res.grid;
                row["nodes"] = res.nodes;
                row["integral"] = res.integral;
            } else {
                row["samples"] = res.samples;
            }
            row["tolerance"] = options.tolerance;
        } else {
            row["note"] = res.note;
        }
        rows.push_back(row);
    }
    j["identities"] = rows;
    j["pass"] = pass;
    return j;
}

std::string ResidualReport::to_text() const
{
    std::ostringstream os;
    os << "manifold " << manifold << " (m=" << m << ", n=" << n << ", p=" << p << ")";
    for (const auto& [k, v] : params) os << ' ' << k << '=' << general(v);
    os << "\nsource   " << source << "\n";
    os << "samples " << options.samples << ", seed " << options.seed << ", grid " << options.grid << ", tol "
       << sci(options.tolerance) << "\n";
    os << "sanity   metric " << sci(sanity.metric_compatibility) << "  torsion " << sci(sanity.torsion)
       << "  riemann " << sci(sanity.riemann_symmetry) << "  " << (sanity_pass ? "pass" : "FAIL") << "\n";
    os << "umbilic  " << (umbilical ? "yes" : "no") << " (max deviation " << sci(umbilicity_deviation) << ")\n\n";

    char line[160];
    std::snprintf(line, sizeof line, "%-20s %-8s %-11s %-11s %s\n", "identity", "status", "max_abs", "mean_abs", "samples/grid");
    os << line;
    for (const auto& res : results) {
        const std::string name(identity_name(res.id));
        const std::string status(status_name(res.status));
        if (res.status == Status::Skipped) {
            std::snprintf(line, sizeof line, "%-20s %-8s %s\n", name.c_str(), status.c_str(), res.note.c_str());
        } else {
            const std::string where = is_integral_identity(res.id) ? "N=" + std::to_string(res.grid)
                                                                    : std::to_string(res.samples);
            std::snprintf(line, sizeof line, "%-20s %-8s %-11s %-11s %s\n", name.c_str(), status.c_str(),
                          sci(res.max_abs).c_str(), sci(res.mean_abs).c_str(), where.c_str());
        }
        os << line;
    }
    std::snprintf(line, sizeof line, "\nresult   %s  (%.2f s)\n", pass ? "PASS" : "FAIL", wall_seconds);
    os << line;
    return os.str();
}

std::string merge_reports(const std::vector<nlohmann::ordered_json>& reports)
{
    std::vector<std::string> columns;
    std::vector<std::string> row_order;
    std::map<std::string, std::map<std::size_t, std::string>> cells;
    for (std::size_t c = 0; c < reports.size(); ++c) {
        const auto& rep = reports[c];
        if (!rep.contains("manifold") || !rep.contains("identities")) {
            throw InputError("report " + std::to_string(c + 1) + " is not a foliage check report");
        }
        columns.push_back(rep["manifold"].value("name", "?"));
        for (const auto& row : rep["identities"]) {
            const std::string id = row.value("id", "?");
            if (std::find(row_order.begin(), row_order.end(), id) == row_order.end()) row_order.push_back(id);
            const std::string status = row.value("status", "");
            cells[id][c] = status == "skipped" ? "skipped" : sci(row.value("max_abs", 0.0)) + (status == "fail" ? "*" : "");
        }
    }

    std::ostringstream os;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-20s", "identity");
    os << buf;
    for (const auto& name : columns) {
        std::snprintf(buf, sizeof buf, " %14s", name.c_str());
        os << buf;
    }
    os << '\n';
    for (const auto& id : row_order) {
        std::snprintf(buf, sizeof buf, "%-20s", id.c_str());
        os << buf;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const auto it = cells[id].find(c);
            std::snprintf(buf, sizeof buf, " %14s", it == cells[id].end() ? "-" : it->second.c_str());
            os << buf;
        }
        os << '\n';
    }
    os << "(* = failed its tolerance)\n";
    return os.str();
}

} // namespace foliage
