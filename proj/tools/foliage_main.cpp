// foliage: command-line front end.
//
//   foliage list [filter]
//   foliage check --manifold <name> | --manifest <file> [options]
//   foliage report <report.json>...
//
// Exit codes: 0 all checks pass, 1 an identity or sanity check failed,
// 2 bad input (flags, manifest, parameters, geometry of the declaration).

#include "foliage/catalog.hpp"
#include "foliage/manifest.hpp"
#include "foliage/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

using namespace foliage;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> split_csv(const std::string& s)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = s.find(',', start);
        out.push_back(trim(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

expr::ParamMap parse_params(const std::string& text)
{
    expr::ParamMap out;
    if (trim(text).empty()) return out;
    for (const auto& item : split_csv(text)) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw InputError("--params expects k=v pairs, got '" + item + "'");
        const std::string key = trim(item.substr(0, eq));
        const std::string value = trim(item.substr(eq + 1));
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (key.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
            throw InputError("bad parameter '" + item + "'");
        }
        out[key] = v;
    }
    return out;
}

std::vector<IdentityId> parse_identities(const std::string& text)
{
    std::string lowered = trim(text);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lowered == "all") return {kAllIdentities.begin(), kAllIdentities.end()};
    std::vector<IdentityId> chosen;
    for (auto name : split_csv(text)) {
        std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::toupper(c); });
        const auto id = identity_from_name(name);
        if (!id) throw InputError("unknown identity '" + name + "'");
        if (std::find(chosen.begin(), chosen.end(), *id) == chosen.end()) chosen.push_back(*id);
    }
    // Report rows follow the canonical order.
    std::vector<IdentityId> ordered;
    for (IdentityId id : kAllIdentities) {
        if (std::find(chosen.begin(), chosen.end(), id) != chosen.end()) ordered.push_back(id);
    }
    return ordered;
}

std::string format_params(const expr::ParamMap& params)
{
    std::string out;
    for (const auto& [k, v] : params) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%s=%g", k.c_str(), v);
        out += (out.empty() ? "" : ",") + std::string(buf);
    }
    return out;
}

int cmd_list(const std::string& filter)
{
    std::printf("%-14s %2s %2s %2s  %-12s %-7s %s\n", "name", "m", "n", "p", "params", "oracle", "description");
    for (const auto& e : catalog()) {
        if (!filter.empty() && e.name.find(filter) == std::string::npos) continue;
        std::printf("%-14s %2d %2d %2d  %-12s %-7s %s\n", e.name.c_str(), e.m, e.n, e.p, format_params(e.defaults).c_str(),
                    e.has_oracle ? "yes" : "no", e.description.c_str());
    }
    return kExitPass;
}

struct CheckFlags {
    std::string manifold;
    std::string manifest;
    std::string params;
    std::size_t samples = 200;
    std::uint64_t seed = 42;
    int grid = 64;
    std::string identities = "all";
    double tol = 1e-8;
    std::string report;
    std::string format = "json";
};

int cmd_check(const CheckFlags& f)
{
    if (f.manifold.empty() == f.manifest.empty()) throw InputError("give exactly one of --manifold or --manifest");

    const expr::ParamMap params = parse_params(f.params);
    ManifoldSpec spec;
    std::string source = "catalog";
    if (!f.manifold.empty()) {
        spec = build_manifold(f.manifold, params);
    } else {
        spec = load_manifest(f.manifest);
        source = f.manifest;
        for (const auto& [k, v] : params) {
            if (!spec.params.contains(k)) throw InputError("manifest has no parameter '" + k + "'");
            spec.params[k] = v;
        }
        validate(spec);
    }

    CheckOptions options;
    options.samples = f.samples;
    options.seed = f.seed;
    options.grid = f.grid;
    options.identities = parse_identities(f.identities);
    options.tolerance = f.tol;
    if (!(f.tol >= 0.0)) throw InputError("--tol must be non-negative");

    const ResidualReport report = run_check(spec, options, source);
    const std::string json = report.to_json().dump(2) + "\n";
    if (!f.report.empty()) {
        std::ofstream out(f.report, std::ios::binary);
        if (!out) throw InputError("cannot write report to " + f.report);
        out << json;
    }
    if (f.format == "json") {
        std::cout << json;
    } else {
        std::cout << report.to_text();
    }
    return report.pass ? kExitPass : kExitFail;
}

int cmd_report(const std::vector<std::string>& paths)
{
    std::vector<nlohmann::ordered_json> reports;
    for (const auto& path : paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw InputError("cannot open " + path);
        try {
            reports.push_back(nlohmann::ordered_json::parse(in));
        } catch (const nlohmann::json::exception& e) {
            throw InputError(path + ": " + e.what());
        }
    }
    std::cout << merge_reports(reports);
    return kExitPass;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Numerical verification of identities for pairs of orthogonal foliations"};
    app.require_subcommand(1);

    std::string filter;
    auto* list = app.add_subcommand("list", "List the built-in manifold catalog");
    list->add_option("filter", filter, "Substring filter on names");

    CheckFlags flags;
    auto* check = app.add_subcommand("check", "Run the identity checks on one manifold");
    auto* by_name = check->add_option("--manifold", flags.manifold, "Catalog name");
    auto* by_file = check->add_option("--manifest", flags.manifest, "Manifest file");
    by_name->excludes(by_file);
    check->add_option("--params", flags.params, "Parameter overrides k=v,...");
    check->add_option("--samples", flags.samples, "Random sample points")->check(CLI::PositiveNumber);
    check->add_option("--seed", flags.seed, "PRNG seed");
    check->add_option("--grid", flags.grid, "Quadrature points per axis")->check(CLI::Range(8, 4096));
    check->add_option("--identities", flags.identities, "Comma-separated identity ids or 'all'");
    check->add_option("--tol", flags.tol, "Absolute residual tolerance");
    check->add_option("--report", flags.report, "Write the JSON report to this path");
    check->add_option("--format", flags.format, "Stdout format")->check(CLI::IsMember({"json", "text"}));

    std::vector<std::string> paths;
    auto* report = app.add_subcommand("report", "Merge JSON reports into a comparison table");
    report->add_option("paths", paths, "Report files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitInput;
    }

    try {
        if (*list) return cmd_list(filter);
        if (*check) return cmd_check(flags);
        return cmd_report(paths);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const expr::EvalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const expr::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
}
