#include "foliage/manifest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace foliage {

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_on(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

class ManifestParser {
public:
    ManifestParser(std::string_view text, std::string origin) : text_(text), origin_(std::move(origin)) {}

    ManifoldSpec run()
    {
        std::istringstream is{std::string(text_)};
        std::string raw;
        while (std::getline(is, raw)) {
            ++line_;
            const auto hash = raw.find('#');
            const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (content.empty()) continue;
            if (content.front() == '[') {
                section(content);
            } else {
                entry(content);
            }
        }
        line_ = 0;
        return finish();
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw InputError(origin_ + (line_ > 0 ? ":" + std::to_string(line_) : std::string()) + ": " + msg);
    }

    expr::Expr parse_expr(const std::string& src, std::optional<int> dim)
    {
        try {
            return expr::parse(src, dim);
        } catch (const expr::ParseError& e) {
            fail(e.what());
        }
    }

    double constant(const std::string& src)
    {
        const expr::Expr e = parse_expr(src, 0);
        if (!expr::parameters(e).empty()) fail("'" + src + "' must be a numeric constant");
        double v = 0.0;
        try {
            v = expr::eval(e, {});
        } catch (const expr::EvalError& err) {
            fail(err.what());
        }
        if (!std::isfinite(v)) fail("'" + src + "' is not finite");
        return v;
    }

    int index(const std::string& tok)
    {
        int v = 0;
        try {
            std::size_t used = 0;
            v = std::stoi(tok, &used);
            if (used != tok.size()) fail("bad index '" + tok + "'");
        } catch (const std::logic_error&) {
            fail("bad index '" + tok + "'");
        }
        if (m_ == 0) fail("dims must be declared before indices");
        if (v < 1 || v > m_) fail("index " + tok + " out of range 1.." + std::to_string(m_));
        return v - 1;
    }

    void section(const std::string& content)
    {
        if (content == "[params]" || content == "[metric]" || content == "[foliation]") {
            current_ = content.substr(1, content.size() - 2);
            if (!seen_sections_.insert(current_).second) fail("duplicate section " + content);
            if (current_ != "params" && m_ == 0) fail("dims must be declared before " + content);
            return;
        }
        fail("unknown section " + content);
    }

    void entry(const std::string& content)
    {
        const auto eq = content.find('=');
        if (eq == std::string::npos) fail("expected 'key = value'");
        const std::string key = trim(std::string_view(content).substr(0, eq));
        const std::string value = trim(std::string_view(content).substr(eq + 1));
        if (value.empty()) fail("missing value for '" + key + "'");

        if (current_.empty()) {
            header(key, value);
        } else if (current_ == "params") {
            if (key.empty() || !std::all_of(key.begin(), key.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; })
                || std::isdigit(static_cast<unsigned char>(key[0]))) {
                fail("bad parameter name '" + key + "'");
            }
            if (spec_.params.contains(key)) fail("duplicate parameter '" + key + "'");
            spec_.params[key] = constant(value);
        } else if (current_ == "metric") {
            metric(key, value);
        } else {
            foliation(key, value);
        }
    }

    void header(const std::string& key, const std::string& value)
    {
        if (!seen_keys_.insert(key).second) fail("duplicate key '" + key + "'");
        if (key == "name") {
            spec_.name = value;
        } else if (key == "dims") {
            const double m = constant(value);
            if (m != std::trunc(m) || m < 2 || m > kMaxDim) fail("dims must be an integer in [2, " + std::to_string(kMaxDim) + "]");
            m_ = static_cast<int>(m);
        } else if (key == "box") {
            box_line_ = line_;
            for (const auto& part : split_on(value, ',')) spec_.box.push_back(constant(part));
        } else if (key == "oracle") {
            spec_.oracle = value;
        } else {
            fail("unknown key '" + key + "'");
        }
    }

    void metric(const std::string& key, const std::string& value)
    {
        std::istringstream is(key);
        std::string g, i, j, extra;
        is >> g >> i >> j;
        if (g != "g" || i.empty() || j.empty() || (is >> extra)) fail("expected 'g <i> <j> = <expr>'");
        int a = index(i);
        int b = index(j);
        if (a > b) std::swap(a, b);
        if (!metric_.emplace(std::pair{a, b}, parse_expr(value, m_)).second) {
            fail("duplicate metric entry g " + std::to_string(a + 1) + " " + std::to_string(b + 1));
        }
    }

    void foliation(const std::string& key, const std::string& value)
    {
        if (key == "split") {
            if (split_ || !span_.fields.empty()) fail("foliation already declared");
            const auto bar = value.find('|');
            if (bar == std::string::npos) fail("split needs 'F coords | F-perp coords'");
            CoordinateSplit s;
            auto read = [&](const std::string& part, std::vector<int>& out) {
                std::istringstream is(part);
                std::string tok;
                while (is >> tok) out.push_back(index(tok));
            };
            read(value.substr(0, bar), s.f_coords);
            read(value.substr(bar + 1), s.perp_coords);
            split_ = s;
        } else if (key == "span") {
            if (split_) fail("foliation already declared");
            std::vector<expr::Expr> field;
            for (const auto& part : split_on(value, ',')) {
                if (part.empty()) fail("empty component in span");
                field.push_back(parse_expr(part, m_));
            }
            if (static_cast<int>(field.size()) != m_) fail("span needs " + std::to_string(m_) + " components");
            span_.fields.push_back(std::move(field));
        } else {
            fail("unknown foliation key '" + key + "'");
        }
    }

    ManifoldSpec finish()
    {
        if (spec_.name.empty()) fail("missing 'name'");
        if (m_ == 0) fail("missing 'dims'");
        if (spec_.box.empty()) fail("missing 'box'");
        if (static_cast<int>(spec_.box.size()) != m_) {
            line_ = box_line_;
            fail("box lists " + std::to_string(spec_.box.size()) + " periods for dims " + std::to_string(m_));
        }
        spec_.m = m_;
        spec_.metric.assign(static_cast<std::size_t>(m_ * m_), expr::parse("0"));
        for (int a = 0; a < m_; ++a) {
            if (!metric_.contains({a, a})) fail("missing diagonal metric entry g " + std::to_string(a + 1) + " " + std::to_string(a + 1));
        }
        for (const auto& [ab, e] : metric_) {
            spec_.metric[static_cast<std::size_t>(ab.first * m_ + ab.second)] = e;
            spec_.metric[static_cast<std::size_t>(ab.second * m_ + ab.first)] = e;
        }
        if (split_) {
            spec_.n = static_cast<int>(split_->f_coords.size());
            spec_.foliation = *split_;
        } else if (!span_.fields.empty()) {
            spec_.n = static_cast<int>(span_.fields.size());
            spec_.foliation = span_;
        } else {
            fail("missing [foliation] declaration");
        }
        spec_.p = m_ - spec_.n;
        try {
            validate(spec_);
        } catch (const InputError& e) {
            fail(e.what());
        }
        return spec_;
    }

    std::string_view text_;
    std::string origin_;
    int line_ = 0;
    int box_line_ = 0;
    int m_ = 0;
    std::string current_;
    std::set<std::string> seen_sections_;
    std::set<std::string> seen_keys_;
    std::map<std::pair<int, int>, expr::Expr> metric_;
    std::optional<CoordinateSplit> split_;
    SpanningFields span_;
    ManifoldSpec spec_;
};

bool same_exprs(const std::vector<expr::Expr>& a, const std::vector<expr::Expr>& b)
{
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

} // namespace

ManifoldSpec parse_manifest(std::string_view text, const std::string& origin)
{
    return ManifestParser(text, origin).run();
}

ManifoldSpec load_manifest(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open manifest " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return parse_manifest(os.str(), path.string());
}

bool same_spec(const ManifoldSpec& a, const ManifoldSpec& b)
{
    if (a.name != b.name || a.m != b.m || a.n != b.n || a.p != b.p || a.box != b.box || a.params != b.params
        || a.oracle != b.oracle || !same_exprs(a.metric, b.metric) || a.foliation.index() != b.foliation.index()) {
        return false;
    }
    if (const auto* sa = std::get_if<CoordinateSplit>(&a.foliation)) {
        const auto& sb = std::get<CoordinateSplit>(b.foliation);
        return sa->f_coords == sb.f_coords && sa->perp_coords == sb.perp_coords;
    }
    const auto& fa = std::get<SpanningFields>(a.foliation).fields;
    const auto& fb = std::get<SpanningFields>(b.foliation).fields;
    if (fa.size() != fb.size()) return false;
    for (std::size_t k = 0; k < fa.size(); ++k) {
        if (!same_exprs(fa[k], fb[k])) return false;
    }
    return true;
}

} // namespace foliage
