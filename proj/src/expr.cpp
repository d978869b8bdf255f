#include "foliage/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace foliage::expr {

namespace {

constexpr std::array<std::pair<std::string_view, Func>, 5> kFuncs{{
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"exp", Func::Exp},
    {"log", Func::Log},
    {"sqrt", Func::Sqrt},
}};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Variables are x<digits> with a nonzero index.
std::optional<int> variable_index(std::string_view ident)
{
    if (ident.size() < 2 || ident[0] != 'x') return std::nullopt;
    for (std::size_t i = 1; i < ident.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(ident[i]))) return std::nullopt;
    }
    int index = 0;
    auto [ptr, ec] = std::from_chars(ident.data() + 1, ident.data() + ident.size(), index);
    if (ec != std::errc{}) return -1;
    return index;
}

class Parser {
public:
    Parser(std::string_view src, std::optional<int> dim) : src_(src), dim_(dim) {}

    Expr parse_all()
    {
        Expr e = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError("syntax error: " + msg, pos_); }
    [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }

    void skip_ws()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr parse_expr()
    {
        Expr lhs = parse_term();
        for (;;) {
            if (accept('+')) {
                lhs = add(lhs, parse_term());
            } else if (accept('-')) {
                lhs = sub(lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    Expr parse_term()
    {
        Expr lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = mul(lhs, parse_unary());
            } else if (accept('/')) {
                lhs = div(lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    Expr parse_unary()
    {
        if (accept('-')) return neg(parse_unary());
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    Expr parse_power()
    {
        Expr base = parse_primary();
        skip_ws();
        const std::size_t at = pos_;
        if (!accept('^')) return base;
        Expr exponent = parse_unary();
        if (max_variable(exponent) != 0 || !parameters(exponent).empty()) {
            fail_at("exponent must be an integer constant", at);
        }
        double value = 0.0;
        try {
            value = eval(exponent, {});
        } catch (const EvalError&) {
            fail_at("exponent must be an integer constant", at);
        }
        if (!std::isfinite(value) || value != std::trunc(value) || std::fabs(value) > 1024.0) {
            fail_at("exponent must be an integer constant", at);
        }
        return pow(base, static_cast<int>(value));
    }

    Expr parse_primary()
    {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Expr inner = parse_expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (is_ident_start(c)) return parse_identifier();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    Expr parse_number()
    {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
            if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
                pos_ = look;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            }
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
        if (ec != std::errc{} || ptr != src_.data() + pos_) fail_at("syntax error: malformed number", start);
        return lit(value);
    }

    Expr parse_identifier()
    {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
        const std::string_view ident = src_.substr(start, pos_ - start);

        skip_ws();
        const bool is_call = pos_ < src_.size() && src_[pos_] == '(';
        if (is_call) {
            const auto f = func_from_name(ident);
            if (!f) fail_at("unknown function '" + std::string(ident) + "'", start);
            ++pos_;
            Expr arg = parse_expr();
            if (!accept(')')) fail("expected ')'");
            return call(*f, arg);
        }
        if (func_from_name(ident)) fail("expected '(' after '" + std::string(ident) + "'");
        if (ident == "pi") return lit(std::numbers::pi);
        if (const auto index = variable_index(ident)) {
            if (*index < 1) fail_at("variable index must be at least 1", start);
            if (dim_ && *index > *dim_) {
                fail_at("variable index " + std::to_string(*index) + " out of range for dimension "
                            + std::to_string(*dim_),
                        start);
            }
            return var(*index);
        }
        return param(std::string(ident));
    }

    std::string_view src_;
    std::optional<int> dim_;
    std::size_t pos_ = 0;
};

int precedence(const Expr& e)
{
    return std::visit(
        [](const auto& n) -> int {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Binary>) {
                return (n.op == BinaryOp::Add || n.op == BinaryOp::Sub) ? 1 : 2;
            } else if constexpr (std::is_same_v<T, Negate>) {
                return 3;
            } else if constexpr (std::is_same_v<T, Power>) {
                return 4;
            } else {
                return 5;
            }
        },
        e.node().v);
}

void render(const Expr& e, std::string& out);

void render_wrapped(const Expr& e, bool parens, std::string& out)
{
    if (parens) out += '(';
    render(e, out);
    if (parens) out += ')';
}

void render(const Expr& e, std::string& out)
{
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Literal>) {
                std::array<char, 64> buf{};
                auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), n.value);
                out.append(buf.data(), ptr);
            } else if constexpr (std::is_same_v<T, Variable>) {
                out += 'x';
                out += std::to_string(n.index);
            } else if constexpr (std::is_same_v<T, Parameter>) {
                out += n.name;
            } else if constexpr (std::is_same_v<T, Negate>) {
                out += '-';
                render_wrapped(n.operand, precedence(n.operand) < 3, out);
            } else if constexpr (std::is_same_v<T, Binary>) {
                const int p = precedence(e);
                render_wrapped(n.lhs, precedence(n.lhs) < p, out);
                switch (n.op) {
                case BinaryOp::Add: out += '+'; break;
                case BinaryOp::Sub: out += '-'; break;
                case BinaryOp::Mul: out += '*'; break;
                case BinaryOp::Div: out += '/'; break;
                }
                render_wrapped(n.rhs, precedence(n.rhs) <= p, out);
            } else if constexpr (std::is_same_v<T, Power>) {
                render_wrapped(n.base, precedence(n.base) < 5, out);
                out += '^';
                out += std::to_string(n.exponent);
            } else if constexpr (std::is_same_v<T, Call>) {
                out += func_name(n.func);
                out += '(';
                render(n.arg, out);
                out += ')';
            }
        },
        e.node().v);
}

// Shared evaluation over double and Jet2.
template <class T>
struct Evaluator {
    std::span<const double> point;
    const ParamMap& params;

    T constant(double v) const { return T(v); }

    T variable(int index) const
    {
        const auto k = static_cast<std::size_t>(index - 1);
        if constexpr (std::is_same_v<T, double>) {
            return point[k];
        } else {
            return Jet2::variable(point[k], index - 1, static_cast<int>(point.size()));
        }
    }

    static double value_of(const T& t)
    {
        if constexpr (std::is_same_v<T, double>) {
            return t;
        } else {
            return t.value();
        }
    }

    T run(const Expr& e) const
    {
        return std::visit(
            [&](const auto& n) -> T {
                using N = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<N, Literal>) {
                    return constant(n.value);
                } else if constexpr (std::is_same_v<N, Variable>) {
                    if (n.index < 1 || static_cast<std::size_t>(n.index) > point.size()) {
                        throw EvalError("variable out of range for dimension " + std::to_string(point.size()),
                                        to_string(e));
                    }
                    return variable(n.index);
                } else if constexpr (std::is_same_v<N, Parameter>) {
                    const auto it = params.find(n.name);
                    if (it == params.end()) throw EvalError("unbound parameter", to_string(e));
                    return constant(it->second);
                } else if constexpr (std::is_same_v<N, Negate>) {
                    return -run(n.operand);
                } else if constexpr (std::is_same_v<N, Binary>) {
                    T a = run(n.lhs);
                    T b = run(n.rhs);
                    switch (n.op) {
                    case BinaryOp::Add: return a + b;
                    case BinaryOp::Sub: return a - b;
                    case BinaryOp::Mul: return a * b;
                    case BinaryOp::Div:
                        if (value_of(b) == 0.0) throw EvalError("division by zero", to_string(e));
                        return a / b;
                    }
                    return a;
                } else if constexpr (std::is_same_v<N, Power>) {
                    T b = run(n.base);
                    if (n.exponent < 0 && value_of(b) == 0.0) {
                        throw EvalError("negative power of zero", to_string(e));
                    }
                    if constexpr (std::is_same_v<T, double>) {
                        return ipow(b, n.exponent);
                    } else {
                        return foliage::pow(b, n.exponent);
                    }
                } else if constexpr (std::is_same_v<N, Call>) {
                    T a = run(n.arg);
                    using std::cos;
                    using std::exp;
                    using std::log;
                    using std::sin;
                    using std::sqrt;
                    switch (n.func) {
                    case Func::Sin: return sin(a);
                    case Func::Cos: return cos(a);
                    case Func::Exp: return exp(a);
                    case Func::Log:
                        if (!(value_of(a) > 0.0)) throw EvalError("log of non-positive value", to_string(e));
                        return log(a);
                    case Func::Sqrt:
                        if (!(value_of(a) > 0.0)) throw EvalError("sqrt of non-positive value", to_string(e));
                        return sqrt(a);
                    }
                    return a;
                }
            },
            e.node().v);
    }
};

} // namespace

std::string_view func_name(Func f)
{
    for (const auto& [name, func] : kFuncs) {
        if (func == f) return name;
    }
    return "?";
}

std::optional<Func> func_from_name(std::string_view name)
{
    for (const auto& [n, func] : kFuncs) {
        if (n == name) return func;
    }
    return std::nullopt;
}

Expr::Expr() : Expr(Node{Literal{0.0}}) {}
Expr::Expr(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}

bool operator==(const Expr& a, const Expr& b)
{
    if (a.node_ == b.node_) return true;
    const auto& x = a.node().v;
    const auto& y = b.node().v;
    if (x.index() != y.index()) return false;
    return std::visit(
        [&](const auto& n) -> bool {
            using N = std::decay_t<decltype(n)>;
            const auto& m = std::get<N>(y);
            if constexpr (std::is_same_v<N, Literal>) {
                return n.value == m.value;
            } else if constexpr (std::is_same_v<N, Variable>) {
                return n.index == m.index;
            } else if constexpr (std::is_same_v<N, Parameter>) {
                return n.name == m.name;
            } else if constexpr (std::is_same_v<N, Negate>) {
                return n.operand == m.operand;
            } else if constexpr (std::is_same_v<N, Binary>) {
                return n.op == m.op && n.lhs == m.lhs && n.rhs == m.rhs;
            } else if constexpr (std::is_same_v<N, Power>) {
                return n.exponent == m.exponent && n.base == m.base;
            } else {
                return n.func == m.func && n.arg == m.arg;
            }
        },
        x);
}

Expr lit(double v) { return Expr(Node{Literal{v}}); }
Expr var(int index) { return Expr(Node{Variable{index}}); }
Expr param(std::string name) { return Expr(Node{Parameter{std::move(name)}}); }
Expr neg(Expr e) { return Expr(Node{Negate{std::move(e)}}); }
Expr add(Expr a, Expr b) { return Expr(Node{Binary{BinaryOp::Add, std::move(a), std::move(b)}}); }
Expr sub(Expr a, Expr b) { return Expr(Node{Binary{BinaryOp::Sub, std::move(a), std::move(b)}}); }
Expr mul(Expr a, Expr b) { return Expr(Node{Binary{BinaryOp::Mul, std::move(a), std::move(b)}}); }
Expr div(Expr a, Expr b) { return Expr(Node{Binary{BinaryOp::Div, std::move(a), std::move(b)}}); }
Expr pow(Expr base, int exponent) { return Expr(Node{Power{std::move(base), exponent}}); }
Expr call(Func f, Expr arg) { return Expr(Node{Call{f, std::move(arg)}}); }

Expr parse(std::string_view src, std::optional<int> dim) { return Parser(src, dim).parse_all(); }

std::string to_string(const Expr& e)
{
    std::string out;
    render(e, out);
    return out;
}

int max_variable(const Expr& e)
{
    return std::visit(
        [](const auto& n) -> int {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Variable>) {
                return n.index;
            } else if constexpr (std::is_same_v<N, Negate>) {
                return max_variable(n.operand);
            } else if constexpr (std::is_same_v<N, Binary>) {
                return std::max(max_variable(n.lhs), max_variable(n.rhs));
            } else if constexpr (std::is_same_v<N, Power>) {
                return max_variable(n.base);
            } else if constexpr (std::is_same_v<N, Call>) {
                return max_variable(n.arg);
            } else {
                return 0;
            }
        },
        e.node().v);
}

std::set<std::string> parameters(const Expr& e)
{
    std::set<std::string> out;
    std::visit(
        [&](const auto& n) {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Parameter>) {
                out.insert(n.name);
            } else if constexpr (std::is_same_v<N, Negate>) {
                out.merge(parameters(n.operand));
            } else if constexpr (std::is_same_v<N, Binary>) {
                out.merge(parameters(n.lhs));
                out.merge(parameters(n.rhs));
            } else if constexpr (std::is_same_v<N, Power>) {
                out.merge(parameters(n.base));
            } else if constexpr (std::is_same_v<N, Call>) {
                out.merge(parameters(n.arg));
            }
        },
        e.node().v);
    return out;
}

std::set<int> variables(const Expr& e)
{
    std::set<int> out;
    std::visit(
        [&](const auto& n) {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Variable>) {
                out.insert(n.index);
            } else if constexpr (std::is_same_v<N, Negate>) {
                out.merge(variables(n.operand));
            } else if constexpr (std::is_same_v<N, Binary>) {
                out.merge(variables(n.lhs));
                out.merge(variables(n.rhs));
            } else if constexpr (std::is_same_v<N, Power>) {
                out.merge(variables(n.base));
            } else if constexpr (std::is_same_v<N, Call>) {
                out.merge(variables(n.arg));
            }
        },
        e.node().v);
    return out;
}

Jet2 eval_jet2(const Expr& e, std::span<const double> point, const ParamMap& params)
{
    if (point.size() > static_cast<std::size_t>(kMaxDim)) {
        throw EvalError("point dimension exceeds " + std::to_string(kMaxDim), to_string(e));
    }
    return Evaluator<Jet2>{point, params}.run(e);
}

double eval(const Expr& e, std::span<const double> point, const ParamMap& params)
{
    return Evaluator<double>{point, params}.run(e);
}

} // namespace foliage::expr
