#pragma once

// Closed-form expression language for metric components and vector fields.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | '+' unary | power
//   power   := primary ('^' unary)?          exponent must fold to an integer constant
//   primary := number | 'x'<k> | name | func '(' expr ')' | '(' expr ')' | 'pi'
//   func    := sin | cos | exp | log | sqrt
//
// Variables x1..xm are 1-based chart coordinates. Any other identifier is a
// named parameter bound at evaluation time. See docs/grammar.md.

#include "foliage/jet.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace foliage::expr {

using ParamMap = std::map<std::string, double, std::less<>>;

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : std::runtime_error(message + " at offset " + std::to_string(offset)), offset_(offset)
    {
    }
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Raised during evaluation: log/sqrt of a non-positive value, division by
/// zero, unbound parameter, variable out of range.
class EvalError : public std::runtime_error {
public:
    EvalError(const std::string& message, std::string subexpression)
        : std::runtime_error(message + " in '" + subexpression + "'"), subexpression_(std::move(subexpression))
    {
    }
    const std::string& subexpression() const { return subexpression_; }

private:
    std::string subexpression_;
};

enum class Func { Sin, Cos, Exp, Log, Sqrt };
enum class BinaryOp { Add, Sub, Mul, Div };

std::string_view func_name(Func f);
std::optional<Func> func_from_name(std::string_view name);

struct Node;

/// Immutable expression handle. Copies share the tree.
class Expr {
public:
    Expr();  // literal 0
    explicit Expr(Node node);

    const Node& node() const { return *node_; }

    friend bool operator==(const Expr& a, const Expr& b);

private:
    std::shared_ptr<const Node> node_;
};

struct Literal {
    double value;
};
struct Variable {
    int index;  // 1-based
};
struct Parameter {
    std::string name;
};
struct Negate {
    Expr operand;
};
struct Binary {
    BinaryOp op;
    Expr lhs;
    Expr rhs;
};
struct Power {
    Expr base;
    int exponent;
};
struct Call {
    Func func;
    Expr arg;
};

struct Node {
    std::variant<Literal, Variable, Parameter, Negate, Binary, Power, Call> v;
};

bool operator==(const Expr& a, const Expr& b);

// Builders.
Expr lit(double v);
Expr var(int index);
Expr param(std::string name);
Expr neg(Expr e);
Expr add(Expr a, Expr b);
Expr sub(Expr a, Expr b);
Expr mul(Expr a, Expr b);
Expr div(Expr a, Expr b);
Expr pow(Expr base, int exponent);
Expr call(Func f, Expr arg);

/// Parses `src`. When `dim` is given, variable indices above it are rejected
/// at parse time; otherwise the check is deferred to evaluation.
Expr parse(std::string_view src, std::optional<int> dim = std::nullopt);

/// Minimal-parenthesis rendering that re-parses to an identical tree.
std::string to_string(const Expr& e);

/// Largest variable index referenced (0 if none).
int max_variable(const Expr& e);
std::set<std::string> parameters(const Expr& e);
/// 1-based indices of the coordinates referenced by e.
std::set<int> variables(const Expr& e);

/// Value and exact first and second derivatives at `point`.
Jet2 eval_jet2(const Expr& e, std::span<const double> point, const ParamMap& params = {});

/// Value only.
double eval(const Expr& e, std::span<const double> point, const ParamMap& params = {});

} // namespace foliage::expr
