#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jetconn {

/// Dimensions of the base manifolds: p temporal coordinates t^a,
/// n spatial coordinates x^i, and n*p fiber coordinates x^i_a.
struct Dims {
    int p = 1;
    int n = 1;

    friend bool operator==(const Dims&, const Dims&) = default;
};

enum class CoordKind : unsigned char { Temporal, Spatial, Fiber };

/// A jet coordinate. Indices are 0-based in memory; the textual names
/// (t1, x2, v1_2, ...) are 1-based.
struct Coord {
    CoordKind kind = CoordKind::Temporal;
    int i = 0;  // spatial index (Spatial, Fiber)
    int a = 0;  // temporal index (Temporal, Fiber)

    static Coord temporal(int a) { return {CoordKind::Temporal, 0, a}; }
    static Coord spatial(int i) { return {CoordKind::Spatial, i, 0}; }
    static Coord fiber(int i, int a) { return {CoordKind::Fiber, i, a}; }

    bool in_range(const Dims& d) const;
    std::string name() const;

    friend bool operator==(const Coord&, const Coord&) = default;
};

/// A point of the jet space: values for every coordinate.
struct Point {
    Dims dims;
    std::vector<double> t;  // size p
    std::vector<double> x;  // size n
    std::vector<double> v;  // size n*p, spatial-major: v[i*p + a]

    static Point zeros(Dims d);

    double fiber(int i, int a) const { return v[static_cast<std::size_t>(i) * dims.p + a]; }
    double& fiber(int i, int a) { return v[static_cast<std::size_t>(i) * dims.p + a]; }
};

enum class ExprOp : unsigned char {
    Constant,
    Variable,
    Add,
    Sub,
    Mul,
    Div,
    Pow,  // integer exponent
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
    Sinh,
    Cosh,
};

bool is_unary_function(ExprOp op);
const char* function_name(ExprOp op);

struct ExprNode;
using ExprNodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    ExprOp op = ExprOp::Constant;
    double value = 0.0;  // Constant
    Coord coord;         // Variable
    int exponent = 0;    // Pow
    ExprNodePtr lhs;
    ExprNodePtr rhs;
};

/// Immutable scalar expression on the jet space. Value type; copies share
/// the underlying node graph. Default-constructed expressions are zero.
///
/// Construction goes through folding operators: 0+e, e*1, 0*e, constant
/// subtrees and friends collapse on the spot. No other simplification is
/// attempted; identity checking downstream is numeric.
class Expr {
public:
    Expr();  // constant 0
    static Expr constant(double v);
    static Expr variable(Coord c);
    /// Re-wraps an existing node; shares, never copies.
    static Expr adopt(ExprNodePtr n) { return Expr(std::move(n)); }

    const ExprNode& node() const { return *node_; }
    const ExprNode* raw() const { return node_.get(); }
    ExprNodePtr ptr() const { return node_; }

    bool is_constant() const { return node_->op == ExprOp::Constant; }
    std::optional<double> constant_value() const;
    bool is_zero() const;
    bool is_one() const;

    std::string to_string() const;

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a);

    Expr& operator+=(const Expr& o) { return *this = *this + o; }
    Expr& operator-=(const Expr& o) { return *this = *this - o; }
    Expr& operator*=(const Expr& o) { return *this = *this * o; }
    Expr& operator/=(const Expr& o) { return *this = *this / o; }

private:
    explicit Expr(ExprNodePtr n) : node_(std::move(n)) {}
    static Expr make(ExprNode n);
    static Expr unary(ExprOp op, const Expr& e, double (*fold)(double));

    friend Expr pow(const Expr& base, int exponent);
    friend Expr sin(const Expr& e);
    friend Expr cos(const Expr& e);
    friend Expr tan(const Expr& e);
    friend Expr exp(const Expr& e);
    friend Expr log(const Expr& e);
    friend Expr sqrt(const Expr& e);
    friend Expr sinh(const Expr& e);
    friend Expr cosh(const Expr& e);

    ExprNodePtr node_;
};

Expr pow(const Expr& base, int exponent);
Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr tan(const Expr& e);
Expr exp(const Expr& e);
Expr log(const Expr& e);
Expr sqrt(const Expr& e);
Expr sinh(const Expr& e);
Expr cosh(const Expr& e);

/// Deep structural equality (same shape, same constants, same coords).
bool equivalent(const Expr& a, const Expr& b);

/// Calls fn for every Variable node reachable from e (each node once).
void visit_variables(const Expr& e, const std::function<void(const Coord&)>& fn);

/// Exact partial derivative with respect to a jet coordinate. All jet
/// coordinates are independent: d(x^i_a)/d(x^i) = 0.
Expr differentiate(const Expr& e, const Coord& c);

struct EvalError : std::runtime_error {
    explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Evaluates expressions at a fixed point, memoizing per node so shared
/// subgraphs are computed once. Not thread-safe; make one per thread.
class Evaluator {
public:
    explicit Evaluator(const Point& q);
    ~Evaluator();
    Evaluator(const Evaluator&) = delete;
    Evaluator& operator=(const Evaluator&) = delete;

    double value(const Expr& e);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

double evaluate(const Expr& e, const Point& q);

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

/// Parses the infix grammar: + - * / ^ with the usual precedence,
/// parentheses, single-argument function calls, and the variables
/// t1..tp, x1..xn, v{i}_{a}. Exponents must fold to integer constants.
Expr parse_expr(const std::string& text, const Dims& dims);

}  // namespace jetconn
