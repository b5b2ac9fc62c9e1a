#include "jetconn/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <unordered_map>
#include <unordered_set>

namespace jetconn {

bool Coord::in_range(const Dims& d) const {
    switch (kind) {
        case CoordKind::Temporal: return a >= 0 && a < d.p;
        case CoordKind::Spatial: return i >= 0 && i < d.n;
        case CoordKind::Fiber: return i >= 0 && i < d.n && a >= 0 && a < d.p;
    }
    return false;
}

std::string Coord::name() const {
    switch (kind) {
        case CoordKind::Temporal: return "t" + std::to_string(a + 1);
        case CoordKind::Spatial: return "x" + std::to_string(i + 1);
        case CoordKind::Fiber:
            return "v" + std::to_string(i + 1) + "_" + std::to_string(a + 1);
    }
    return "?";
}

Point Point::zeros(Dims d) {
    Point q;
    q.dims = d;
    q.t.assign(static_cast<std::size_t>(d.p), 0.0);
    q.x.assign(static_cast<std::size_t>(d.n), 0.0);
    q.v.assign(static_cast<std::size_t>(d.n) * d.p, 0.0);
    return q;
}

bool is_unary_function(ExprOp op) {
    switch (op) {
        case ExprOp::Sin:
        case ExprOp::Cos:
        case ExprOp::Tan:
        case ExprOp::Exp:
        case ExprOp::Log:
        case ExprOp::Sqrt:
        case ExprOp::Sinh:
        case ExprOp::Cosh: return true;
        default: return false;
    }
}

const char* function_name(ExprOp op) {
    switch (op) {
        case ExprOp::Sin: return "sin";
        case ExprOp::Cos: return "cos";
        case ExprOp::Tan: return "tan";
        case ExprOp::Exp: return "exp";
        case ExprOp::Log: return "log";
        case ExprOp::Sqrt: return "sqrt";
        case ExprOp::Sinh: return "sinh";
        case ExprOp::Cosh: return "cosh";
        default: return "?";
    }
}

namespace {

const ExprNodePtr& zero_node() {
    static const ExprNodePtr z = std::make_shared<const ExprNode>();
    return z;
}

const ExprNodePtr& one_node() {
    static const ExprNodePtr o = [] {
        ExprNode n;
        n.op = ExprOp::Constant;
        n.value = 1.0;
        return std::make_shared<const ExprNode>(n);
    }();
    return o;
}

}  // namespace

Expr::Expr() : node_(zero_node()) {}

Expr Expr::make(ExprNode n) { return Expr(std::make_shared<const ExprNode>(std::move(n))); }

Expr Expr::constant(double v) {
    if (v == 0.0) return Expr(zero_node());
    if (v == 1.0) return Expr(one_node());
    ExprNode n;
    n.op = ExprOp::Constant;
    n.value = v;
    return make(std::move(n));
}

Expr Expr::variable(Coord c) {
    ExprNode n;
    n.op = ExprOp::Variable;
    n.coord = c;
    return make(std::move(n));
}

std::optional<double> Expr::constant_value() const {
    if (node_->op == ExprOp::Constant) return node_->value;
    return std::nullopt;
}

bool Expr::is_zero() const { return node_->op == ExprOp::Constant && node_->value == 0.0; }
bool Expr::is_one() const { return node_->op == ExprOp::Constant && node_->value == 1.0; }

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_constant() && b.is_constant())
        return Expr::constant(a.node().value + b.node().value);
    ExprNode n;
    n.op = ExprOp::Add;
    n.lhs = a.node_;
    n.rhs = b.node_;
    return Expr::make(std::move(n));
}

Expr operator-(const Expr& a, const Expr& b) {
    if (b.is_zero()) return a;
    if (a.is_constant() && b.is_constant())
        return Expr::constant(a.node().value - b.node().value);
    if (a.node_ == b.node_) return Expr();
    ExprNode n;
    n.op = ExprOp::Sub;
    n.lhs = a.node_;
    n.rhs = b.node_;
    return Expr::make(std::move(n));
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return Expr();
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    if (a.is_constant() && b.is_constant())
        return Expr::constant(a.node().value * b.node().value);
    ExprNode n;
    n.op = ExprOp::Mul;
    n.lhs = a.node_;
    n.rhs = b.node_;
    return Expr::make(std::move(n));
}

Expr operator/(const Expr& a, const Expr& b) {
    if (a.is_zero()) return Expr();
    if (b.is_one()) return a;
    if (a.is_constant() && b.is_constant() && b.node().value != 0.0)
        return Expr::constant(a.node().value / b.node().value);
    ExprNode n;
    n.op = ExprOp::Div;
    n.lhs = a.node_;
    n.rhs = b.node_;
    return Expr::make(std::move(n));
}

Expr operator-(const Expr& a) { return Expr::constant(0.0) - a; }

Expr pow(const Expr& base, int exponent) {
    if (exponent == 0) return Expr::constant(1.0);
    if (exponent == 1) return base;
    if (base.is_constant()) {
        double v = std::pow(base.node().value, exponent);
        if (std::isfinite(v)) return Expr::constant(v);
    }
    ExprNode n;
    n.op = ExprOp::Pow;
    n.exponent = exponent;
    n.lhs = base.ptr();
    return Expr::make(std::move(n));
}

Expr Expr::unary(ExprOp op, const Expr& e, double (*fold)(double)) {
    if (e.is_constant()) {
        double v = fold(e.node().value);
        if (std::isfinite(v)) return Expr::constant(v);
    }
    ExprNode n;
    n.op = op;
    n.lhs = e.ptr();
    return make(std::move(n));
}

Expr sin(const Expr& e) { return Expr::unary(ExprOp::Sin, e, [](double x) { return std::sin(x); }); }
Expr cos(const Expr& e) { return Expr::unary(ExprOp::Cos, e, [](double x) { return std::cos(x); }); }
Expr tan(const Expr& e) { return Expr::unary(ExprOp::Tan, e, [](double x) { return std::tan(x); }); }
Expr exp(const Expr& e) { return Expr::unary(ExprOp::Exp, e, [](double x) { return std::exp(x); }); }
Expr log(const Expr& e) { return Expr::unary(ExprOp::Log, e, [](double x) { return std::log(x); }); }
Expr sqrt(const Expr& e) { return Expr::unary(ExprOp::Sqrt, e, [](double x) { return std::sqrt(x); }); }
Expr sinh(const Expr& e) { return Expr::unary(ExprOp::Sinh, e, [](double x) { return std::sinh(x); }); }
Expr cosh(const Expr& e) { return Expr::unary(ExprOp::Cosh, e, [](double x) { return std::cosh(x); }); }

namespace {

bool nodes_equivalent(const ExprNode* a, const ExprNode* b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->op != b->op) return false;
    switch (a->op) {
        case ExprOp::Constant: return a->value == b->value;
        case ExprOp::Variable: return a->coord == b->coord;
        case ExprOp::Pow:
            if (a->exponent != b->exponent) return false;
            break;
        default: break;
    }
    if (static_cast<bool>(a->lhs) != static_cast<bool>(b->lhs)) return false;
    if (static_cast<bool>(a->rhs) != static_cast<bool>(b->rhs)) return false;
    if (a->lhs && !nodes_equivalent(a->lhs.get(), b->lhs.get())) return false;
    if (a->rhs && !nodes_equivalent(a->rhs.get(), b->rhs.get())) return false;
    return true;
}

}  // namespace

bool equivalent(const Expr& a, const Expr& b) { return nodes_equivalent(a.raw(), b.raw()); }

void visit_variables(const Expr& e, const std::function<void(const Coord&)>& fn) {
    std::unordered_set<const ExprNode*> seen;
    std::vector<const ExprNode*> stack{e.raw()};
    while (!stack.empty()) {
        const ExprNode* n = stack.back();
        stack.pop_back();
        if (!seen.insert(n).second) continue;
        if (n->op == ExprOp::Variable) fn(n->coord);
        if (n->lhs) stack.push_back(n->lhs.get());
        if (n->rhs) stack.push_back(n->rhs.get());
    }
}

// ---------------------------------------------------------------------------
// differentiation

namespace {

class Differentiator {
public:
    explicit Differentiator(const Coord& c) : coord_(c) {}

    Expr run(const ExprNodePtr& n) {
        auto it = memo_.find(n.get());
        if (it != memo_.end()) return it->second;
        Expr d = derive(n);
        memo_.emplace(n.get(), d);
        return d;
    }

private:
    Expr derive(const ExprNodePtr& n) {
        const Expr self = Expr::adopt(n);
        switch (n->op) {
            case ExprOp::Constant: return Expr();
            case ExprOp::Variable:
                return n->coord == coord_ ? Expr::constant(1.0) : Expr();
            case ExprOp::Add: return run(n->lhs) + run(n->rhs);
            case ExprOp::Sub: return run(n->lhs) - run(n->rhs);
            case ExprOp::Mul:
                return run(n->lhs) * Expr::adopt(n->rhs) + Expr::adopt(n->lhs) * run(n->rhs);
            case ExprOp::Div: {
                Expr num =
                    run(n->lhs) * Expr::adopt(n->rhs) - Expr::adopt(n->lhs) * run(n->rhs);
                return num / pow(Expr::adopt(n->rhs), 2);
            }
            case ExprOp::Pow:
                return Expr::constant(n->exponent) *
                       pow(Expr::adopt(n->lhs), n->exponent - 1) * run(n->lhs);
            case ExprOp::Sin: return cos(Expr::adopt(n->lhs)) * run(n->lhs);
            case ExprOp::Cos: return -(sin(Expr::adopt(n->lhs)) * run(n->lhs));
            case ExprOp::Tan: return run(n->lhs) / pow(cos(Expr::adopt(n->lhs)), 2);
            case ExprOp::Exp: return self * run(n->lhs);
            case ExprOp::Log: return run(n->lhs) / Expr::adopt(n->lhs);
            case ExprOp::Sqrt: return run(n->lhs) / (Expr::constant(2.0) * self);
            case ExprOp::Sinh: return cosh(Expr::adopt(n->lhs)) * run(n->lhs);
            case ExprOp::Cosh: return sinh(Expr::adopt(n->lhs)) * run(n->lhs);
        }
        return Expr();
    }

    Coord coord_;
    std::unordered_map<const ExprNode*, Expr> memo_;
};

}  // namespace

Expr differentiate(const Expr& e, const Coord& c) {
    Differentiator d(c);
    return d.run(e.ptr());
}

// ---------------------------------------------------------------------------
// evaluation

namespace {

std::string describe_subtree(const ExprNode* n);

}  // namespace

struct Evaluator::Impl {
    const Point* q;
    std::unordered_map<const ExprNode*, double> memo;
    // memo keys are raw pointers, so every evaluated root is kept alive for
    // the evaluator's lifetime; otherwise freed nodes could alias new ones
    std::vector<ExprNodePtr> roots;

    double eval(const ExprNode* n) {
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
        double v = compute(n);
        memo.emplace(n, v);
        return v;
    }

    double compute(const ExprNode* n) {
        switch (n->op) {
            case ExprOp::Constant: return n->value;
            case ExprOp::Variable: return lookup(n->coord);
            case ExprOp::Add: return eval(n->lhs.get()) + eval(n->rhs.get());
            case ExprOp::Sub: return eval(n->lhs.get()) - eval(n->rhs.get());
            case ExprOp::Mul: return eval(n->lhs.get()) * eval(n->rhs.get());
            case ExprOp::Div: {
                double den = eval(n->rhs.get());
                if (den == 0.0)
                    throw EvalError("division by zero in " + describe_subtree(n));
                return eval(n->lhs.get()) / den;
            }
            case ExprOp::Pow: {
                double base = eval(n->lhs.get());
                if (base == 0.0 && n->exponent < 0)
                    throw EvalError("zero base with negative exponent in " +
                                    describe_subtree(n));
                return std::pow(base, n->exponent);
            }
            case ExprOp::Sin: return std::sin(eval(n->lhs.get()));
            case ExprOp::Cos: return std::cos(eval(n->lhs.get()));
            case ExprOp::Tan: return std::tan(eval(n->lhs.get()));
            case ExprOp::Exp: return std::exp(eval(n->lhs.get()));
            case ExprOp::Log: {
                double arg = eval(n->lhs.get());
                if (arg <= 0.0)
                    throw EvalError("log of non-positive value in " + describe_subtree(n));
                return std::log(arg);
            }
            case ExprOp::Sqrt: {
                double arg = eval(n->lhs.get());
                if (arg < 0.0)
                    throw EvalError("sqrt of negative value in " + describe_subtree(n));
                return std::sqrt(arg);
            }
            case ExprOp::Sinh: return std::sinh(eval(n->lhs.get()));
            case ExprOp::Cosh: return std::cosh(eval(n->lhs.get()));
        }
        throw EvalError("corrupt expression node");
    }

    double lookup(const Coord& c) const {
        if (!c.in_range(q->dims))
            throw EvalError("coordinate " + c.name() + " outside point dimensions");
        switch (c.kind) {
            case CoordKind::Temporal: return q->t[static_cast<std::size_t>(c.a)];
            case CoordKind::Spatial: return q->x[static_cast<std::size_t>(c.i)];
            case CoordKind::Fiber: return q->fiber(c.i, c.a);
        }
        return 0.0;
    }
};

Evaluator::Evaluator(const Point& q) : impl_(std::make_unique<Impl>()) { impl_->q = &q; }
Evaluator::~Evaluator() = default;

double Evaluator::value(const Expr& e) {
    impl_->roots.push_back(e.ptr());
    return impl_->eval(e.raw());
}

double evaluate(const Expr& e, const Point& q) {
    Evaluator ev(q);
    return ev.value(e);
}

// ---------------------------------------------------------------------------
// printing

namespace {

std::string format_double(double v) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

// precedence levels: 1 add/sub, 2 mul/div, 3 unary minus, 4 pow, 5 atoms
int precedence(const ExprNode* n) {
    switch (n->op) {
        case ExprOp::Add:
        case ExprOp::Sub: return 1;
        case ExprOp::Mul:
        case ExprOp::Div: return 2;
        case ExprOp::Pow: return 4;
        case ExprOp::Constant: return n->value < 0.0 ? 3 : 5;
        default: return 5;
    }
}

void print_node(const ExprNode* n, std::string& out, int parent_prec);

void print_child(const ExprNode* n, std::string& out, int min_prec) {
    if (precedence(n) < min_prec) {
        out += '(';
        print_node(n, out, 0);
        out += ')';
    } else {
        print_node(n, out, 0);
    }
}

void print_node(const ExprNode* n, std::string& out, int) {
    switch (n->op) {
        case ExprOp::Constant: out += format_double(n->value); return;
        case ExprOp::Variable: out += n->coord.name(); return;
        case ExprOp::Add:
            print_child(n->lhs.get(), out, 1);
            out += " + ";
            print_child(n->rhs.get(), out, 2);
            return;
        case ExprOp::Sub:
            if (n->lhs->op == ExprOp::Constant && n->lhs->value == 0.0) {
                out += '-';
                print_child(n->rhs.get(), out, 4);
                return;
            }
            print_child(n->lhs.get(), out, 1);
            out += " - ";
            print_child(n->rhs.get(), out, 2);
            return;
        case ExprOp::Mul:
            print_child(n->lhs.get(), out, 2);
            out += "*";
            print_child(n->rhs.get(), out, 3);
            return;
        case ExprOp::Div:
            print_child(n->lhs.get(), out, 2);
            out += "/";
            print_child(n->rhs.get(), out, 3);
            return;
        case ExprOp::Pow:
            print_child(n->lhs.get(), out, 5);
            out += '^';
            if (n->exponent < 0) {
                out += '(';
                out += std::to_string(n->exponent);
                out += ')';
            } else {
                out += std::to_string(n->exponent);
            }
            return;
        default:
            out += function_name(n->op);
            out += '(';
            print_node(n->lhs.get(), out, 0);
            out += ')';
            return;
    }
}

std::string describe_subtree(const ExprNode* n) {
    std::string s = "'";
    print_node(n, s, 0);
    s += "'";
    if (s.size() > 120) s = s.substr(0, 117) + "...'";
    return s;
}

}  // namespace

std::string Expr::to_string() const {
    std::string out;
    print_node(node_.get(), out, 0);
    return out;
}

// ---------------------------------------------------------------------------
// parsing

namespace {

class Parser {
public:
    Parser(const std::string& text, const Dims& dims) : text_(text), dims_(dims) {}

    Expr parse() {
        Expr e = expression();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Expr expression() {
        Expr e = term();
        for (;;) {
            if (consume('+'))
                e = e + term();
            else if (consume('-'))
                e = e - term();
            else
                return e;
        }
    }

    Expr term() {
        Expr e = unary();
        for (;;) {
            if (consume('*'))
                e = e * unary();
            else if (consume('/'))
                e = e / unary();
            else
                return e;
        }
    }

    Expr unary() {
        if (consume('-')) return Expr::constant(0.0) - unary();
        if (consume('+')) return unary();
        return power();
    }

    Expr power() {
        Expr base = primary();
        if (!consume('^')) return base;
        std::size_t at = pos_;
        Expr e = unary();
        auto v = e.constant_value();
        if (!v || *v != std::nearbyint(*v) || std::abs(*v) > 1e6) {
            throw ParseError("exponent must be an integer constant", at);
        }
        return pow(base, static_cast<int>(*v));
    }

    Expr primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expression();
            if (!consume(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail(std::string("unexpected character '") + c + "'");
    }

    Expr number() {
        const char* start = text_.c_str() + pos_;
        char* end = nullptr;
        double v = std::strtod(start, &end);
        if (end == start) fail("malformed number");
        pos_ += static_cast<std::size_t>(end - start);
        return Expr::constant(v);
    }

    Expr identifier() {
        std::size_t at = pos_;
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name = text_.substr(start, pos_ - start);

        if (peek() == '(') {
            ExprOp fn;
            if (name == "sin") fn = ExprOp::Sin;
            else if (name == "cos") fn = ExprOp::Cos;
            else if (name == "tan") fn = ExprOp::Tan;
            else if (name == "exp") fn = ExprOp::Exp;
            else if (name == "log") fn = ExprOp::Log;
            else if (name == "sqrt") fn = ExprOp::Sqrt;
            else if (name == "sinh") fn = ExprOp::Sinh;
            else if (name == "cosh") fn = ExprOp::Cosh;
            else throw ParseError("unknown function '" + name + "'", at);
            consume('(');
            Expr arg = expression();
            if (!consume(')')) fail("expected ')' after function argument");
            switch (fn) {
                case ExprOp::Sin: return sin(arg);
                case ExprOp::Cos: return cos(arg);
                case ExprOp::Tan: return tan(arg);
                case ExprOp::Exp: return exp(arg);
                case ExprOp::Log: return log(arg);
                case ExprOp::Sqrt: return sqrt(arg);
                case ExprOp::Sinh: return sinh(arg);
                case ExprOp::Cosh: return cosh(arg);
                default: break;
            }
        }

        Coord c{};
        if (!classify_variable(name, c))
            throw ParseError("unknown identifier '" + name + "'", at);
        if (!c.in_range(dims_))
            throw ParseError("index out of range for '" + name + "' (p=" +
                                 std::to_string(dims_.p) + ", n=" + std::to_string(dims_.n) +
                                 ")",
                             at);
        return Expr::variable(c);
    }

    static bool parse_index(const std::string& s, std::size_t from, std::size_t to, int& out) {
        if (from >= to) return false;
        int v = 0;
        for (std::size_t k = from; k < to; ++k) {
            if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
            v = v * 10 + (s[k] - '0');
            if (v > 1000) return false;
        }
        out = v;
        return v >= 1;
    }

    static bool classify_variable(const std::string& name, Coord& out) {
        if (name.size() < 2) return false;
        int idx = 0;
        switch (name[0]) {
            case 't':
                if (!parse_index(name, 1, name.size(), idx)) return false;
                out = Coord::temporal(idx - 1);
                return true;
            case 'x':
                if (!parse_index(name, 1, name.size(), idx)) return false;
                out = Coord::spatial(idx - 1);
                return true;
            case 'v': {
                std::size_t us = name.find('_');
                if (us == std::string::npos) return false;
                int spatial = 0, temporal = 0;
                if (!parse_index(name, 1, us, spatial)) return false;
                if (!parse_index(name, us + 1, name.size(), temporal)) return false;
                out = Coord::fiber(spatial - 1, temporal - 1);
                return true;
            }
            default: return false;
        }
    }

    const std::string& text_;
    Dims dims_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(const std::string& text, const Dims& dims) {
    Parser p(text, dims);
    return p.parse();
}

}  // namespace jetconn
