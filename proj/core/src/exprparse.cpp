#include "difgeo/exprparse.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace difgeo {

const std::set<std::string>& function_names() {
    static const std::set<std::string> table = {
        "sin", "cos", "tan", "exp", "ln", "sqrt",
        "sinh", "cosh", "tanh", "atan", "abs"};
    return table;
}

bool Ast::contains_variable() const {
    if (kind == AstKind::Variable) return true;
    for (const auto& c : children)
        if (c.contains_variable()) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Lexer.

namespace {

enum class TokKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    TokKind kind;
    double number = 0.0;
    std::string ident;
    size_t offset = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return cur_; }
    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        cur_.offset = pos_;
        if (pos_ >= text_.size()) {
            cur_.kind = TokKind::End;
            return;
        }
        char c = text_[pos_];
        switch (c) {
            case '+': cur_.kind = TokKind::Plus; ++pos_; return;
            case '-': cur_.kind = TokKind::Minus; ++pos_; return;
            case '*': cur_.kind = TokKind::Star; ++pos_; return;
            case '/': cur_.kind = TokKind::Slash; ++pos_; return;
            case '^': cur_.kind = TokKind::Caret; ++pos_; return;
            case '(': cur_.kind = TokKind::LParen; ++pos_; return;
            case ')': cur_.kind = TokKind::RParen; ++pos_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* start = text_.c_str() + pos_;
            char* end = nullptr;
            double v = std::strtod(start, &end);
            if (end == start)
                throw parse_error("syntax error at byte " + std::to_string(pos_) + ": bad number");
            cur_.kind = TokKind::Number;
            cur_.number = v;
            pos_ += static_cast<size_t>(end - start);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            cur_.kind = TokKind::Ident;
            cur_.ident = text_.substr(start, pos_ - start);
            return;
        }
        throw parse_error("syntax error at byte " + std::to_string(pos_) + ": unexpected character '" +
                          std::string(1, c) + "'");
    }

    const std::string& text_;
    size_t pos_ = 0;
    Token cur_;
};

// Pratt parser. Binding powers: + - (10) < * / (20) < unary minus (25) < ^ (30, right-assoc).
class Parser {
public:
    Parser(const std::string& text, const std::set<std::string>& variables)
        : lex_(text), vars_(variables) {}

    Ast parse_all() {
        Ast e = parse_expr(0);
        if (lex_.peek().kind != TokKind::End)
            throw parse_error("syntax error at byte " + std::to_string(lex_.peek().offset) +
                              ": trailing input");
        return e;
    }

private:
    Ast parse_expr(int min_bp) {
        Ast lhs = parse_prefix();
        while (true) {
            TokKind k = lex_.peek().kind;
            int bp;
            AstKind op;
            switch (k) {
                case TokKind::Plus: bp = 10; op = AstKind::Add; break;
                case TokKind::Minus: bp = 10; op = AstKind::Sub; break;
                case TokKind::Star: bp = 20; op = AstKind::Mul; break;
                case TokKind::Slash: bp = 20; op = AstKind::Div; break;
                case TokKind::Caret: bp = 30; op = AstKind::Pow; break;
                default: return lhs;
            }
            if (bp < min_bp) return lhs;
            lex_.take();
            // ^ is right-associative, everything else left-associative.
            Ast rhs = parse_expr(op == AstKind::Pow ? bp : bp + 1);
            Ast node;
            node.kind = op;
            node.children.push_back(std::move(lhs));
            node.children.push_back(std::move(rhs));
            lhs = std::move(node);
        }
    }

    Ast parse_prefix() {
        Token t = lex_.take();
        switch (t.kind) {
            case TokKind::Minus: {
                Ast node;
                node.kind = AstKind::Neg;
                node.children.push_back(parse_expr(26)); // binds looser than ^
                return node;
            }
            case TokKind::Number: {
                Ast node;
                node.kind = AstKind::Literal;
                node.literal = t.number;
                return node;
            }
            case TokKind::LParen: {
                Ast inner = parse_expr(0);
                expect(TokKind::RParen, ")");
                return inner;
            }
            case TokKind::Ident: {
                if (function_names().count(t.ident)) {
                    expect(TokKind::LParen, "( after function name");
                    Ast node;
                    node.kind = AstKind::Call;
                    node.name = t.ident;
                    node.children.push_back(parse_expr(0));
                    expect(TokKind::RParen, ")");
                    return node;
                }
                if (t.ident == "pi") {
                    Ast node;
                    node.kind = AstKind::Literal;
                    node.literal = M_PI;
                    return node;
                }
                if (t.ident == "e") {
                    Ast node;
                    node.kind = AstKind::Literal;
                    node.literal = M_E;
                    return node;
                }
                if (vars_.count(t.ident)) {
                    Ast node;
                    node.kind = AstKind::Variable;
                    node.name = t.ident;
                    return node;
                }
                throw parse_error("unknown identifier '" + t.ident + "' at byte " +
                                  std::to_string(t.offset));
            }
            default:
                throw parse_error("syntax error at byte " + std::to_string(t.offset) +
                                  ": expected an operand");
        }
    }

    void expect(TokKind k, const char* what) {
        Token t = lex_.take();
        if (t.kind != k)
            throw parse_error("syntax error at byte " + std::to_string(t.offset) + ": expected " +
                              what);
    }

    Lexer lex_;
    const std::set<std::string>& vars_;
};

} // namespace

Ast parse(const std::string& text, const std::set<std::string>& variables) {
    return Parser(text, variables).parse_all();
}

namespace {

int precedence_of(const Ast& a) {
    switch (a.kind) {
        case AstKind::Add:
        case AstKind::Sub: return 10;
        case AstKind::Mul:
        case AstKind::Div: return 20;
        case AstKind::Neg: return 25;
        case AstKind::Pow: return 30;
        default: return 100;
    }
}

void print_rec(const Ast& a, std::ostringstream& os, int parent_prec, bool right_side) {
    int prec = precedence_of(a);
    bool parens = prec < parent_prec || (prec == parent_prec && right_side);
    if (parens) os << '(';
    switch (a.kind) {
        case AstKind::Literal: {
            std::ostringstream num;
            num.precision(17);
            num << a.literal;
            os << num.str();
            break;
        }
        case AstKind::Variable: os << a.name; break;
        case AstKind::Neg:
            os << '-';
            print_rec(a.children[0], os, 26, false);
            break;
        case AstKind::Add:
        case AstKind::Sub:
        case AstKind::Mul:
        case AstKind::Div:
        case AstKind::Pow: {
            const char* op = a.kind == AstKind::Add ? "+"
                           : a.kind == AstKind::Sub ? "-"
                           : a.kind == AstKind::Mul ? "*"
                           : a.kind == AstKind::Div ? "/" : "^";
            // ^ is right-associative: parenthesize the left child at equal precedence.
            bool rassoc = a.kind == AstKind::Pow;
            print_rec(a.children[0], os, prec, rassoc);
            os << op;
            print_rec(a.children[1], os, prec, !rassoc);
            break;
        }
        case AstKind::Call:
            os << a.name << '(';
            print_rec(a.children[0], os, 0, false);
            os << ')';
            break;
    }
    if (parens) os << ')';
}

} // namespace

std::string print(const Ast& ast) {
    std::ostringstream os;
    print_rec(ast, os, 0, false);
    return os.str();
}

bool ast_equal(const Ast& a, const Ast& b) {
    if (a.kind != b.kind || a.name != b.name || a.children.size() != b.children.size())
        return false;
    if (a.kind == AstKind::Literal && a.literal != b.literal) return false;
    for (size_t i = 0; i < a.children.size(); ++i)
        if (!ast_equal(a.children[i], b.children[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Jet arithmetic.

Jet3 operator+(const Jet3& a, const Jet3& b) { return {a.f + b.f, a.f1 + b.f1, a.f2 + b.f2, a.f3 + b.f3}; }
Jet3 operator-(const Jet3& a, const Jet3& b) { return {a.f - b.f, a.f1 - b.f1, a.f2 - b.f2, a.f3 - b.f3}; }
Jet3 operator-(const Jet3& a) { return {-a.f, -a.f1, -a.f2, -a.f3}; }

Jet3 operator*(const Jet3& a, const Jet3& b) {
    return {a.f * b.f,
            a.f1 * b.f + a.f * b.f1,
            a.f2 * b.f + 2.0 * a.f1 * b.f1 + a.f * b.f2,
            a.f3 * b.f + 3.0 * a.f2 * b.f1 + 3.0 * a.f1 * b.f2 + a.f * b.f3};
}

namespace {

// h = g(f) for univariate outer g with derivatives d0..d3 at f.f.
Jet3 compose(const std::array<double, 4>& d, const Jet3& a) {
    Jet3 h;
    h.f = d[0];
    h.f1 = d[1] * a.f1;
    h.f2 = d[2] * a.f1 * a.f1 + d[1] * a.f2;
    h.f3 = d[3] * a.f1 * a.f1 * a.f1 + 3.0 * d[2] * a.f1 * a.f2 + d[1] * a.f3;
    return h;
}

Jet2x2 compose(const std::array<double, 4>& d, const Jet2x2& a) {
    Jet2x2 h;
    h.f = d[0];
    h.fu = d[1] * a.fu;
    h.fv = d[1] * a.fv;
    h.fuu = d[2] * a.fu * a.fu + d[1] * a.fuu;
    h.fuv = d[2] * a.fu * a.fv + d[1] * a.fuv;
    h.fvv = d[2] * a.fv * a.fv + d[1] * a.fvv;
    return h;
}

std::array<double, 4> recip_derivs(double v) {
    if (v == 0.0) throw domain_error("division by zero");
    double iv = 1.0 / v;
    return {iv, -iv * iv, 2.0 * iv * iv * iv, -6.0 * iv * iv * iv * iv};
}

} // namespace

Jet3 operator/(const Jet3& a, const Jet3& b) { return a * compose(recip_derivs(b.f), b); }

Jet2x2 operator+(const Jet2x2& a, const Jet2x2& b) {
    return {a.f + b.f, a.fu + b.fu, a.fv + b.fv, a.fuu + b.fuu, a.fuv + b.fuv, a.fvv + b.fvv};
}
Jet2x2 operator-(const Jet2x2& a, const Jet2x2& b) {
    return {a.f - b.f, a.fu - b.fu, a.fv - b.fv, a.fuu - b.fuu, a.fuv - b.fuv, a.fvv - b.fvv};
}
Jet2x2 operator-(const Jet2x2& a) { return {-a.f, -a.fu, -a.fv, -a.fuu, -a.fuv, -a.fvv}; }

Jet2x2 operator*(const Jet2x2& a, const Jet2x2& b) {
    return {a.f * b.f,
            a.fu * b.f + a.f * b.fu,
            a.fv * b.f + a.f * b.fv,
            a.fuu * b.f + 2.0 * a.fu * b.fu + a.f * b.fuu,
            a.fuv * b.f + a.fu * b.fv + a.fv * b.fu + a.f * b.fuv,
            a.fvv * b.f + 2.0 * a.fv * b.fv + a.f * b.fvv};
}

Jet2x2 operator/(const Jet2x2& a, const Jet2x2& b) { return a * compose(recip_derivs(b.f), b); }

// ---------------------------------------------------------------------------
// Evaluation.

namespace {

// Value and first three derivatives of each table function at v.
// `where` names the offending sub-expression in domain errors.
std::array<double, 4> func_derivs(const std::string& name, double v, const Ast& node) {
    if (name == "sin") return {std::sin(v), std::cos(v), -std::sin(v), -std::cos(v)};
    if (name == "cos") return {std::cos(v), -std::sin(v), -std::cos(v), std::sin(v)};
    if (name == "tan") {
        double t = std::tan(v), s = 1.0 + t * t;
        return {t, s, 2.0 * t * s, (2.0 + 6.0 * t * t) * s};
    }
    if (name == "exp") {
        double e = std::exp(v);
        return {e, e, e, e};
    }
    if (name == "ln") {
        if (v <= 0.0) throw domain_error("ln of nonpositive value in '" + print(node) + "'");
        double iv = 1.0 / v;
        return {std::log(v), iv, -iv * iv, 2.0 * iv * iv * iv};
    }
    if (name == "sqrt") {
        if (v <= 0.0) throw domain_error("sqrt derivative undefined at nonpositive value in '" +
                                         print(node) + "'");
        double r = std::sqrt(v);
        return {r, 0.5 / r, -0.25 / (v * r), 0.375 / (v * v * r)};
    }
    if (name == "sinh") return {std::sinh(v), std::cosh(v), std::sinh(v), std::cosh(v)};
    if (name == "cosh") return {std::cosh(v), std::sinh(v), std::cosh(v), std::sinh(v)};
    if (name == "tanh") {
        double t = std::tanh(v), s = 1.0 - t * t;
        return {t, s, -2.0 * t * s, (6.0 * t * t - 2.0) * s};
    }
    if (name == "atan") {
        double s = 1.0 / (1.0 + v * v);
        return {std::atan(v), s, -2.0 * v * s * s, (6.0 * v * v - 2.0) * s * s * s};
    }
    if (name == "abs") {
        if (v == 0.0)
            throw domain_error("abs is not differentiable at 0 in '" + print(node) + "'");
        return {std::abs(v), v > 0.0 ? 1.0 : -1.0, 0.0, 0.0};
    }
    throw usage_error("unknown function '" + name + "'");
}

bool near_integer(double p, long long& n) {
    double r = std::round(p);
    if (std::abs(p - r) < 1e-12 && std::abs(r) < 1e15) {
        n = static_cast<long long>(r);
        return true;
    }
    return false;
}

template <class T>
T int_pow(T base, long long n) {
    // n >= 1
    T acc = base;
    for (long long i = 1; i < n; ++i) acc = acc * base;
    return acc;
}

template <class T>
struct JetTraits;

template <>
struct JetTraits<Jet3> {
    static Jet3 constant(double c) { return Jet3::constant(c); }
    static double value(const Jet3& a) { return a.f; }
    static Jet3 apply(const std::array<double, 4>& d, const Jet3& a) { return compose(d, a); }
};

template <>
struct JetTraits<Jet2x2> {
    static Jet2x2 constant(double c) { return Jet2x2::constant(c); }
    static double value(const Jet2x2& a) { return a.f; }
    static Jet2x2 apply(const std::array<double, 4>& d, const Jet2x2& a) { return compose(d, a); }
};

template <class T, class VarFn>
T eval_generic(const Ast& a, const VarFn& var) {
    using TR = JetTraits<T>;
    switch (a.kind) {
        case AstKind::Literal: return TR::constant(a.literal);
        case AstKind::Variable: return var(a.name);
        case AstKind::Neg: return -eval_generic<T>(a.children[0], var);
        case AstKind::Add:
            return eval_generic<T>(a.children[0], var) + eval_generic<T>(a.children[1], var);
        case AstKind::Sub:
            return eval_generic<T>(a.children[0], var) - eval_generic<T>(a.children[1], var);
        case AstKind::Mul:
            return eval_generic<T>(a.children[0], var) * eval_generic<T>(a.children[1], var);
        case AstKind::Div: {
            T num = eval_generic<T>(a.children[0], var);
            T den = eval_generic<T>(a.children[1], var);
            if (TR::value(den) == 0.0)
                throw domain_error("division by zero in '" + print(a) + "'");
            return num / den;
        }
        case AstKind::Pow: {
            T base = eval_generic<T>(a.children[0], var);
            const Ast& expo = a.children[1];
            if (!expo.contains_variable()) {
                double p = eval(expo, {});
                long long n;
                if (near_integer(p, n)) {
                    if (n == 0) return TR::constant(1.0);
                    if (n > 0) return int_pow(base, n);
                    if (TR::value(base) == 0.0)
                        throw domain_error("zero raised to a negative power in '" + print(a) + "'");
                    return TR::constant(1.0) / int_pow(base, -n);
                }
                double v = TR::value(base);
                if (v <= 0.0)
                    throw domain_error("nonpositive base with non-integer exponent in '" +
                                       print(a) + "'");
                std::array<double, 4> d = {std::pow(v, p), p * std::pow(v, p - 1.0),
                                           p * (p - 1.0) * std::pow(v, p - 2.0),
                                           p * (p - 1.0) * (p - 2.0) * std::pow(v, p - 3.0)};
                return TR::apply(d, base);
            }
            // Variable exponent: a^b = exp(b * ln a).
            if (TR::value(base) <= 0.0)
                throw domain_error("nonpositive base with variable exponent in '" + print(a) + "'");
            T lnb = TR::apply(func_derivs("ln", TR::value(base), a), base);
            T prod = eval_generic<T>(expo, var) * lnb;
            return TR::apply(func_derivs("exp", TR::value(prod), a), prod);
        }
        case AstKind::Call: {
            T arg = eval_generic<T>(a.children[0], var);
            return TR::apply(func_derivs(a.name, TR::value(arg), a), arg);
        }
    }
    throw usage_error("corrupt Ast");
}

} // namespace

double eval(const Ast& ast, const std::map<std::string, double>& vars) {
    switch (ast.kind) {
        case AstKind::Literal: return ast.literal;
        case AstKind::Variable: {
            auto it = vars.find(ast.name);
            if (it == vars.end())
                throw usage_error("unbound variable '" + ast.name + "'");
            return it->second;
        }
        case AstKind::Neg: return -eval(ast.children[0], vars);
        case AstKind::Add: return eval(ast.children[0], vars) + eval(ast.children[1], vars);
        case AstKind::Sub: return eval(ast.children[0], vars) - eval(ast.children[1], vars);
        case AstKind::Mul: return eval(ast.children[0], vars) * eval(ast.children[1], vars);
        case AstKind::Div: {
            double den = eval(ast.children[1], vars);
            if (den == 0.0) throw domain_error("division by zero in '" + print(ast) + "'");
            return eval(ast.children[0], vars) / den;
        }
        case AstKind::Pow: {
            double b = eval(ast.children[0], vars);
            double p = eval(ast.children[1], vars);
            long long n;
            if (near_integer(p, n)) {
                if (n < 0 && b == 0.0)
                    throw domain_error("zero raised to a negative power in '" + print(ast) + "'");
                return std::pow(b, static_cast<double>(n));
            }
            if (b < 0.0)
                throw domain_error("nonpositive base with non-integer exponent in '" + print(ast) +
                                   "'");
            return std::pow(b, p);
        }
        case AstKind::Call: {
            double v = eval(ast.children[0], vars);
            if (ast.name == "abs") return std::abs(v); // value only; jets reject the kink
            if (ast.name == "ln" && v <= 0.0)
                throw domain_error("ln of nonpositive value in '" + print(ast) + "'");
            if (ast.name == "sqrt") {
                if (v < 0.0) throw domain_error("sqrt of negative value in '" + print(ast) + "'");
                return std::sqrt(v);
            }
            return func_derivs(ast.name, v, ast)[0];
        }
    }
    throw usage_error("corrupt Ast");
}

Jet3 eval_jet3(const Ast& ast, const std::string& var, double at) {
    auto env = [&](const std::string& name) -> Jet3 {
        if (name == var) return Jet3::variable(at);
        throw usage_error("unbound variable '" + name + "' in jet evaluation");
    };
    return eval_generic<Jet3>(ast, env);
}

Jet2x2 eval_jet2x2(const Ast& ast, const std::string& var_u, const std::string& var_v,
                   double u, double v) {
    auto env = [&](const std::string& name) -> Jet2x2 {
        if (name == var_u) return Jet2x2::var_u(u);
        if (name == var_v) return Jet2x2::var_v(v);
        throw usage_error("unbound variable '" + name + "' in jet evaluation");
    };
    return eval_generic<Jet2x2>(ast, env);
}

} // namespace difgeo
