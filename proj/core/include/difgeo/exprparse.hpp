#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "difgeo/error.hpp"

namespace difgeo {

// ---------------------------------------------------------------------------
// Expression AST.

enum class AstKind { Literal, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };

struct Ast {
    AstKind kind = AstKind::Literal;
    double literal = 0.0;      // Literal
    std::string name;          // Variable / Call
    std::vector<Ast> children; // operands

    bool contains_variable() const;
};

/// The fixed function table.
const std::set<std::string>& function_names();

/// Parse an expression over the declared variable set.
/// Grammar: ^ (right-assoc) > unary minus > * / > + -; parentheses; calls;
/// constants pi and e. Syntax errors carry the byte offset.
Ast parse(const std::string& text, const std::set<std::string>& variables);

/// Render an Ast back to text; parse(print(a)) is structurally identical to a.
std::string print(const Ast& ast);

bool ast_equal(const Ast& a, const Ast& b);

// ---------------------------------------------------------------------------
// Jets: truncated Taylor arithmetic.

/// Value and first three derivatives with respect to one variable.
struct Jet3 {
    double f = 0.0, f1 = 0.0, f2 = 0.0, f3 = 0.0;

    static Jet3 constant(double c) { return {c, 0.0, 0.0, 0.0}; }
    static Jet3 variable(double v) { return {v, 1.0, 0.0, 0.0}; }
};

Jet3 operator+(const Jet3& a, const Jet3& b);
Jet3 operator-(const Jet3& a, const Jet3& b);
Jet3 operator-(const Jet3& a);
Jet3 operator*(const Jet3& a, const Jet3& b);
Jet3 operator/(const Jet3& a, const Jet3& b);

/// Second-order bivariate jet; fuv is symmetric by construction.
struct Jet2x2 {
    double f = 0.0, fu = 0.0, fv = 0.0, fuu = 0.0, fuv = 0.0, fvv = 0.0;

    static Jet2x2 constant(double c) { return {c, 0, 0, 0, 0, 0}; }
    static Jet2x2 var_u(double v) { return {v, 1, 0, 0, 0, 0}; }
    static Jet2x2 var_v(double v) { return {v, 0, 1, 0, 0, 0}; }
};

Jet2x2 operator+(const Jet2x2& a, const Jet2x2& b);
Jet2x2 operator-(const Jet2x2& a, const Jet2x2& b);
Jet2x2 operator-(const Jet2x2& a);
Jet2x2 operator*(const Jet2x2& a, const Jet2x2& b);
Jet2x2 operator/(const Jet2x2& a, const Jet2x2& b);

// ---------------------------------------------------------------------------
// Evaluation.

/// Plain evaluation with a variable environment.
double eval(const Ast& ast, const std::map<std::string, double>& vars);

/// Forward-mode univariate jet evaluation; `var` is the differentiation
/// variable, every other symbol must be a constant. Derivatives are exact
/// (chain rule on jets), never finite differences.
Jet3 eval_jet3(const Ast& ast, const std::string& var, double at);

/// Forward-mode bivariate jet evaluation with respect to (var_u, var_v).
Jet2x2 eval_jet2x2(const Ast& ast, const std::string& var_u, const std::string& var_v,
                   double u, double v);

} // namespace difgeo
