#ifndef ORDERFOUR_EXPR_HPP
#define ORDERFOUR_EXPR_HPP

#include "orderfour/jet.hpp"
#include "orderfour/real.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace orderfour {

enum class TokenKind {
    Number,
    Identifier,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
};

struct Token {
    TokenKind kind;
    std::string text;       // source slice
    std::size_t position;   // byte offset
};

// Splits source into tokens; whitespace is skipped. Numbers are unsigned
// decimal literals with optional fraction and optional exponent (2.87,
// 10.28, 1e-3). Throws LexError on any character outside the alphabet.
std::vector<Token> tokenize(std::string_view source);

// Immutable AST of a univariate real function of "x".
struct Expr {
    enum class Node { Number, Variable, Pi, E, Neg, Add, Sub, Mul, Div, Pow, Call };
    enum class Func { Exp, Ln, Sin, Cos, Sqrt };

    Node node;
    std::string literal;                // Node::Number: original source text
    Func func = Func::Exp;              // Node::Call
    std::shared_ptr<const Expr> left;   // unary child / left operand / call argument
    std::shared_ptr<const Expr> right;  // binary right operand
    std::size_t position = 0;           // source offset, for diagnostics
};

using ExprPtr = std::shared_ptr<const Expr>;

// Recursive-descent parse with the grammar
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?
//   atom   := number | 'x' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
// so pow binds tightest and is right-associative, and -x^2 is -(x^2).
ExprPtr parse(const std::vector<Token>& tokens);
ExprPtr parse(std::string_view source);

// Emits text that reparses to a structurally identical tree.
std::string format(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

// Value of the function at x. Throws EvalDomainError (with the offending
// node's source offset) on ln/sqrt of a non-positive value, division by
// zero, or an invalid pow base.
Real eval_real(const Expr& e, const Real& x);

// One pass yielding f(x) and f'(x)..f''''(x) as Taylor coefficients.
// Coefficient 0 equals eval_real(e, x) exactly (same operations, same order).
Jet4 eval_jet(const Expr& e, const Real& x);

}  // namespace orderfour

#endif
