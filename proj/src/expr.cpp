#include "orderfour/expr.hpp"

#include "orderfour/errors.hpp"

#include <cctype>
#include <utility>

namespace orderfour {

namespace {

bool is_digit(char c) {
    return c >= '0' && c <= '9';
}
bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
    return is_ident_start(c) || is_digit(c);
}

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    const std::size_t n = source.size();
    while (i < n) {
        const char c = source[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        switch (c) {
            case '+': tokens.push_back({TokenKind::Plus, "+", start}); ++i; continue;
            case '-': tokens.push_back({TokenKind::Minus, "-", start}); ++i; continue;
            case '*': tokens.push_back({TokenKind::Star, "*", start}); ++i; continue;
            case '/': tokens.push_back({TokenKind::Slash, "/", start}); ++i; continue;
            case '^': tokens.push_back({TokenKind::Caret, "^", start}); ++i; continue;
            case '(': tokens.push_back({TokenKind::LParen, "(", start}); ++i; continue;
            case ')': tokens.push_back({TokenKind::RParen, ")", start}); ++i; continue;
            case ',': tokens.push_back({TokenKind::Comma, ",", start}); ++i; continue;
            default: break;
        }
        if (is_digit(c)) {
            // digits [ '.' digits ] [ e|E [+|-] digits ]
            while (i < n && is_digit(source[i]))
                ++i;
            if (i < n && source[i] == '.') {
                std::size_t j = i + 1;
                if (j < n && is_digit(source[j])) {
                    i = j;
                    while (i < n && is_digit(source[i]))
                        ++i;
                }
            }
            if (i < n && (source[i] == 'e' || source[i] == 'E')) {
                // only part of the number when a complete exponent follows
                std::size_t j = i + 1;
                if (j < n && (source[j] == '+' || source[j] == '-'))
                    ++j;
                if (j < n && is_digit(source[j])) {
                    i = j;
                    while (i < n && is_digit(source[i]))
                        ++i;
                }
            }
            tokens.push_back({TokenKind::Number, std::string(source.substr(start, i - start)), start});
            continue;
        }
        if (is_ident_start(c)) {
            while (i < n && is_ident_char(source[i]))
                ++i;
            tokens.push_back(
                {TokenKind::Identifier, std::string(source.substr(start, i - start)), start});
            continue;
        }
        throw LexError(start, std::string("invalid character '") + c + "'");
    }
    return tokens;
}

namespace {

ExprPtr make_node(Expr e) {
    return std::make_shared<const Expr>(std::move(e));
}

class Parser {
  public:
    explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {
        end_position_ =
            tokens.empty() ? 0 : tokens.back().position + tokens.back().text.size();
    }

    ExprPtr parse_all() {
        ExprPtr e = parse_expr();
        if (pos_ < tokens_.size())
            throw ParseError(tokens_[pos_].position, "end of input",
                             "'" + tokens_[pos_].text + "'");
        return e;
    }

  private:
    const std::vector<Token>& tokens_;
    std::size_t pos_ = 0;
    std::size_t end_position_ = 0;

    bool at_end() const { return pos_ >= tokens_.size(); }
    const Token& peek() const { return tokens_[pos_]; }
    bool match(TokenKind k) {
        if (!at_end() && peek().kind == k) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& expected) const {
        if (at_end())
            throw ParseError(end_position_, expected, "end of input");
        throw ParseError(peek().position, expected, "'" + peek().text + "'");
    }

    ExprPtr parse_expr() {
        ExprPtr left = parse_term();
        while (!at_end() && (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus)) {
            const Token op = peek();
            ++pos_;
            ExprPtr right = parse_term();
            left = make_node({op.kind == TokenKind::Plus ? Expr::Node::Add : Expr::Node::Sub,
                              "", Expr::Func::Exp, left, right, op.position});
        }
        return left;
    }

    ExprPtr parse_term() {
        ExprPtr left = parse_unary();
        while (!at_end() && (peek().kind == TokenKind::Star || peek().kind == TokenKind::Slash)) {
            const Token op = peek();
            ++pos_;
            ExprPtr right = parse_unary();
            left = make_node({op.kind == TokenKind::Star ? Expr::Node::Mul : Expr::Node::Div,
                              "", Expr::Func::Exp, left, right, op.position});
        }
        return left;
    }

    ExprPtr parse_unary() {
        if (!at_end() && peek().kind == TokenKind::Minus) {
            const Token op = peek();
            ++pos_;
            ExprPtr child = parse_unary();
            return make_node({Expr::Node::Neg, "", Expr::Func::Exp, child, nullptr, op.position});
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (!at_end() && peek().kind == TokenKind::Caret) {
            const Token op = peek();
            ++pos_;
            ExprPtr exponent = parse_unary();  // right-associative
            return make_node(
                {Expr::Node::Pow, "", Expr::Func::Exp, base, exponent, op.position});
        }
        return base;
    }

    ExprPtr parse_atom() {
        if (at_end())
            fail("a number, 'x', a constant, a function call, or '('");
        const Token& tok = peek();
        if (tok.kind == TokenKind::Number) {
            ++pos_;
            return make_node({Expr::Node::Number, tok.text, Expr::Func::Exp, nullptr, nullptr,
                              tok.position});
        }
        if (tok.kind == TokenKind::LParen) {
            ++pos_;
            ExprPtr inner = parse_expr();
            if (!match(TokenKind::RParen))
                fail("')'");
            return inner;
        }
        if (tok.kind == TokenKind::Identifier) {
            ++pos_;
            if (tok.text == "x")
                return make_node({Expr::Node::Variable, "", Expr::Func::Exp, nullptr, nullptr,
                                  tok.position});
            if (tok.text == "pi")
                return make_node({Expr::Node::Pi, "", Expr::Func::Exp, nullptr, nullptr,
                                  tok.position});
            if (tok.text == "e")
                return make_node({Expr::Node::E, "", Expr::Func::Exp, nullptr, nullptr,
                                  tok.position});
            Expr::Func func;
            if (tok.text == "exp")
                func = Expr::Func::Exp;
            else if (tok.text == "ln")
                func = Expr::Func::Ln;
            else if (tok.text == "sin")
                func = Expr::Func::Sin;
            else if (tok.text == "cos")
                func = Expr::Func::Cos;
            else if (tok.text == "sqrt")
                func = Expr::Func::Sqrt;
            else
                throw UnknownIdentifier(tok.position, tok.text);
            if (!match(TokenKind::LParen))
                fail("'(' after function name");
            ExprPtr arg = parse_expr();
            if (!match(TokenKind::RParen))
                fail("')'");
            return make_node({Expr::Node::Call, "", func, arg, nullptr, tok.position});
        }
        fail("a number, 'x', a constant, a function call, or '('");
    }
};

}  // namespace

ExprPtr parse(const std::vector<Token>& tokens) {
    return Parser(tokens).parse_all();
}

ExprPtr parse(std::string_view source) {
    return parse(tokenize(source));
}

namespace {

// Precedence for printing: add/sub 1, mul/div 2, neg 3, pow 4, atoms 5.
int precedence(const Expr& e) {
    switch (e.node) {
        case Expr::Node::Add:
        case Expr::Node::Sub: return 1;
        case Expr::Node::Mul:
        case Expr::Node::Div: return 2;
        case Expr::Node::Neg: return 3;
        case Expr::Node::Pow: return 4;
        default: return 5;
    }
}

const char* func_name(Expr::Func f) {
    switch (f) {
        case Expr::Func::Exp: return "exp";
        case Expr::Func::Ln: return "ln";
        case Expr::Func::Sin: return "sin";
        case Expr::Func::Cos: return "cos";
        case Expr::Func::Sqrt: return "sqrt";
    }
    return "?";
}

void format_into(const Expr& e, std::string& out);

void format_child(const Expr& child, int min_prec, std::string& out) {
    const bool parens = precedence(child) < min_prec;
    if (parens)
        out += '(';
    format_into(child, out);
    if (parens)
        out += ')';
}

void format_into(const Expr& e, std::string& out) {
    switch (e.node) {
        case Expr::Node::Number: out += e.literal; return;
        case Expr::Node::Variable: out += 'x'; return;
        case Expr::Node::Pi: out += "pi"; return;
        case Expr::Node::E: out += 'e'; return;
        case Expr::Node::Neg:
            out += '-';
            format_child(*e.left, 3, out);
            return;
        case Expr::Node::Add:
        case Expr::Node::Sub:
            format_child(*e.left, 1, out);
            out += e.node == Expr::Node::Add ? " + " : " - ";
            format_child(*e.right, 2, out);
            return;
        case Expr::Node::Mul:
        case Expr::Node::Div:
            format_child(*e.left, 2, out);
            out += e.node == Expr::Node::Mul ? "*" : "/";
            format_child(*e.right, 3, out);
            return;
        case Expr::Node::Pow:
            format_child(*e.left, 5, out);
            out += '^';
            format_child(*e.right, 3, out);
            return;
        case Expr::Node::Call:
            out += func_name(e.func);
            out += '(';
            format_into(*e.left, out);
            out += ')';
            return;
    }
}

}  // namespace

std::string format(const Expr& e) {
    std::string out;
    format_into(e, out);
    return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.node != b.node)
        return false;
    switch (a.node) {
        case Expr::Node::Number: return a.literal == b.literal;
        case Expr::Node::Variable:
        case Expr::Node::Pi:
        case Expr::Node::E: return true;
        case Expr::Node::Neg: return structurally_equal(*a.left, *b.left);
        case Expr::Node::Call:
            return a.func == b.func && structurally_equal(*a.left, *b.left);
        default:
            return structurally_equal(*a.left, *b.left) &&
                   structurally_equal(*a.right, *b.right);
    }
}

namespace {

template <typename S>
struct EvalOps;

template <>
struct EvalOps<Real> {
    static Real from_literal(const std::string& text) { return make_real(text); }
    static Real pi() { return pi_value(); }
    static Real euler() { return e_value(); }
    static Real variable(const Real& x) { return x; }
    static const Real& value(const Real& v) { return v; }
};

template <>
struct EvalOps<Jet4> {
    static Jet4 from_literal(const std::string& text) {
        return Jet4::constant(make_real(text));
    }
    static Jet4 pi() { return Jet4::constant(pi_value()); }
    static Jet4 euler() { return Jet4::constant(e_value()); }
    static Jet4 variable(const Real& x) { return Jet4::variable(x); }
    static const Real& value(const Jet4& v) { return v.value(); }
};

bool integral(const Real& w) {
    return floor(w) == w;
}

template <typename S>
S eval_node(const Expr& e, const Real& x) {
    using Ops = EvalOps<S>;
    switch (e.node) {
        case Expr::Node::Number: return Ops::from_literal(e.literal);
        case Expr::Node::Variable: return Ops::variable(x);
        case Expr::Node::Pi: return Ops::pi();
        case Expr::Node::E: return Ops::euler();
        case Expr::Node::Neg: return -eval_node<S>(*e.left, x);
        case Expr::Node::Add: return eval_node<S>(*e.left, x) + eval_node<S>(*e.right, x);
        case Expr::Node::Sub: return eval_node<S>(*e.left, x) - eval_node<S>(*e.right, x);
        case Expr::Node::Mul: return eval_node<S>(*e.left, x) * eval_node<S>(*e.right, x);
        case Expr::Node::Div: {
            S num = eval_node<S>(*e.left, x);
            S den = eval_node<S>(*e.right, x);
            if (Ops::value(den) == 0)
                throw EvalDomainError(e.position, "division by zero");
            return num / den;
        }
        case Expr::Node::Pow: {
            S base = eval_node<S>(*e.left, x);
            S exponent = eval_node<S>(*e.right, x);
            const Real& b = Ops::value(base);
            const Real& w = Ops::value(exponent);
            if (b < 0 && !integral(w))
                throw EvalDomainError(e.position, "negative base with non-integer exponent");
            if (b == 0 && w < 0)
                throw EvalDomainError(e.position, "zero base with negative exponent");
            try {
                return pow(base, exponent);
            } catch (const DomainErrorJet& err) {
                throw EvalDomainError(e.position, err.what());
            }
        }
        case Expr::Node::Call: {
            S arg = eval_node<S>(*e.left, x);
            const Real& v = Ops::value(arg);
            switch (e.func) {
                case Expr::Func::Exp: return exp(arg);
                case Expr::Func::Ln:
                    if (v <= 0)
                        throw EvalDomainError(e.position, "ln of a non-positive value");
                    return log(arg);
                case Expr::Func::Sin: return sin(arg);
                case Expr::Func::Cos: return cos(arg);
                case Expr::Func::Sqrt:
                    if (v <= 0)
                        throw EvalDomainError(e.position, "sqrt of a non-positive value");
                    return sqrt(arg);
            }
            throw EvalDomainError(e.position, "unknown function");
        }
    }
    throw EvalDomainError(e.position, "malformed expression node");
}

}  // namespace

Real eval_real(const Expr& e, const Real& x) {
    return eval_node<Real>(e, x);
}

Jet4 eval_jet(const Expr& e, const Real& x) {
    return eval_node<Jet4>(e, x);
}

}  // namespace orderfour
