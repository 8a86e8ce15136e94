#include "berge/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>

#include "berge/extreal.hpp"

namespace berge {

Expr Expr::constant(double v) {
    Expr e;
    e.kind = Kind::Constant;
    e.value = v;
    return e;
}

Expr Expr::variable(Axis axis, std::size_t index) {
    Expr e;
    e.kind = Kind::Variable;
    e.axis = axis;
    e.index = index;
    return e;
}

Expr Expr::unary(UnaryOp op, Expr operand) {
    Expr e;
    e.kind = Kind::Unary;
    e.uop = op;
    e.children.push_back(std::move(operand));
    return e;
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
    Expr e;
    e.kind = Kind::Binary;
    e.bop = op;
    e.children.push_back(std::move(lhs));
    e.children.push_back(std::move(rhs));
    return e;
}

namespace {

struct Token {
    enum class Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };
    Kind kind;
    std::size_t pos;
    std::string text;
    double number = 0.0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
        std::size_t start = i_;
        if (i_ >= src_.size()) {
            tok_ = {Token::Kind::End, start, ""};
            return;
        }
        char c = src_[i_];
        auto single = [&](Token::Kind k) {
            ++i_;
            tok_ = {k, start, std::string(1, c)};
        };
        switch (c) {
            case '+': single(Token::Kind::Plus); return;
            case '-': single(Token::Kind::Minus); return;
            case '*': single(Token::Kind::Star); return;
            case '/': single(Token::Kind::Slash); return;
            case '^': single(Token::Kind::Caret); return;
            case '(': single(Token::Kind::LParen); return;
            case ')': single(Token::Kind::RParen); return;
            case ',': single(Token::Kind::Comma); return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t j = i_;
            while (j < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[j])) || src_[j] == '.')) ++j;
            if (j < src_.size() && (src_[j] == 'e' || src_[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < src_.size() && (src_[k] == '+' || src_[k] == '-')) ++k;
                if (k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k]))) {
                    ++k;
                    while (k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k]))) ++k;
                    j = k;
                }
            }
            double v = 0.0;
            auto [p, ec] = std::from_chars(src_.data() + i_, src_.data() + j, v);
            if (ec != std::errc{} || p != src_.data() + j)
                throw SyntaxError(start, "malformed number \"" + std::string(src_.substr(i_, j - i_)) + "\"");
            i_ = j;
            tok_ = {Token::Kind::Number, start, std::string(src_.substr(start, j - start)), v};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
                ++j;
            tok_ = {Token::Kind::Ident, start, std::string(src_.substr(start, j - start))};
            i_ = j;
            return;
        }
        throw SyntaxError(start, std::string("unexpected character '") + c + "'");
    }

    std::string_view src_;
    std::size_t i_ = 0;
    Token tok_{Token::Kind::End, 0, ""};
};

class Parser {
public:
    Parser(std::string_view src, std::size_t x_dim, std::size_t y_dim)
        : lex_(src), x_dim_(x_dim), y_dim_(y_dim) {}

    Expr parse_all() {
        Expr e = parse_sum();
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::End)
            throw SyntaxError(t.pos, "unexpected trailing input \"" + t.text + "\"");
        return e;
    }

private:
    Expr parse_sum() {
        Expr lhs = parse_product();
        for (;;) {
            Token::Kind k = lex_.peek().kind;
            if (k == Token::Kind::Plus || k == Token::Kind::Minus) {
                lex_.take();
                Expr rhs = parse_product();
                lhs = Expr::binary(k == Token::Kind::Plus ? BinaryOp::Add : BinaryOp::Sub,
                                   std::move(lhs), std::move(rhs));
            } else {
                return lhs;
            }
        }
    }

    Expr parse_product() {
        Expr lhs = parse_unary();
        for (;;) {
            Token::Kind k = lex_.peek().kind;
            if (k == Token::Kind::Star || k == Token::Kind::Slash) {
                lex_.take();
                Expr rhs = parse_unary();
                lhs = Expr::binary(k == Token::Kind::Star ? BinaryOp::Mul : BinaryOp::Div,
                                   std::move(lhs), std::move(rhs));
            } else {
                return lhs;
            }
        }
    }

    // '-' binds below '^': -x^2 parses as -(x^2).
    Expr parse_unary() {
        if (lex_.peek().kind == Token::Kind::Minus) {
            lex_.take();
            return Expr::unary(UnaryOp::Neg, parse_unary());
        }
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_primary();
        if (lex_.peek().kind == Token::Kind::Caret) {
            lex_.take();
            Expr exp = parse_unary();  // right associative
            return Expr::binary(BinaryOp::Pow, std::move(base), std::move(exp));
        }
        return base;
    }

    Expr parse_primary() {
        Token t = lex_.take();
        switch (t.kind) {
            case Token::Kind::Number:
                return Expr::constant(t.number);
            case Token::Kind::LParen: {
                Expr e = parse_sum();
                expect(Token::Kind::RParen, ")");
                return e;
            }
            case Token::Kind::Ident:
                return parse_ident(t);
            default:
                throw SyntaxError(t.pos, "expected a number, variable, function, or '('");
        }
    }

    Expr parse_ident(const Token& t) {
        const std::string& s = t.text;
        if (s == "inf") return Expr::constant(ext::pos_inf);
        if (s == "exp" || s == "log" || s == "abs" || s == "sqrt") {
            UnaryOp op = s == "exp"   ? UnaryOp::Exp
                         : s == "log" ? UnaryOp::Log
                         : s == "abs" ? UnaryOp::Abs
                                      : UnaryOp::Sqrt;
            expect(Token::Kind::LParen, "(");
            Expr arg = parse_sum();
            expect(Token::Kind::RParen, ")");
            return Expr::unary(op, std::move(arg));
        }
        if (s == "min" || s == "max") {
            BinaryOp op = s == "min" ? BinaryOp::Min : BinaryOp::Max;
            expect(Token::Kind::LParen, "(");
            Expr a = parse_sum();
            expect(Token::Kind::Comma, ",");
            Expr b = parse_sum();
            expect(Token::Kind::RParen, ")");
            return Expr::binary(op, std::move(a), std::move(b));
        }
        if ((s[0] == 'x' || s[0] == 'y') && s.size() > 1) {
            bool digits = true;
            for (std::size_t i = 1; i < s.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(s[i]))) digits = false;
            if (digits) {
                Axis axis = s[0] == 'x' ? Axis::X : Axis::Y;
                std::size_t n = 0;
                auto [p, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), n);
                if (ec != std::errc{}) throw SyntaxError(t.pos, "malformed variable \"" + s + "\"");
                std::size_t dim = axis == Axis::X ? x_dim_ : y_dim_;
                if (n < 1 || n > dim)
                    throw DimensionError("variable " + s + " out of range; axis " +
                                         (axis == Axis::X ? std::string("x") : std::string("y")) +
                                         " has dimension " + std::to_string(dim));
                return Expr::variable(axis, n - 1);
            }
        }
        throw SyntaxError(t.pos, "unknown identifier \"" + s + "\"");
    }

    void expect(Token::Kind k, const char* what) {
        Token t = lex_.take();
        if (t.kind != k) throw SyntaxError(t.pos, std::string("expected '") + what + "'");
    }

    Lexer lex_;
    std::size_t x_dim_;
    std::size_t y_dim_;
};

int precedence(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Constant:
        case Expr::Kind::Variable:
            return 5;
        case Expr::Kind::Unary:
            return e.uop == UnaryOp::Neg ? 3 : 5;  // named functions self-delimit
        case Expr::Kind::Binary:
            switch (e.bop) {
                case BinaryOp::Add:
                case BinaryOp::Sub: return 1;
                case BinaryOp::Mul:
                case BinaryOp::Div: return 2;
                case BinaryOp::Pow: return 4;
                case BinaryOp::Min:
                case BinaryOp::Max: return 5;
            }
    }
    return 5;
}

std::string render_number(double v) {
    if (v == ext::pos_inf) return "inf";
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

void render_into(const Expr& e, std::string& out);

void render_child(const Expr& child, int min_prec, std::string& out) {
    if (precedence(child) < min_prec) {
        out += '(';
        render_into(child, out);
        out += ')';
    } else {
        render_into(child, out);
    }
}

void render_into(const Expr& e, std::string& out) {
    switch (e.kind) {
        case Expr::Kind::Constant:
            out += render_number(e.value);
            return;
        case Expr::Kind::Variable:
            out += e.axis == Axis::X ? 'x' : 'y';
            out += std::to_string(e.index + 1);
            return;
        case Expr::Kind::Unary:
            switch (e.uop) {
                case UnaryOp::Neg:
                    out += '-';
                    render_child(e.children[0], 3, out);
                    return;
                case UnaryOp::Exp: out += "exp("; break;
                case UnaryOp::Log: out += "log("; break;
                case UnaryOp::Abs: out += "abs("; break;
                case UnaryOp::Sqrt: out += "sqrt("; break;
            }
            render_into(e.children[0], out);
            out += ')';
            return;
        case Expr::Kind::Binary: {
            const Expr& a = e.children[0];
            const Expr& b = e.children[1];
            switch (e.bop) {
                case BinaryOp::Add:
                    render_child(a, 1, out);
                    out += " + ";
                    render_child(b, 2, out);
                    return;
                case BinaryOp::Sub:
                    render_child(a, 1, out);
                    out += " - ";
                    render_child(b, 2, out);
                    return;
                case BinaryOp::Mul:
                    render_child(a, 2, out);
                    out += '*';
                    render_child(b, 3, out);
                    return;
                case BinaryOp::Div:
                    render_child(a, 2, out);
                    out += '/';
                    render_child(b, 3, out);
                    return;
                case BinaryOp::Pow:
                    render_child(a, 5, out);
                    out += '^';
                    render_child(b, 3, out);
                    return;
                case BinaryOp::Min:
                case BinaryOp::Max:
                    out += e.bop == BinaryOp::Min ? "min(" : "max(";
                    render_into(a, out);
                    out += ", ";
                    render_into(b, out);
                    out += ')';
                    return;
            }
        }
    }
}

}  // namespace

Expr parse(std::string_view text, std::size_t x_dim, std::size_t y_dim) {
    if (text.empty()) throw SyntaxError(0, "empty expression");
    return Parser(text, x_dim, y_dim).parse_all();
}

std::string render(const Expr& e) {
    std::string out;
    render_into(e, out);
    return out;
}

double eval(const Expr& e, std::span<const double> x, std::span<const double> y) {
    switch (e.kind) {
        case Expr::Kind::Constant:
            return e.value;
        case Expr::Kind::Variable: {
            std::span<const double> v = e.axis == Axis::X ? x : y;
            if (e.index >= v.size())
                throw DimensionError("variable index " + std::to_string(e.index + 1) +
                                     " exceeds input vector of length " + std::to_string(v.size()));
            return v[e.index];
        }
        case Expr::Kind::Unary: {
            double a = eval(e.children[0], x, y);
            switch (e.uop) {
                case UnaryOp::Neg: return -a;
                case UnaryOp::Exp: return ext::exp(a);
                case UnaryOp::Log: return ext::log(a);
                case UnaryOp::Abs: return std::abs(a);
                case UnaryOp::Sqrt: return ext::sqrt(a);
            }
            break;
        }
        case Expr::Kind::Binary: {
            double a = eval(e.children[0], x, y);
            double b = eval(e.children[1], x, y);
            switch (e.bop) {
                case BinaryOp::Add: return ext::add(a, b);
                case BinaryOp::Sub: return ext::sub(a, b);
                case BinaryOp::Mul: return ext::mul(a, b);
                case BinaryOp::Div: return ext::div(a, b);
                case BinaryOp::Pow: return ext::pow(a, b);
                case BinaryOp::Min: return std::min(a, b);
                case BinaryOp::Max: return std::max(a, b);
            }
            break;
        }
    }
    throw Error("malformed expression node");
}

}  // namespace berge
