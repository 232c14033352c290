#include "levyid/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace levyid {

class ExpressionParser {
public:
    ExpressionParser(std::string_view text, int dimension, Expression& out)
        : text_(text), dimension_(dimension), out_(out) {}

    void run() {
        out_.root_ = parse_sum();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    }

private:
    using Op = Expression::Op;

    [[noreturn]] void fail(const std::string& message) const { throw ExpressionError(message, pos_); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    int add(Expression::Node node) {
        out_.nodes_.push_back(node);
        return static_cast<int>(out_.nodes_.size()) - 1;
    }

    int binary(Op op, int lhs, int rhs) { return add({op, 0.0, 0, lhs, rhs}); }

    int parse_sum() {
        int lhs = parse_product();
        for (;;) {
            if (accept('+')) {
                lhs = binary(Op::add, lhs, parse_product());
            } else if (accept('-')) {
                lhs = binary(Op::sub, lhs, parse_product());
            } else {
                return lhs;
            }
        }
    }

    int parse_product() {
        int lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = binary(Op::mul, lhs, parse_unary());
            } else if (accept('/')) {
                lhs = binary(Op::div, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    int parse_unary() {
        if (accept('-')) return add({Op::neg, 0.0, 0, parse_unary(), -1});
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    int parse_power() {
        const int base = parse_primary();
        if (accept('^')) return binary(Op::pow, base, parse_unary());
        return base;
    }

    int parse_primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            const int inner = parse_sum();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    int parse_number() {
        double value = 0.0;
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{}) fail("malformed number");
        pos_ += static_cast<std::size_t>(ptr - first);
        return add({Op::constant, value, 0, -1, -1});
    }

    int parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string_view word = text_.substr(start, pos_ - start);

        if (word.size() > 1 && word[0] == 'x') {
            int index = 0;
            auto [ptr, ec] = std::from_chars(word.data() + 1, word.data() + word.size(), index);
            if (ec == std::errc{} && ptr == word.data() + word.size()) {
                if (index < 1 || index > dimension_) {
                    pos_ = start;
                    fail("variable " + std::string(word) + " outside x1..x" + std::to_string(dimension_));
                }
                return add({Op::variable, 0.0, index - 1, -1, -1});
            }
        }

        Op op;
        if (word == "sin") {
            op = Op::sin;
        } else if (word == "cos") {
            op = Op::cos;
        } else if (word == "tanh") {
            op = Op::tanh;
        } else if (word == "exp") {
            op = Op::exp;
        } else {
            pos_ = start;
            fail("unknown identifier '" + std::string(word) + "'");
        }
        if (!accept('(')) fail("expected '(' after " + std::string(word));
        const int arg = parse_sum();
        if (!accept(')')) fail("expected ')'");
        return add({op, 0.0, 0, arg, -1});
    }

    std::string_view text_;
    int dimension_;
    Expression& out_;
    std::size_t pos_ = 0;
};

Expression Expression::parse(std::string_view text, int dimension) {
    if (dimension < 1) throw std::invalid_argument("expression dimension must be at least 1");
    Expression expr;
    expr.text_ = std::string(text);
    ExpressionParser(expr.text_, dimension, expr).run();
    return expr;
}

double Expression::evaluate(std::span<const double> x) const { return eval_node(root_, x); }

double Expression::eval_node(int id, std::span<const double> x) const {
    const Node& node = nodes_[static_cast<std::size_t>(id)];
    switch (node.op) {
        case Op::constant: return node.value;
        case Op::variable: return x[static_cast<std::size_t>(node.index)];
        case Op::add: return eval_node(node.lhs, x) + eval_node(node.rhs, x);
        case Op::sub: return eval_node(node.lhs, x) - eval_node(node.rhs, x);
        case Op::mul: return eval_node(node.lhs, x) * eval_node(node.rhs, x);
        case Op::div: return eval_node(node.lhs, x) / eval_node(node.rhs, x);
        case Op::pow: {
            const double base = eval_node(node.lhs, x);
            const Node& exponent = nodes_[static_cast<std::size_t>(node.rhs)];
            if (exponent.op == Op::constant && exponent.value == 2.0) return base * base;
            return std::pow(base, eval_node(node.rhs, x));
        }
        case Op::neg: return -eval_node(node.lhs, x);
        case Op::sin: return std::sin(eval_node(node.lhs, x));
        case Op::cos: return std::cos(eval_node(node.lhs, x));
        case Op::tanh: return std::tanh(eval_node(node.lhs, x));
        case Op::exp: return std::exp(eval_node(node.lhs, x));
    }
    return 0.0;
}

}  // namespace levyid
