#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace levyid {

class ExpressionError : public std::invalid_argument {
public:
    ExpressionError(const std::string& message, std::size_t position)
        : std::invalid_argument(message + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Scalar expression over variables x1..xn.
///
/// Grammar: numbers, x1..xn, + - * / ^ (right associative, binds tighter
/// than unary minus), parentheses and the functions sin, cos, tanh, exp.
class Expression {
public:
    static Expression parse(std::string_view text, int dimension);

    double evaluate(std::span<const double> x) const;
    const std::string& text() const noexcept { return text_; }

private:
    enum class Op { constant, variable, add, sub, mul, div, pow, neg, sin, cos, tanh, exp };

    struct Node {
        Op op;
        double value = 0.0;
        int index = 0;
        int lhs = -1;
        int rhs = -1;
    };

    double eval_node(int id, std::span<const double> x) const;

    std::string text_;
    std::vector<Node> nodes_;
    int root_ = -1;

    friend class ExpressionParser;
};

}  // namespace levyid
