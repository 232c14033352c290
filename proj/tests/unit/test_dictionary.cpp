#include "levyid/dictionary.hpp"
#include "levyid/expression.hpp"
#include "levyid/models.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace levyid;

namespace {

std::size_t binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<std::size_t>(std::llround(r));
}

std::vector<double> row_at(const Dictionary& d, std::vector<double> x) {
    std::vector<double> out(d.size());
    d.evaluate_row(x, out);
    return out;
}

}  // namespace

TEST_CASE("polynomial dictionaries use graded lexicographic order") {
    CHECK(polynomial_dictionary(1, 6).names() ==
          std::vector<std::string>{"1", "x1", "x1^2", "x1^3", "x1^4", "x1^5", "x1^6"});
    CHECK(polynomial_dictionary(2, 3).names() ==
          std::vector<std::string>{"1", "x1", "x2", "x1^2", "x1*x2", "x2^2", "x1^3", "x1^2*x2", "x1*x2^2", "x2^3"});
    CHECK(polynomial_dictionary(3, 2).names() ==
          std::vector<std::string>{"1", "x1", "x2", "x3", "x1^2", "x1*x2", "x1*x3", "x2^2", "x2*x3", "x3^2"});
    CHECK(polynomial_dictionary(2, 0).names() == std::vector<std::string>{"1"});
}

TEST_CASE("polynomial dictionary size is C(n + degree, degree)") {
    for (int n = 1; n <= 4; ++n) {
        for (int d = 0; d <= 6; ++d) {
            CAPTURE(n);
            CAPTURE(d);
            CHECK(polynomial_dictionary(n, d).size() == binomial(n + d, d));
        }
    }
}

TEST_CASE("monomials evaluate to the products their names describe") {
    const auto d = polynomial_dictionary(3, 3);
    const std::vector<double> x{1.5, -2.0, 0.5};
    for (std::size_t k = 0; k < d.size(); ++k) {
        double expected = 1.0;
        const auto& name = d.name(k);
        if (name != "1") {
            std::size_t pos = 0;
            while (pos < name.size()) {
                const auto end = name.find('*', pos);
                const auto factor = name.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
                const int var = factor[1] - '1';
                const auto caret = factor.find('^');
                const int power = caret == std::string::npos ? 1 : std::stoi(factor.substr(caret + 1));
                expected *= std::pow(x[static_cast<std::size_t>(var)], power);
                if (end == std::string::npos) break;
                pos = end + 1;
            }
        }
        CAPTURE(name);
        CHECK(d.evaluate(k, x) == doctest::Approx(expected).epsilon(1e-15));
    }
}

TEST_CASE("design matrix evaluation") {
    const auto d = custom_dictionary({"1", "x1", "x1^2"}, 1);
    RowMatrix p(1, 1);
    p << 2.0;
    const auto A = evaluate_design_matrix(d, p);
    CHECK(A.rows() == 1);
    CHECK(A(0, 0) == 1.0);
    CHECK(A(0, 1) == 2.0);
    CHECK(A(0, 2) == 4.0);

    RowMatrix origin = RowMatrix::Zero(1, 2);
    const auto B = evaluate_design_matrix(polynomial_dictionary(2, 1), origin);
    CHECK(B(0, 0) == 1.0);
    CHECK(B(0, 1) == 0.0);
    CHECK(B(0, 2) == 0.0);
}

TEST_CASE("design matrix rows follow input rows") {
    const auto d = polynomial_dictionary(2, 3);
    RowMatrix p(4, 2);
    p << 0.1, 0.2, -1.0, 0.5, 2.0, -0.3, 0.7, 0.7;
    RowMatrix q(4, 2);
    const int perm[4] = {2, 0, 3, 1};
    for (int i = 0; i < 4; ++i) q.row(i) = p.row(perm[i]);
    const auto A = evaluate_design_matrix(d, p);
    const auto B = evaluate_design_matrix(d, q);
    for (int i = 0; i < 4; ++i) CHECK(B.row(i) == A.row(perm[i]));
}

TEST_CASE("non-finite basis values name the entry and row") {
    const auto d = custom_dictionary({"1", "1/x1"}, 1);
    RowMatrix p(3, 1);
    p << 1.0, 2.0, 0.0;
    try {
        evaluate_design_matrix(d, p);
        FAIL("expected an error");
    } catch (const std::domain_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("1/x1") != std::string::npos);
        CHECK(msg.find('2') != std::string::npos);
    }
}

TEST_CASE("custom expressions") {
    const auto d = custom_dictionary({"1", "x1", "exp(-50*(x1-3)^2)"}, 1);
    CHECK(row_at(d, {3.0}) == std::vector<double>{1.0, 3.0, 1.0});
    CHECK(custom_dictionary({"sin(11*x1)"}, 1).evaluate(0, std::vector<double>{0.0}) == 0.0);

    const auto e = Expression::parse("-x1^2 + 2*x2/4 - cos(0)", 2);
    CHECK(e.evaluate(std::vector<double>{3.0, 4.0}) == doctest::Approx(-9.0 + 2.0 - 1.0));
    CHECK(Expression::parse("2^3^2", 1).evaluate(std::vector<double>{0.0}) == doctest::Approx(512.0));
    CHECK(Expression::parse("tanh(x1)^2", 1).evaluate(std::vector<double>{0.5}) ==
          doctest::Approx(std::tanh(0.5) * std::tanh(0.5)));
    CHECK(Expression::parse("1.5e-1*x1", 1).evaluate(std::vector<double>{2.0}) == doctest::Approx(0.3));
}

TEST_CASE("parse errors report a position") {
    CHECK_THROWS_AS(Expression::parse("x1 +", 1), ExpressionError);
    CHECK_THROWS_AS(Expression::parse("x2", 1), ExpressionError);
    CHECK_THROWS_AS(Expression::parse("foo(x1)", 1), ExpressionError);
    CHECK_THROWS_AS(Expression::parse("(x1", 1), ExpressionError);
    CHECK_THROWS_AS(Expression::parse("", 1), ExpressionError);
    try {
        Expression::parse("x1 * * 2", 1);
        FAIL("expected an error");
    } catch (const ExpressionError& e) {
        CHECK(e.position() == 5);
    }
}

TEST_CASE("dictionary invariants") {
    CHECK_THROWS_AS(custom_dictionary({"x1", "x1"}, 1), std::invalid_argument);
    CHECK_THROWS_AS(custom_dictionary({}, 1), std::invalid_argument);
}

TEST_CASE("gene regulatory dictionary") {
    const auto exprs = gene_regulatory_dictionary_expressions();
    REQUIRE(exprs.size() == 19);
    const auto d = custom_dictionary(exprs, 1);
    CHECK(d.size() == 19);
    const auto v = row_at(d, {0.0});
    CHECK(v[0] == 1.0);
    CHECK(d.name(9) == "exp(-50*x1^2)");
    CHECK(v[9] == 1.0);
    CHECK(d.name(7) == "-10*tanh(10*x1)^2+10");
    CHECK(v[7] == 10.0);
}

TEST_CASE("dictionary files skip comments and blank lines") {
    const auto path = std::filesystem::temp_directory_path() / "levyid_dict_test.txt";
    {
        std::ofstream f(path);
        f << "# basis\n1\n\nx1  # linear\nx1^3\n";
    }
    const auto d = load_dictionary_file(path, 1);
    std::filesystem::remove(path);
    CHECK(d.size() == 3);
    CHECK(d.evaluate(2, std::vector<double>{2.0}) == 8.0);
    CHECK_THROWS(load_dictionary_file(path, 1));
}
