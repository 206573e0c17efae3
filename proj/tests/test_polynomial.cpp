#include "vopt/polynomial.hpp"
#include "vopt/rng.hpp"

#include <doctest.h>

#include <set>

using namespace vopt;

namespace {

std::set<std::vector<int>> exponent_set(const Polynomial& p) {
    std::set<std::vector<int>> s;
    for (const auto& t : p.terms()) {
        std::vector<int> e(t.exponents.data(), t.exponents.data() + t.exponents.size());
        s.insert(e);
    }
    return s;
}

Polynomial random_poly(Rng& rng, int n, int max_deg, double coeff_range) {
    std::vector<Monomial> terms;
    int nt = 2 + static_cast<int>(rng.uniform() * 7.0);
    for (int t = 0; t < nt; ++t) {
        Monomial mono;
        mono.exponents = IVec::Zero(n);
        int budget = max_deg;
        for (int j = 0; j < n; ++j) {
            int e = static_cast<int>(rng.uniform() * (budget + 1));
            mono.exponents[j] = e;
            budget -= e;
        }
        mono.coefficient = rng.uniform(-coeff_range, coeff_range);
        terms.push_back(std::move(mono));
    }
    return Polynomial(n, std::move(terms));
}

} // namespace

TEST_CASE("parse: Motzkin term set") {
    Polynomial p = parse_polynomial("x1^2*x2^4 + x1^4*x2^2 - 3*x1^2*x2^2 + 1", 2);
    CHECK(p.terms().size() == 4);
    std::set<std::vector<int>> expect = {{2, 4}, {4, 2}, {2, 2}, {0, 0}};
    CHECK(exponent_set(p) == expect);
}

TEST_CASE("parse: cancellation yields the zero polynomial") {
    Polynomial p = parse_polynomial("0*x1 + x2 - x2", 2);
    CHECK(p.is_zero());
    CHECK(p.terms().empty());
}

TEST_CASE("parse: merging doubles the coefficient") {
    Polynomial p = parse_polynomial("x1 + x1", 1);
    REQUIRE(p.terms().size() == 1);
    CHECK(p.terms()[0].coefficient == 2.0);
    CHECK(p.terms()[0].exponents[0] == 1);
}

TEST_CASE("parse: errors carry position and kind") {
    CHECK_THROWS_AS(parse_polynomial("x1 + ", 2), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x3", 2), IndexError);
    CHECK_THROWS_AS(parse_polynomial("x0", 2), IndexError);
    CHECK_THROWS_AS(parse_polynomial("x1 * * x2", 2), ParseError);
    CHECK_THROWS_AS(parse_polynomial("", 2), ParseError);
    try {
        parse_poly_map("x1\nx1 @ x2\n", 2);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() > 1);
    }
}

TEST_CASE("evaluate: catalog values") {
    PolyMap motzkin = parse_poly_map("x1^2*x2^4 + x1^4*x2^2 - 3*x1^2*x2^2 + 1", 2);
    Vec x(2);
    x << 1, 1;
    CHECK(motzkin.eval(x)[0] == doctest::Approx(0.0).epsilon(1e-12));
    x << 0, 0;
    CHECK(motzkin.eval(x)[0] == doctest::Approx(1.0));
    for (double a : {1.0, -1.0}) {
        for (double b : {1.0, -1.0}) {
            x << a, b;
            CHECK(std::abs(motzkin.eval(x)[0]) < 1e-12);
        }
    }

    PolyMap hyp = parse_poly_map("x1^2*x2^2 + x1^2 - 2*x1*x2 + 1", 2);
    x << 0, 5;
    CHECK(hyp.eval(x)[0] == doctest::Approx(1.0));
}

TEST_CASE("jacobian: quadratic, Motzkin critical point, rank-deficient pair") {
    PolyMap quad = parse_poly_map("x1^2 + x2^2", 2);
    Vec x(2);
    x << 1, 2;
    Mat J = quad.jacobian(x);
    CHECK(J(0, 0) == doctest::Approx(2.0));
    CHECK(J(0, 1) == doctest::Approx(4.0));

    PolyMap motzkin = parse_poly_map("x1^2*x2^4 + x1^4*x2^2 - 3*x1^2*x2^2 + 1", 2);
    x << 1, 1;
    CHECK(motzkin.jacobian(x).norm() < 1e-12);

    PolyMap pair = parse_poly_map("x1^2 + x2^2\nx1^2 - x2^2", 2);
    for (double k : {1.0, 5.0}) {
        x << k, 0;
        Mat Jp = pair.jacobian(x);
        CHECK(Jp(0, 0) == doctest::Approx(2 * k));
        CHECK(Jp(1, 0) == doctest::Approx(2 * k));
        CHECK(Jp(0, 1) == doctest::Approx(0.0));
        CHECK(Jp(1, 1) == doctest::Approx(0.0));
    }
}

TEST_CASE("property: jacobian matches central finite differences") {
    Rng rng(13);
    for (int inst = 0; inst < 100; ++inst) {
        int n = 1 + static_cast<int>(rng.uniform() * 4.0);
        PolyMap f(n, {random_poly(rng, n, 6, 5.0)});
        Vec x = rng.in_box(n, 1.5);
        Mat J = f.jacobian(x);
        const double h = 1e-6;
        for (int j = 0; j < n; ++j) {
            Vec xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            double fd = (f.eval(xp)[0] - f.eval(xm)[0]) / (2 * h);
            CHECK(std::abs(J(0, j) - fd) <= 1e-5 * (1.0 + std::abs(fd)));
        }
    }
}

TEST_CASE("property: parse-print-parse is idempotent") {
    Rng rng(29);
    for (int inst = 0; inst < 60; ++inst) {
        int n = 1 + static_cast<int>(rng.uniform() * 4.0);
        Polynomial p = random_poly(rng, n, 6, 5.0);
        Polynomial q = parse_polynomial(p.to_string(), n);
        CHECK(p.same_terms(q));
        CHECK(q.to_string() == p.to_string());
    }
    CHECK(Polynomial::zero(3).to_string() == "0");
    CHECK(parse_polynomial("0", 3).is_zero());
}

TEST_CASE("property: evaluation is linear in the coefficients") {
    Rng rng(31);
    for (int inst = 0; inst < 40; ++inst) {
        int n = 1 + static_cast<int>(rng.uniform() * 3.0);
        Polynomial p = random_poly(rng, n, 5, 4.0);
        Polynomial q = random_poly(rng, n, 5, 4.0);
        Vec x = rng.in_box(n, 1.2);
        double lhs = (p + q).eval(x);
        double rhs = p.eval(x) + q.eval(x);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("problem files: header, tbar, budget, comments") {
    ProblemFile pf = load_problem_text(
        "# demo\nvars: 2\nx1 + x2  # inline comment\nx1^2\ntbar: 1.5, 2\nbudget: n_starts=32 "
        "r_max=1000\n");
    CHECK(pf.map.nvars() == 2);
    CHECK(pf.map.ncomponents() == 2);
    REQUIRE(pf.tbar.has_value());
    CHECK((*pf.tbar)[0] == doctest::Approx(1.5));
    CHECK(pf.budget.at("n_starts") == doctest::Approx(32));
    CHECK_THROWS_AS(load_problem_text("x1 + x2\n"), ParseError);
    CHECK_THROWS_AS(load_problem_text("vars: 2\nx1\ntbar: 1,2,3\n"), ParseError);
}

TEST_CASE("open quadrant expansion matches the factored form") {
    ProblemFile pf = load_problem_file("data/open_quadrant.vp");
    auto f1 = [](double a, double b) {
        double inner = a * a * std::pow(b, 4) + std::pow(a, 4) * b * b - b * b - 1.0;
        return inner * inner + std::pow(a, 6) * std::pow(b, 4);
    };
    auto f2 = [](double a, double b) {
        double inner = std::pow(a, 6) * b * b + a * a * b * b - a * a - 1.0;
        return inner * inner + std::pow(a, 6) * std::pow(b, 4);
    };
    Rng rng(47);
    for (int i = 0; i < 50; ++i) {
        Vec x = rng.in_box(2, 1.6);
        Vec v = pf.map.eval(x);
        CHECK(std::abs(v[0] - f1(x[0], x[1])) <= 1e-9 * (1.0 + std::abs(v[0])));
        CHECK(std::abs(v[1] - f2(x[0], x[1])) <= 1e-9 * (1.0 + std::abs(v[1])));
    }
}
