#include "lienard/bivariate.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using lienard::BivariatePoly;
using lienard::ParametricPoly;

TEST_CASE("sparse storage never keeps zero coefficients") {
    BivariatePoly p;
    p.add_term(1, 2, 3.0);
    p.add_term(1, 2, -3.0);
    CHECK(p.is_zero());
    p.add_term(0, 0, 0.0);
    CHECK(p.is_zero());
}

TEST_CASE("arithmetic and evaluation") {
    BivariatePoly x = BivariatePoly::term(1, 0, 1.0);
    BivariatePoly y = BivariatePoly::term(0, 1, 1.0);
    BivariatePoly p = x * x - y * 2.0; // x^2 - 2y
    CHECK(p.coeff(2, 0) == 1.0);
    CHECK(p.coeff(0, 1) == -2.0);
    CHECK(p.eval(3.0, 4.0) == doctest::Approx(9.0 - 8.0));

    BivariatePoly q = (x + y) * (x - y);
    CHECK(q == x * x - y * y);
}

TEST_CASE("rendering") {
    BivariatePoly p;
    p.add_term(2, 1, -1.0);
    p.add_term(0, 0, 3.0);
    CHECK(p.str() == "-x^2 y + 3");
    CHECK(BivariatePoly{}.str() == "0");
    CHECK(BivariatePoly::term(0, 2, 1.0).str() == "y^2");
}

TEST_CASE("parametric collapse at a concrete value") {
    // (x y) + mu * (y^2)
    ParametricPoly p(BivariatePoly::term(1, 1, 1.0), BivariatePoly::term(0, 2, 1.0));
    CHECK(p.mu_degree() == 1);
    BivariatePoly at2 = p.at(2.0);
    CHECK(at2.coeff(1, 1) == 1.0);
    CHECK(at2.coeff(0, 2) == 2.0);
}

TEST_CASE("rotation determinant of an affine pair is mu-free and exact") {
    // P = y (no parameter), Q = Q0 + mu * x y with Q0 = -x.
    ParametricPoly p(BivariatePoly::term(0, 1, 1.0));
    ParametricPoly q(BivariatePoly::term(1, 0, -1.0), BivariatePoly::term(1, 1, 1.0));
    BivariatePoly delta = lienard::rotation_determinant(p, q);
    // P * Q1 = x y^2.
    CHECK(delta == BivariatePoly::term(1, 2, 1.0));
}

TEST_CASE("quadratic parameter dependence is rejected") {
    ParametricPoly p(BivariatePoly::term(0, 1, 1.0));
    ParametricPoly q(BivariatePoly::term(1, 0, -1.0));
    q.set_mu_part(2, BivariatePoly::term(0, 0, 1.0));
    CHECK_THROWS_AS((void)lienard::rotation_determinant(p, q), std::invalid_argument);
}

TEST_CASE("symbolic determinant agrees with finite differences at random points") {
    // Delta = P dQ/dmu - Q dP/dmu evaluated numerically for the affine pair.
    ParametricPoly p(BivariatePoly::term(0, 1, 1.0));
    BivariatePoly q0;
    q0.add_term(1, 0, -1.0);
    q0.add_term(2, 0, 0.5);
    ParametricPoly q(q0, BivariatePoly::term(2, 1, 1.0));
    BivariatePoly delta = lienard::rotation_determinant(p, q);

    std::mt19937_64 rng(77ull);
    std::uniform_real_distribution<double> pt(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        const double x = pt(rng), y = pt(rng), mu = pt(rng);
        const double h = 1e-6;
        const double dq = (q.at(mu + h).eval(x, y) - q.at(mu - h).eval(x, y)) / (2 * h);
        const double dp = (p.at(mu + h).eval(x, y) - p.at(mu - h).eval(x, y)) / (2 * h);
        const double numeric = p.at(mu).eval(x, y) * dq - q.at(mu).eval(x, y) * dp;
        CHECK(delta.eval(x, y) == doctest::Approx(numeric).epsilon(1e-7));
    }
}
