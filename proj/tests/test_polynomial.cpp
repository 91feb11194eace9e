#include "lienard/polynomial.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using lienard::Polynomial;

TEST_CASE("evaluation at zero returns the constant coefficient") {
    Polynomial p({3.5, -1.0, 2.0});
    CHECK(p.eval(0.0) == 3.5);
    CHECK(p.coeff(0) == 3.5);
    CHECK(p.degree() == 2);
}

TEST_CASE("trailing zeros are trimmed so the leading coefficient is nonzero") {
    Polynomial p({1.0, 2.0, 0.0, 0.0});
    CHECK(p.degree() == 1);
    CHECK(Polynomial({0.0, 0.0}).is_zero());
    CHECK(Polynomial({0.0, 0.0}).degree() == -1);
}

TEST_CASE("horner evaluation matches direct expansion") {
    Polynomial p({1.0, -2.0, 0.5, 3.0});
    const double x = 1.7;
    const double direct = 1.0 - 2.0 * x + 0.5 * x * x + 3.0 * x * x * x;
    CHECK(p.eval(x) == doctest::Approx(direct).epsilon(1e-15));
}

TEST_CASE("derivative and antiderivative") {
    Polynomial p({2.0, 3.0, 4.0}); // 2 + 3x + 4x^2
    CHECK(p.derivative() == Polynomial({3.0, 8.0}));
    CHECK(p.antiderivative() == Polynomial({0.0, 2.0, 1.5, 4.0 / 3.0}));
    // Antiderivative then derivative is the identity.
    CHECK(p.antiderivative().derivative() == p);
}

TEST_CASE("arithmetic") {
    Polynomial a({1.0, 1.0});  // 1 + x
    Polynomial b({-1.0, 1.0}); // -1 + x
    CHECK(a * b == Polynomial({-1.0, 0.0, 1.0}));
    CHECK(a + b == Polynomial({0.0, 2.0}));
    CHECK(a - a == Polynomial{});
}

TEST_CASE("real_roots on a factored cubic") {
    // x (x - 1) (x + 2) = -2x - x^2 + ... expand: x(x^2 + x - 2) = -2x + x^2 + x^3
    Polynomial p({0.0, -2.0, 1.0, 1.0});
    auto roots = lienard::real_roots(p);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(roots[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(roots[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("real_roots via the quadratic-formula oracle") {
    // 1 - 3x + x^2, roots (3 -+ sqrt 5)/2.
    Polynomial p({1.0, -3.0, 1.0});
    auto roots = lienard::real_roots(p);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == doctest::Approx(0.38196601125010515).epsilon(1e-13));
    CHECK(roots[1] == doctest::Approx(2.618033988749895).epsilon(1e-13));
}

TEST_CASE("real_roots keeps complex pairs out") {
    // (x^2 + 1)(x - 2): only one real root.
    Polynomial p = Polynomial({1.0, 0.0, 1.0}) * Polynomial({-2.0, 1.0});
    auto roots = lienard::real_roots(p);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("real_roots reports a double root as near-coincident entries") {
    // (x - 1)^2
    Polynomial p({1.0, -2.0, 1.0});
    auto roots = lienard::real_roots(p);
    REQUIRE(roots.size() == 2);
    CHECK(std::abs(roots[0] - 1.0) < 1e-6);
    CHECK(std::abs(roots[1] - 1.0) < 1e-6);
}

TEST_CASE("polished roots satisfy the residual bound on seeded draws") {
    std::mt19937_64 rng(20240817ull);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> c(5);
        for (double& v : c)
            v = coef(rng);
        if (std::abs(c.back()) < 0.1)
            c.back() = 1.0;
        Polynomial p(c);
        for (double r : lienard::real_roots(p)) {
            const double scale = 1.0 + std::pow(std::abs(r), p.degree());
            CHECK(std::abs(p.eval(r)) < 1e-10 * scale);
        }
    }
}

TEST_CASE("zero polynomial is rejected") {
    CHECK_THROWS_AS((void)lienard::real_roots(Polynomial{}), std::invalid_argument);
}
