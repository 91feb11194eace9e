#pragma once

#include <cstddef>
#include <vector>

namespace lienard::polysys {

/**
 * Dense univariate polynomial with real coefficients.
 *
 * Coefficients are stored in ascending order: coeffs[i] multiplies x^i,
 * so eval(0) == coeffs[0].  The zero polynomial is represented by an
 * empty coefficient vector (degree() returns -1 for it).
 */
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs);

    /// Coefficient of x^i; zero beyond the stored degree.
    double coeff(std::size_t i) const;
    const std::vector<double>& coeffs() const { return c_; }

    /// Degree after trimming trailing zeros; -1 for the zero polynomial.
    int degree() const;

    bool is_zero() const;

    /// Horner evaluation.
    double eval(double x) const;

    Polynomial derivative() const;

    /// Antiderivative with zero constant term.
    Polynomial antiderivative() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial& operator*=(double s);

    bool operator==(const Polynomial& o) const;

private:
    std::vector<double> c_;
    void trim();
};

/**
 * Real roots of p, each polished by Newton iteration.
 *
 * Roots are found as eigenvalues of the companion matrix of the
 * normalized polynomial; eigenvalues with |imag| below a scale-relative
 * threshold are accepted as real.  The returned list is sorted
 * ascending and may contain near-coincident entries when p has a
 * multiple root; callers decide how to merge them.
 *
 * Throws std::invalid_argument for the zero polynomial.
 */
std::vector<double> real_roots(const Polynomial& p);

} // namespace lienard::polysys

namespace lienard {
using polysys::Polynomial;
using polysys::real_roots;
} // namespace lienard
