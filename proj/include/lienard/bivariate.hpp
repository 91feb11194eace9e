#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace lienard::polysys {

/**
 * Sparse bivariate polynomial in (x, y).
 *
 * Terms are keyed by (x degree, y degree); zero coefficients are never
 * stored, so structural equality (operator==) is exact term-by-term
 * equality.  Coefficient arithmetic is plain double arithmetic, which
 * is exact for the small-integer patterns this library manipulates.
 */
class BivariatePoly {
public:
    using Key = std::pair<int, int>;

    BivariatePoly() = default;

    static BivariatePoly term(int xdeg, int ydeg, double coeff);

    /// Coefficient of x^i y^j (zero when absent).
    double coeff(int i, int j) const;
    const std::map<Key, double>& terms() const { return t_; }

    void add_term(int xdeg, int ydeg, double coeff);

    bool is_zero() const { return t_.empty(); }

    double eval(double x, double y) const;

    BivariatePoly operator+(const BivariatePoly& o) const;
    BivariatePoly operator-(const BivariatePoly& o) const;
    BivariatePoly operator*(const BivariatePoly& o) const;
    BivariatePoly operator*(double s) const;

    bool operator==(const BivariatePoly& o) const { return t_ == o.t_; }

    /// Rendering like "-x^2 y + 3" for reports, ordered by degree.
    std::string str() const;

private:
    std::map<Key, double> t_;
};

/**
 * Bivariate polynomial whose coefficients depend polynomially on one
 * scalar parameter mu: sum_d mu^d * part(d).
 *
 * Index d of mu_parts holds the bivariate coefficient of mu^d.  The
 * rotation-determinant computation accepts only representations that
 * are affine in mu (mu_degree() <= 1).
 */
class ParametricPoly {
public:
    ParametricPoly() = default;
    explicit ParametricPoly(BivariatePoly constant);
    ParametricPoly(BivariatePoly constant, BivariatePoly linear);

    /// Coefficient of mu^d; zero polynomial when absent.
    const BivariatePoly& mu_part(std::size_t d) const;
    void set_mu_part(std::size_t d, BivariatePoly p);

    /// Highest mu power with a nonzero part; -1 when identically zero.
    int mu_degree() const;

    /// Collapse to a plain polynomial at a concrete parameter value.
    BivariatePoly at(double mu) const;

private:
    std::vector<BivariatePoly> parts_;
};

/**
 * Rotation determinant Delta = P * dQ/dmu - Q * dP/dmu for a field
 * (P, Q) given in parametric form.  Because both components must be
 * affine in mu, Delta is mu-free and is returned as a plain
 * BivariatePoly.
 *
 * Throws std::invalid_argument when either component has mu-degree
 * above one.
 */
BivariatePoly rotation_determinant(const ParametricPoly& p, const ParametricPoly& q);

} // namespace lienard::polysys

namespace lienard {
using polysys::BivariatePoly;
using polysys::ParametricPoly;
using polysys::rotation_determinant;
} // namespace lienard
