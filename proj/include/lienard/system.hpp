#pragma once

#include "lienard/bivariate.hpp"
#include "lienard/polynomial.hpp"

#include <utility>
#include <vector>

namespace lienard::polysys {

/**
 * Planar polynomial system
 *
 *   x' = y
 *   y' = -x (1 + beta_1 x + ... + beta_2l x^2l)
 *        + y (alpha_0 + alpha_1 x + ... + alpha_2k x^2k)
 *
 * alpha holds 2k+1 entries (alpha[i] multiplies x^i in the damping
 * factor) and beta holds 2l entries (beta[j-1] is beta_j, multiplying
 * x^j inside the restoring factor).  The origin is always a singular
 * point with unit Jacobian determinant.
 */
struct LienardSystem {
    int k = 0;
    int l = 0;
    std::vector<double> alpha; // size 2k+1
    std::vector<double> beta;  // size 2l

    /// Validates the size constraints; throws std::invalid_argument.
    void validate() const;

    /// Restoring polynomial g(x) = x (1 + beta_1 x + ... + beta_2l x^2l).
    Polynomial restoring() const;

    /// Damping polynomial h(x) = alpha_0 + ... + alpha_2k x^2k.
    Polynomial damping() const;

    /// Field evaluation (x', y') at a point.
    std::pair<double, double> vector_field(double x, double y) const;

    /// Jacobian at an x-axis point: {trace, det} = {h(x), g'(x)}.
    std::pair<double, double> jacobian_on_axis(double x) const;
};

/**
 * Canonical reduction: odd damping slots pinned to 1, even restoring
 * slots pinned to +-1.  The free data are the even damping values
 * alpha_0, alpha_2, ..., alpha_2k (the field-rotation parameters), the
 * odd restoring values beta_1, beta_3, ..., beta_2l-1, and the sign of
 * each pinned even restoring slot.
 */
struct CanonicalSystem {
    int k = 0;
    int l = 0;
    std::vector<double> alpha_even; // size k+1: alpha_0, alpha_2, ...
    std::vector<double> beta_odd;   // size l:   beta_1, beta_3, ...
    std::vector<int> even_signs;    // size l:   sign of beta_2, beta_4, ...

    void validate() const;
};

/// Expands the canonical data into the full coefficient lists.
LienardSystem expand_canonical(const CanonicalSystem& c);

/**
 * Coefficients of the classical first-order form for systems with
 * g(x) = x (that is, l == 0).  Returns 2k+1 values gamma_1 ..
 * gamma_2k+1 with gamma_{i+1} = alpha_i / (i+1), the term-wise
 * antiderivative of the damping polynomial.
 *
 * Throws std::invalid_argument when l > 0.
 */
std::vector<double> to_classical(const LienardSystem& sys);

enum class SymmetryClass {
    none,
    x_axis, // all alpha vanish: time-reversible about the x-axis
    y_axis, // even alpha and odd beta vanish: mirror-symmetric in x
};

/// Exact coefficient test; either symmetry forces a center at the origin.
SymmetryClass symmetry_class(const LienardSystem& sys);

const char* symmetry_name(SymmetryClass s);

/// (P, Q) as explicit bivariate polynomials.
std::pair<BivariatePoly, BivariatePoly> field_polynomials(const LienardSystem& sys);

/// Which coefficient slot is treated as the symbolic parameter.
struct ParamSlot {
    enum Kind { alpha, beta } kind = alpha;
    int index = 0; // subscript: alpha_index or beta_index
};

/**
 * Canonical field with one even damping slot symbolic.  slot.index
 * must name an even alpha subscript (0, 2, ..., 2k); the remaining
 * slots take their values from c.
 */
std::pair<ParametricPoly, ParametricPoly>
canonical_field_with_slot(const CanonicalSystem& c, const ParamSlot& slot);

/**
 * The odd-restoring rotation form: even damping slots absent, odd
 * damping slots pinned to 1, with one odd restoring slot symbolic.
 * slot.index must name an odd beta subscript (1, 3, ..., 2l-1).
 */
std::pair<ParametricPoly, ParametricPoly>
beta_rotation_field_with_slot(const CanonicalSystem& c, const ParamSlot& slot);

} // namespace lienard::polysys

namespace lienard {
using polysys::CanonicalSystem;
using polysys::LienardSystem;
using polysys::ParamSlot;
using polysys::SymmetryClass;
using polysys::beta_rotation_field_with_slot;
using polysys::canonical_field_with_slot;
using polysys::expand_canonical;
using polysys::field_polynomials;
using polysys::symmetry_class;
using polysys::symmetry_name;
using polysys::to_classical;
} // namespace lienard
