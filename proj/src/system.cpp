#include "lienard/system.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lienard::polysys {

void LienardSystem::validate() const {
    if (k < 0 || l < 0)
        throw std::invalid_argument("LienardSystem: negative degree index");
    if (alpha.size() != static_cast<std::size_t>(2 * k + 1))
        throw std::invalid_argument("LienardSystem: alpha must have 2k+1 entries, got " +
                                    std::to_string(alpha.size()));
    if (beta.size() != static_cast<std::size_t>(2 * l))
        throw std::invalid_argument("LienardSystem: beta must have 2l entries, got " +
                                    std::to_string(beta.size()));
}

Polynomial LienardSystem::restoring() const {
    std::vector<double> factor(beta.size() + 1, 0.0);
    factor[0] = 1.0;
    for (std::size_t j = 0; j < beta.size(); ++j)
        factor[j + 1] = beta[j];
    return Polynomial({0.0, 1.0}) * Polynomial(std::move(factor));
}

Polynomial LienardSystem::damping() const {
    return Polynomial(alpha);
}

std::pair<double, double> LienardSystem::vector_field(double x, double y) const {
    // Horner on the two factors; avoids building Polynomial objects.
    double gfac = 0.0;
    for (std::size_t j = beta.size(); j-- > 0;)
        gfac = gfac * x + beta[j];
    gfac = gfac * x + 1.0;
    double h = 0.0;
    for (std::size_t i = alpha.size(); i-- > 0;)
        h = h * x + alpha[i];
    return {y, -x * gfac + y * h};
}

std::pair<double, double> LienardSystem::jacobian_on_axis(double x) const {
    return {damping().eval(x), restoring().derivative().eval(x)};
}

void CanonicalSystem::validate() const {
    if (k < 0 || l < 0)
        throw std::invalid_argument("CanonicalSystem: negative degree index");
    if (alpha_even.size() != static_cast<std::size_t>(k + 1))
        throw std::invalid_argument("CanonicalSystem: alpha_even must have k+1 entries");
    if (beta_odd.size() != static_cast<std::size_t>(l))
        throw std::invalid_argument("CanonicalSystem: beta_odd must have l entries");
    if (even_signs.size() != static_cast<std::size_t>(l))
        throw std::invalid_argument("CanonicalSystem: even_signs must have l entries");
    for (int s : even_signs)
        if (s != 1 && s != -1)
            throw std::invalid_argument("CanonicalSystem: even_signs entries must be +-1");
}

LienardSystem expand_canonical(const CanonicalSystem& c) {
    c.validate();
    LienardSystem sys;
    sys.k = c.k;
    sys.l = c.l;
    sys.alpha.assign(static_cast<std::size_t>(2 * c.k + 1), 1.0);
    for (int i = 0; i <= c.k; ++i)
        sys.alpha[static_cast<std::size_t>(2 * i)] = c.alpha_even[static_cast<std::size_t>(i)];
    sys.beta.assign(static_cast<std::size_t>(2 * c.l), 0.0);
    for (int j = 0; j < c.l; ++j) {
        sys.beta[static_cast<std::size_t>(2 * j)] = c.beta_odd[static_cast<std::size_t>(j)];
        sys.beta[static_cast<std::size_t>(2 * j + 1)] =
            static_cast<double>(c.even_signs[static_cast<std::size_t>(j)]);
    }
    return sys;
}

std::vector<double> to_classical(const LienardSystem& sys) {
    sys.validate();
    if (sys.l != 0)
        throw std::invalid_argument("to_classical: requires l == 0 (restoring g(x) = x)");
    std::vector<double> gamma(sys.alpha.size());
    for (std::size_t i = 0; i < sys.alpha.size(); ++i)
        gamma[i] = sys.alpha[i] / static_cast<double>(i + 1);
    return gamma;
}

SymmetryClass symmetry_class(const LienardSystem& sys) {
    sys.validate();
    bool alpha_zero = true;
    for (double a : sys.alpha)
        alpha_zero = alpha_zero && a == 0.0;
    if (alpha_zero)
        return SymmetryClass::x_axis;
    bool even_alpha_zero = true;
    for (std::size_t i = 0; i < sys.alpha.size(); i += 2)
        even_alpha_zero = even_alpha_zero && sys.alpha[i] == 0.0;
    bool odd_beta_zero = true;
    for (std::size_t j = 0; j < sys.beta.size(); j += 2)
        odd_beta_zero = odd_beta_zero && sys.beta[j] == 0.0;
    if (even_alpha_zero && odd_beta_zero)
        return SymmetryClass::y_axis;
    return SymmetryClass::none;
}

const char* symmetry_name(SymmetryClass s) {
    switch (s) {
    case SymmetryClass::x_axis:
        return "x-axis";
    case SymmetryClass::y_axis:
        return "y-axis";
    default:
        return "none";
    }
}

std::pair<BivariatePoly, BivariatePoly> field_polynomials(const LienardSystem& sys) {
    sys.validate();
    BivariatePoly p = BivariatePoly::term(0, 1, 1.0);
    BivariatePoly q;
    q.add_term(1, 0, -1.0);
    for (std::size_t j = 0; j < sys.beta.size(); ++j)
        q.add_term(static_cast<int>(j) + 2, 0, -sys.beta[j]);
    for (std::size_t i = 0; i < sys.alpha.size(); ++i)
        q.add_term(static_cast<int>(i), 1, sys.alpha[i]);
    return {p, q};
}

std::pair<ParametricPoly, ParametricPoly>
canonical_field_with_slot(const CanonicalSystem& c, const ParamSlot& slot) {
    c.validate();
    if (slot.kind != ParamSlot::alpha || slot.index % 2 != 0 || slot.index < 0 ||
        slot.index > 2 * c.k)
        throw std::invalid_argument(
            "canonical_field_with_slot: slot must be an even alpha subscript");
    LienardSystem sys = expand_canonical(c);
    sys.alpha[static_cast<std::size_t>(slot.index)] = 0.0; // symbolic slot
    auto [p, q] = field_polynomials(sys);
    return {ParametricPoly(p),
            ParametricPoly(q, BivariatePoly::term(slot.index, 1, 1.0))};
}

std::pair<ParametricPoly, ParametricPoly>
beta_rotation_field_with_slot(const CanonicalSystem& c, const ParamSlot& slot) {
    c.validate();
    if (slot.kind != ParamSlot::beta || slot.index % 2 != 1 || slot.index < 1 ||
        slot.index > 2 * c.l - 1)
        throw std::invalid_argument(
            "beta_rotation_field_with_slot: slot must be an odd beta subscript");
    LienardSystem sys = expand_canonical(c);
    for (std::size_t i = 0; i < sys.alpha.size(); i += 2)
        sys.alpha[i] = 0.0; // even damping absent in the rotation form
    sys.beta[static_cast<std::size_t>(slot.index - 1)] = 0.0; // symbolic slot
    auto [p, q] = field_polynomials(sys);
    // Q carries -x * beta_j x^j, so the mu-linear part is -x^(j+1).
    return {ParametricPoly(p),
            ParametricPoly(q, BivariatePoly::term(slot.index + 1, 0, -1.0))};
}

} // namespace lienard::polysys
