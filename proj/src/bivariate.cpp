#include "lienard/bivariate.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lienard::polysys {

BivariatePoly BivariatePoly::term(int xdeg, int ydeg, double coeff) {
    BivariatePoly p;
    p.add_term(xdeg, ydeg, coeff);
    return p;
}

double BivariatePoly::coeff(int i, int j) const {
    auto it = t_.find({i, j});
    return it == t_.end() ? 0.0 : it->second;
}

void BivariatePoly::add_term(int xdeg, int ydeg, double coeff) {
    if (coeff == 0.0)
        return;
    auto [it, inserted] = t_.try_emplace({xdeg, ydeg}, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0.0)
            t_.erase(it);
    }
}

double BivariatePoly::eval(double x, double y) const {
    double acc = 0.0;
    for (const auto& [key, c] : t_)
        acc += c * std::pow(x, key.first) * std::pow(y, key.second);
    return acc;
}

BivariatePoly BivariatePoly::operator+(const BivariatePoly& o) const {
    BivariatePoly r = *this;
    for (const auto& [key, c] : o.t_)
        r.add_term(key.first, key.second, c);
    return r;
}

BivariatePoly BivariatePoly::operator-(const BivariatePoly& o) const {
    BivariatePoly r = *this;
    for (const auto& [key, c] : o.t_)
        r.add_term(key.first, key.second, -c);
    return r;
}

BivariatePoly BivariatePoly::operator*(const BivariatePoly& o) const {
    BivariatePoly r;
    for (const auto& [ka, ca] : t_)
        for (const auto& [kb, cb] : o.t_)
            r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
}

BivariatePoly BivariatePoly::operator*(double s) const {
    BivariatePoly r;
    for (const auto& [key, c] : t_)
        r.add_term(key.first, key.second, c * s);
    return r;
}

std::string BivariatePoly::str() const {
    if (t_.empty())
        return "0";
    // Highest total degree first, then higher x degree first.
    std::vector<std::pair<Key, double>> ordered(t_.begin(), t_.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        const int ta = a.first.first + a.first.second;
        const int tb = b.first.first + b.first.second;
        if (ta != tb)
            return ta > tb;
        return a.first.first > b.first.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : ordered) {
        double mag = std::abs(c);
        if (first) {
            if (c < 0)
                os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        const bool bare = key.first == 0 && key.second == 0;
        if (mag != 1.0 || bare) {
            os << mag;
            if (!bare)
                os << " ";
        }
        if (key.first > 0) {
            os << "x";
            if (key.first > 1)
                os << "^" << key.first;
            if (key.second > 0)
                os << " ";
        }
        if (key.second > 0) {
            os << "y";
            if (key.second > 1)
                os << "^" << key.second;
        }
    }
    return os.str();
}

ParametricPoly::ParametricPoly(BivariatePoly constant) {
    parts_.push_back(std::move(constant));
}

ParametricPoly::ParametricPoly(BivariatePoly constant, BivariatePoly linear) {
    parts_.push_back(std::move(constant));
    parts_.push_back(std::move(linear));
}

const BivariatePoly& ParametricPoly::mu_part(std::size_t d) const {
    static const BivariatePoly zero;
    return d < parts_.size() ? parts_[d] : zero;
}

void ParametricPoly::set_mu_part(std::size_t d, BivariatePoly p) {
    if (parts_.size() <= d)
        parts_.resize(d + 1);
    parts_[d] = std::move(p);
}

int ParametricPoly::mu_degree() const {
    for (std::size_t d = parts_.size(); d-- > 0;)
        if (!parts_[d].is_zero())
            return static_cast<int>(d);
    return -1;
}

BivariatePoly ParametricPoly::at(double mu) const {
    BivariatePoly r;
    double w = 1.0;
    for (const auto& part : parts_) {
        r = r + part * w;
        w *= mu;
    }
    return r;
}

BivariatePoly rotation_determinant(const ParametricPoly& p, const ParametricPoly& q) {
    if (p.mu_degree() > 1 || q.mu_degree() > 1)
        throw std::invalid_argument(
            "rotation_determinant: parameter must appear linearly");
    // For P = P0 + mu P1, Q = Q0 + mu Q1:
    //   P Q_mu - Q P_mu = P0 Q1 - Q0 P1  (the mu terms cancel).
    return p.mu_part(0) * q.mu_part(1) - q.mu_part(0) * p.mu_part(1);
}

} // namespace lienard::polysys
