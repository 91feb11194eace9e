#include "lienard/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lienard::polysys {

namespace {
constexpr double kTrimEps = 0.0; // exact zeros only; callers own rounding
}

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    trim();
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == kTrimEps)
        c_.pop_back();
}

double Polynomial::coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : 0.0;
}

int Polynomial::degree() const {
    return static_cast<int>(c_.size()) - 1;
}

bool Polynomial::is_zero() const {
    return c_.empty();
}

double Polynomial::eval(double x) const {
    double acc = 0.0;
    for (std::size_t i = c_.size(); i-- > 0;)
        acc = acc * x + c_[i];
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1)
        return Polynomial{};
    std::vector<double> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        d[i - 1] = c_[i] * static_cast<double>(i);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
    if (c_.empty())
        return Polynomial{};
    std::vector<double> a(c_.size() + 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        a[i + 1] = c_[i] / static_cast<double>(i + 1);
    return Polynomial(std::move(a));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = coeff(i) + o.coeff(i);
    return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = coeff(i) - o.coeff(i);
    return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (c_.empty() || o.c_.empty())
        return Polynomial{};
    std::vector<double> r(c_.size() + o.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] += c_[i] * o.c_[j];
    return Polynomial(std::move(r));
}

Polynomial& Polynomial::operator*=(double s) {
    for (double& v : c_)
        v *= s;
    trim();
    return *this;
}

bool Polynomial::operator==(const Polynomial& o) const {
    return c_ == o.c_;
}

std::vector<double> real_roots(const Polynomial& p) {
    if (p.is_zero())
        throw std::invalid_argument("real_roots: zero polynomial");
    const auto& c = p.coeffs();
    const int n = p.degree();
    if (n == 0)
        return {};

    // Companion matrix of the monic normalization.
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        m(i, n - 1) = -c[static_cast<std::size_t>(i)] / c[static_cast<std::size_t>(n)];
    for (int i = 1; i < n; ++i)
        m(i, i - 1) = 1.0;

    Eigen::EigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("real_roots: eigensolver failed");

    // Scale for the realness test: magnitude of the largest eigenvalue.
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        scale = std::max(scale, std::abs(es.eigenvalues()[i]));
    const double imag_tol = 1e-8 * (1.0 + scale);

    const Polynomial dp = p.derivative();
    std::vector<double> roots;
    for (int i = 0; i < n; ++i) {
        const auto ev = es.eigenvalues()[i];
        if (std::abs(ev.imag()) > imag_tol)
            continue;
        double x = ev.real();
        // Newton polish; bail out if the step ever grows (multiple root).
        for (int it = 0; it < 50; ++it) {
            const double f = p.eval(x);
            const double d = dp.eval(x);
            if (d == 0.0)
                break;
            const double step = f / d;
            if (!std::isfinite(step))
                break;
            x -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(x)))
                break;
        }
        roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace lienard::polysys
