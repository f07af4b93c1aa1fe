#pragma once

#include <algorithm>
#include <initializer_list>
#include <vector>

#include "risp/core.hpp"

namespace risp {

// Univariate polynomial with complex coefficients, index k = coefficient of z^k.
// Coefficients whose modulus is below kCoeffTrim relative to the largest one are
// trimmed off the high end; the zero polynomial has degree() == -1.
class UniPoly {
public:
    UniPoly() = default;
    UniPoly(std::initializer_list<Cpx> cs) : c_(cs) { trim(); }
    explicit UniPoly(std::vector<Cpx> cs) : c_(std::move(cs)) { trim(); }

    static UniPoly zero() { return UniPoly(); }
    static UniPoly constant(Cpx v) { return UniPoly({v}); }
    static UniPoly monomial(int k, Cpx v = Cpx(1.0, 0.0)) {
        std::vector<Cpx> cs(static_cast<size_t>(k) + 1, Cpx(0.0, 0.0));
        cs.back() = v;
        return UniPoly(std::move(cs));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    Cpx coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(k)]
                                                           : Cpx(0.0, 0.0);
    }
    const std::vector<Cpx>& coeffs() const { return c_; }

    double coeff_scale() const {
        double s = 0.0;
        for (const Cpx& c : c_) s = std::max(s, std::abs(c));
        return s;
    }

    Cpx eval(Cpx z) const {
        Cpx acc(0.0, 0.0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * z + c_[i];
        return acc;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return zero();
        std::vector<Cpx> d(c_.size() - 1);
        for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
        return UniPoly(std::move(d));
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Cpx> r(std::max(a.c_.size(), b.c_.size()), Cpx(0.0, 0.0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        std::vector<Cpx> r(std::max(a.c_.size(), b.c_.size()), Cpx(0.0, 0.0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        std::vector<Cpx> r(a.c_.size() + b.c_.size() - 1, Cpx(0.0, 0.0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(Cpx s, const UniPoly& a) {
        std::vector<Cpx> r(a.c_);
        for (Cpx& c : r) c *= s;
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a) { return Cpx(-1.0, 0.0) * a; }

private:
    void trim() {
        double s = 0.0;
        for (const Cpx& c : c_) s = std::max(s, std::abs(c));
        const double tol = kCoeffTrim * s;
        while (!c_.empty() && std::abs(c_.back()) <= tol) c_.pop_back();
    }

    std::vector<Cpx> c_;
};

// Reflection at declared degree n: coefficient reversal with conjugation,
// q~(z) = z^n conj(q(1/conj(z))).  The degree must be declared because the
// result depends on n whenever the leading coefficient vanishes.
inline UniPoly reflect_uni(const UniPoly& q, int n) {
    if (n < q.degree())
        throw DegreeError("reflect_uni: declared degree below actual degree");
    std::vector<Cpx> r(static_cast<size_t>(n) + 1, Cpx(0.0, 0.0));
    for (int k = 0; k <= n; ++k) r[static_cast<size_t>(k)] = std::conj(q.coeff(n - k));
    return UniPoly(std::move(r));
}

// q(a z + b)
inline UniPoly compose_linear(const UniPoly& q, Cpx a, Cpx b) {
    UniPoly acc = UniPoly::zero();
    UniPoly lin({b, a});
    for (int k = q.degree(); k >= 0; --k) acc = acc * lin + UniPoly::constant(q.coeff(k));
    return acc;
}

inline double max_coeff_dist(const UniPoly& a, const UniPoly& b) {
    double m = 0.0;
    int deg = std::max(a.degree(), b.degree());
    for (int k = 0; k <= deg; ++k) m = std::max(m, std::abs(a.coeff(k) - b.coeff(k)));
    return m;
}

}  // namespace risp
