#pragma once

#include <utility>
#include <vector>

#include "risp/core.hpp"
#include "risp/unipoly.hpp"

namespace risp {

// Bivariate polynomial with dense coefficient storage, coeff(j,k) = coefficient
// of z1^j z2^k.  The bidegree is derived from the trimmed support.
class BiPoly {
public:
    BiPoly() = default;

    // rows[j][k] <-> z1^j z2^k
    explicit BiPoly(std::vector<std::vector<Cpx>> rows) {
        size_t cols = 0;
        for (const auto& r : rows) cols = std::max(cols, r.size());
        m_ = rows.size() == 0 ? 0 : rows.size() - 1;
        n_ = cols == 0 ? 0 : cols - 1;
        c_.assign((m_ + 1) * (n_ + 1), Cpx(0.0, 0.0));
        for (size_t j = 0; j < rows.size(); ++j)
            for (size_t k = 0; k < rows[j].size(); ++k) at(j, k) = rows[j][k];
        trim();
    }

    static BiPoly zero() { return BiPoly(); }
    static BiPoly constant(Cpx v) { return BiPoly({{v}}); }
    static BiPoly z1() { return BiPoly({{Cpx(0, 0)}, {Cpx(1, 0)}}); }
    static BiPoly z2() { return BiPoly({{Cpx(0, 0), Cpx(1, 0)}}); }

    // Embeds a univariate polynomial in z2 (times an optional power of z1).
    static BiPoly from_z2_poly(const UniPoly& q, int z1_power = 0) {
        std::vector<std::vector<Cpx>> rows(static_cast<size_t>(z1_power) + 1);
        std::vector<Cpx> row(static_cast<size_t>(std::max(q.degree(), 0)) + 1, Cpx(0, 0));
        for (int k = 0; k <= q.degree(); ++k) row[static_cast<size_t>(k)] = q.coeff(k);
        rows.back() = std::move(row);
        return BiPoly(std::move(rows));
    }

    bool is_zero() const { return c_.empty(); }
    int degree1() const { return is_zero() ? -1 : static_cast<int>(m_); }
    int degree2() const { return is_zero() ? -1 : static_cast<int>(n_); }

    Cpx coeff(int j, int k) const {
        if (is_zero() || j < 0 || k < 0 || j > static_cast<int>(m_) || k > static_cast<int>(n_))
            return Cpx(0.0, 0.0);
        return c_[static_cast<size_t>(j) * (n_ + 1) + static_cast<size_t>(k)];
    }

    double coeff_scale() const {
        double s = 0.0;
        for (const Cpx& c : c_) s = std::max(s, std::abs(c));
        return s;
    }

    // Horner in z1 whose coefficients are Horner evaluations in z2.
    Cpx eval(Cpx v1, Cpx v2) const {
        if (is_zero()) return Cpx(0.0, 0.0);
        Cpx acc(0.0, 0.0);
        for (size_t j = m_ + 1; j-- > 0;) {
            Cpx row(0.0, 0.0);
            for (size_t k = n_ + 1; k-- > 0;) row = row * v2 + c_[j * (n_ + 1) + k];
            acc = acc * v1 + row;
        }
        return acc;
    }

    // z2 := lambda, polynomial in z1.
    UniPoly restrict_fiber(Cpx lambda) const {
        if (is_zero()) return UniPoly::zero();
        std::vector<Cpx> r(m_ + 1);
        for (size_t j = 0; j <= m_; ++j) {
            Cpx row(0.0, 0.0);
            for (size_t k = n_ + 1; k-- > 0;) row = row * lambda + c_[j * (n_ + 1) + k];
            r[j] = row;
        }
        return UniPoly(std::move(r));
    }

    BiPoly derivative_z1() const {
        if (degree1() < 1) return zero();
        std::vector<std::vector<Cpx>> rows(m_);
        for (size_t j = 1; j <= m_; ++j)
            for (int k = 0; k <= degree2(); ++k)
                rows[j - 1].push_back(static_cast<double>(j) *
                                      coeff(static_cast<int>(j), k));
        return BiPoly(std::move(rows));
    }

    // For z1-degree <= 1: p = p1(z2) + z1 p2(z2).
    std::pair<UniPoly, UniPoly> split_p1_p2() const {
        if (degree1() > 1) throw DegreeError("split_p1_p2: z1-degree exceeds 1");
        std::vector<Cpx> a, b;
        for (int k = 0; k <= degree2(); ++k) {
            a.push_back(coeff(0, k));
            b.push_back(coeff(1, k));
        }
        return {UniPoly(std::move(a)), UniPoly(std::move(b))};
    }

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b) { return combine(a, b, 1.0); }
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b) { return combine(a, b, -1.0); }
    friend BiPoly operator*(Cpx s, const BiPoly& a) {
        BiPoly r = a;
        for (Cpx& c : r.c_) c *= s;
        r.trim();
        return r;
    }
    friend BiPoly operator-(const BiPoly& a) { return Cpx(-1.0, 0.0) * a; }

    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        BiPoly r;
        r.m_ = a.m_ + b.m_;
        r.n_ = a.n_ + b.n_;
        r.c_.assign((r.m_ + 1) * (r.n_ + 1), Cpx(0.0, 0.0));
        for (size_t j1 = 0; j1 <= a.m_; ++j1)
            for (size_t k1 = 0; k1 <= a.n_; ++k1) {
                Cpx ca = a.c_[j1 * (a.n_ + 1) + k1];
                if (ca == Cpx(0.0, 0.0)) continue;
                for (size_t j2 = 0; j2 <= b.m_; ++j2)
                    for (size_t k2 = 0; k2 <= b.n_; ++k2)
                        r.c_[(j1 + j2) * (r.n_ + 1) + (k1 + k2)] +=
                            ca * b.c_[j2 * (b.n_ + 1) + k2];
            }
        r.trim();
        return r;
    }

private:
    Cpx& at(size_t j, size_t k) { return c_[j * (n_ + 1) + k]; }

    static BiPoly combine(const BiPoly& a, const BiPoly& b, double sign) {
        BiPoly r;
        r.m_ = static_cast<size_t>(std::max(std::max(a.degree1(), b.degree1()), 0));
        r.n_ = static_cast<size_t>(std::max(std::max(a.degree2(), b.degree2()), 0));
        r.c_.assign((r.m_ + 1) * (r.n_ + 1), Cpx(0.0, 0.0));
        for (size_t j = 0; j <= r.m_; ++j)
            for (size_t k = 0; k <= r.n_; ++k)
                r.at(j, k) = a.coeff(static_cast<int>(j), static_cast<int>(k)) +
                             sign * b.coeff(static_cast<int>(j), static_cast<int>(k));
        r.trim();
        return r;
    }

    void trim() {
        double s = coeff_scale();
        const double tol = kCoeffTrim * s;
        int jm = -1, km = -1;
        for (size_t j = 0; j <= m_ && !c_.empty(); ++j)
            for (size_t k = 0; k <= n_; ++k)
                if (std::abs(c_[j * (n_ + 1) + k]) > tol) {
                    jm = std::max(jm, static_cast<int>(j));
                    km = std::max(km, static_cast<int>(k));
                }
        if (jm < 0) {
            c_.clear();
            m_ = n_ = 0;
            return;
        }
        if (jm == static_cast<int>(m_) && km == static_cast<int>(n_)) {
            for (Cpx& c : c_)
                if (std::abs(c) <= tol) c = Cpx(0.0, 0.0);
            return;
        }
        std::vector<Cpx> nc(static_cast<size_t>(jm + 1) * static_cast<size_t>(km + 1));
        for (int j = 0; j <= jm; ++j)
            for (int k = 0; k <= km; ++k) {
                Cpx v = c_[static_cast<size_t>(j) * (n_ + 1) + static_cast<size_t>(k)];
                nc[static_cast<size_t>(j) * static_cast<size_t>(km + 1) +
                   static_cast<size_t>(k)] = std::abs(v) <= tol ? Cpx(0.0, 0.0) : v;
            }
        c_ = std::move(nc);
        m_ = static_cast<size_t>(jm);
        n_ = static_cast<size_t>(km);
    }

    size_t m_ = 0, n_ = 0;
    std::vector<Cpx> c_;  // row-major, (m_+1) x (n_+1); empty <=> zero polynomial
};

// Reflection at declared bidegree (m,n): c~[j][k] = conj(c[m-j][n-k]).
inline BiPoly reflect(const BiPoly& p, int m, int n) {
    if (m < p.degree1() || n < p.degree2())
        throw DegreeError("reflect: declared bidegree below actual bidegree");
    std::vector<std::vector<Cpx>> rows(static_cast<size_t>(m) + 1,
                                       std::vector<Cpx>(static_cast<size_t>(n) + 1));
    for (int j = 0; j <= m; ++j)
        for (int k = 0; k <= n; ++k)
            rows[static_cast<size_t>(j)][static_cast<size_t>(k)] = std::conj(p.coeff(m - j, n - k));
    return BiPoly(std::move(rows));
}

inline double max_coeff_dist(const BiPoly& a, const BiPoly& b) {
    double m = 0.0;
    int d1 = std::max(a.degree1(), b.degree1());
    int d2 = std::max(a.degree2(), b.degree2());
    for (int j = 0; j <= d1; ++j)
        for (int k = 0; k <= d2; ++k) m = std::max(m, std::abs(a.coeff(j, k) - b.coeff(j, k)));
    return m;
}

}  // namespace risp
