#pragma once

#include <string>
#include <vector>

#include "risp/core.hpp"

namespace risp {

enum class MobiusKind {
    Identity,
    Rotation,   // z -> e^{i beta} z with b, c ~ 0
    Elliptic,   // one fixed point in D, its reflection outside
    Parabolic,  // one fixed point on T, multiplier 1
    Hyperbolic, // two fixed points on T, multipliers p and 1/p
    Constant,   // degenerate: |det| ~ 0 (collapsing fiber)
};

inline const char* to_string(MobiusKind k) {
    switch (k) {
        case MobiusKind::Identity: return "identity";
        case MobiusKind::Rotation: return "rotation";
        case MobiusKind::Elliptic: return "elliptic";
        case MobiusKind::Parabolic: return "parabolic";
        case MobiusKind::Hyperbolic: return "hyperbolic";
        case MobiusKind::Constant: return "constant";
    }
    return "?";
}

// z -> (a z + b) / (c z + d)
struct MobiusMap {
    Cpx a, b, c, d;
    Cpx det;
    MobiusKind kind = MobiusKind::Identity;
    std::vector<Cpx> fixed_points;  // interior first for elliptic
    std::vector<Cpx> multipliers;   // aligned with fixed_points

    Cpx apply(Cpx z) const { return (a * z + b) / (c * z + d); }
    Cpx derivative_at(Cpx z) const {
        Cpx q = c * z + d;
        return det / (q * q);
    }
    double scale() const {
        return std::max(std::max(std::abs(a), std::abs(b)), std::max(std::abs(c), std::abs(d)));
    }
};

// Classification order: constant -> identity -> rotation -> parabolic ->
// hyperbolic/elliptic by the fixed-point quadratic c t^2 + (d-a) t - b = 0.
// Parabolic is asserted only when the discriminant is below threshold AND the
// multiplier is within 1e-6 of 1.
inline MobiusMap classify_mobius(Cpx a, Cpx b, Cpx c, Cpx d) {
    MobiusMap m{a, b, c, d, a * d - b * c};
    const double s = m.scale();
    const double s2 = std::max(s * s, 1e-300);

    if (std::abs(m.det) <= kDegenerateEps * s2) {
        m.kind = MobiusKind::Constant;
        return m;
    }
    const double tol = kDegenerateEps * s;
    if (std::abs(b) <= tol && std::abs(c) <= tol) {
        m.kind = std::abs(a - d) <= tol ? MobiusKind::Identity : MobiusKind::Rotation;
        m.fixed_points = {Cpx(0.0, 0.0)};
        m.multipliers = {a / d};
        return m;
    }

    const Cpx disc = (d - a) * (d - a) + 4.0 * c * b;
    if (std::abs(disc) <= 1e-9 * s2) {
        Cpx t = std::abs(c) > tol ? (a - d) / (2.0 * c) : b / (d - a);
        Cpx mult = m.derivative_at(t);
        if (std::abs(mult - 1.0) <= 1e-6) {
            m.kind = MobiusKind::Parabolic;
            m.fixed_points = {t};
            m.multipliers = {mult};
            return m;
        }
    }

    Cpx r = std::sqrt(disc);
    Cpx t1 = ((a - d) + r) / (2.0 * c);
    Cpx t2 = ((a - d) - r) / (2.0 * c);
    if (std::abs(t1) > std::abs(t2)) std::swap(t1, t2);
    m.fixed_points = {t1, t2};
    m.multipliers = {m.derivative_at(t1), m.derivative_at(t2)};
    const bool both_on_t = std::abs(std::abs(t1) - 1.0) <= 1e-6 && std::abs(std::abs(t2) - 1.0) <= 1e-6;
    m.kind = both_on_t ? MobiusKind::Hyperbolic : MobiusKind::Elliptic;
    return m;
}

}  // namespace risp
