#pragma once

#include <random>
#include <vector>

#include "risp/risp.hpp"

namespace testutil {

using namespace risp;

// Phi = (-(2 z1 z2 - z1 - z2)/(2 - z1 - z2), z2)
inline Risp ex21() {
    BiPoly p({{Cpx(2, 0), Cpx(-1, 0)}, {Cpx(-1, 0), Cpx(0, 0)}});
    return build_risp_simple(build_rif(p, kPi));
}

// Phi = (-(3 z1 z2 - z1 - z2 - 1)/(3 - z1 - z2 - z1 z2), z2); Q_alpha == 0
inline Risp ex22() {
    BiPoly p({{Cpx(3, 0), Cpx(-1, 0)}, {Cpx(-1, 0), Cpx(-1, 0)}});
    return build_risp_simple(build_rif(p, kPi));
}

// Phi = ((3 z1 z2 - z1 - z2)/(3 - z1 - z2), z2); one rotation belt
inline Risp ex23() {
    BiPoly p({{Cpx(3, 0), Cpx(-1, 0)}, {Cpx(-1, 0), Cpx(0, 0)}});
    return build_risp_simple(build_rif(p, 0.0));
}

// Phi = (-z1 (2 z1 z2 - z1 - z2)/(2 - z1 - z2), z2), monomial-twisted
inline Risp ex41() {
    BiPoly p({{Cpx(2, 0), Cpx(-1, 0)}, {Cpx(-1, 0), Cpx(0, 0)}});
    return build_risp_monomial(build_rif(p, kPi, 1, 0));
}

inline BiPoly ex51_poly() {
    // 4 - z1 - 3 z2 - z1 z2 + z2^2
    return BiPoly({{Cpx(4, 0), Cpx(-3, 0), Cpx(1, 0)}, {Cpx(-1, 0), Cpx(-1, 0), Cpx(0, 0)}});
}

// Phi = (-ptilde/p, z2) with p = 4 - z1 - 3 z2 - z1 z2 + z2^2
inline Risp ex51() { return build_risp_simple(build_rif(ex51_poly(), kPi)); }

inline BiPoly ex52_poly() {
    // 4 - z1 (z2^3 - z2^2 + 3 z2 + 1)
    return BiPoly({{Cpx(4, 0), Cpx(0, 0), Cpx(0, 0), Cpx(0, 0)},
                   {Cpx(-1, 0), Cpx(-3, 0), Cpx(1, 0), Cpx(-1, 0)}});
}

// Two collapsing fibers, two rotation belts
inline Risp ex52() { return build_risp_simple(build_rif(ex52_poly(), 0.0)); }

// Synthetic map whose single belt is bounded by an identity fiber:
// p = (3 - z2) + z1 (z2 - 1), alpha = 0.
inline Risp identity_belt_map() {
    BiPoly p({{Cpx(3, 0), Cpx(-1, 0)}, {Cpx(-1, 0), Cpx(1, 0)}});
    return build_risp_simple(build_rif(p, 0.0));
}

inline Cpx rand_unit(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-kPi, kPi);
    return unit(u(rng));
}

inline Cpx rand_box(std::mt19937_64& rng, double half_width = 1.0) {
    std::uniform_real_distribution<double> u(-half_width, half_width);
    double re = u(rng), im = u(rng);
    return Cpx(re, im);
}

inline UniPoly rand_unipoly(std::mt19937_64& rng, int degree) {
    std::vector<Cpx> cs;
    for (int k = 0; k <= degree; ++k) cs.push_back(rand_box(rng));
    if (std::abs(cs.back()) < 0.1) cs.back() += Cpx(0.5, 0.0);
    return UniPoly(std::move(cs));
}

inline BiPoly rand_bipoly(std::mt19937_64& rng, int m, int n) {
    std::vector<std::vector<Cpx>> rows(static_cast<size_t>(m) + 1);
    for (auto& row : rows)
        for (int k = 0; k <= n; ++k) row.push_back(rand_box(rng));
    return BiPoly(std::move(rows));
}

// Random stable bidegree-(1,2) RISP: p1 with both roots outside the closed
// disk, p2 scaled so max_T |p2/p1| < 1.
inline Risp random_stable_risp12(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mag(1.15, 3.0), ang(-kPi, kPi), frac(0.2, 0.9);
    Cpx r1 = mag(rng) * unit(ang(rng));
    Cpx r2 = mag(rng) * unit(ang(rng));
    UniPoly p1 = UniPoly({r1 * r2, -(r1 + r2), Cpx(1, 0)});
    UniPoly p2 = rand_unipoly(rng, 2);
    double worst = 0.0;
    for (int k = 0; k < 512; ++k) {
        Cpx z = unit(-kPi + 2 * kPi * (k + 1) / 512.0);
        worst = std::max(worst, std::abs(p2.eval(z)) / std::abs(p1.eval(z)));
    }
    p2 = Cpx(frac(rng) / worst, 0.0) * p2;
    BiPoly p = BiPoly::from_z2_poly(p1, 0) + BiPoly::from_z2_poly(p2, 1);
    double alpha = ang(rng);
    return build_risp_simple(build_rif(p, alpha));
}

}  // namespace testutil
