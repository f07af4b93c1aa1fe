#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "risp/bipoly.hpp"
#include "risp/core.hpp"
#include "risp/mobius.hpp"
#include "risp/roots.hpp"
#include "risp/unipoly.hpp"

namespace risp {

// A validated rational inner function e^{i alpha} z1^{beta1} z2^{beta2} ptilde/p,
// with p zero-free in the open bidisk.  Atorality of p is a documented
// precondition, not verified here.
struct Rif {
    double alpha = 0.0;
    int beta1 = 0, beta2 = 0;
    BiPoly p;
    BiPoly ptilde;  // reflection of p at the declared bidegree
    int deg1 = 0, deg2 = 0;

    Cpx phase() const { return unit(alpha); }

    // Direct evaluation; not for use at singular points (see boundary_value).
    Cpx eval(Cpx z1, Cpx z2) const {
        Cpx mono(1.0, 0.0);
        for (int i = 0; i < beta1; ++i) mono *= z1;
        for (int i = 0; i < beta2; ++i) mono *= z2;
        return phase() * mono * ptilde.eval(z1, z2) / p.eval(z1, z2);
    }

    bool is_singular_point(Cpx z1, Cpx z2) const {
        const double tol = kSingularEps * std::max(p.coeff_scale(), ptilde.coeff_scale());
        return std::abs(p.eval(z1, z2)) <= tol && std::abs(ptilde.eval(z1, z2)) <= tol;
    }
};

struct StabilityResult {
    bool ok = true;
    Cpx z1, z2;  // witness with p(z1,z2) ~ 0 in the open bidisk when !ok
};

namespace detail {

// For z1-degree <= 1 the fiber z1-root is -p1/p2; p is zero-free in D^2 iff
// |p2| <= |p1| there.  Checks a circle grid and a polar grid of the open disk.
inline StabilityResult stability_fibered(const BiPoly& p) {
    auto [p1, p2] = p.split_p1_p2();
    if (p1.is_zero())
        return {false, Cpx(0.0, 0.0), Cpx(0.0, 0.0)};  // p = z1 p2 vanishes at z1=0
    if (p2.is_zero()) {
        // p depends on z2 only; stable iff p1 has no roots in the closed disk.
        if (p1.degree() >= 1 && has_root_in_closed_disk(p1)) {
            for (const Root& r : all_roots(p1).roots)
                if (std::abs(r.location) < 1.0) return {false, Cpx(0.0, 0.0), r.location};
            // Root on T only: approach radially.
            for (const Root& r : all_roots(p1).roots)
                if (std::abs(std::abs(r.location) - 1.0) <= kTorusEps)
                    return {false, Cpx(0.0, 0.0), 0.999999 * project_to_circle(r.location)};
        }
        return {};
    }

    if (p1.degree() >= 1 && has_root_in_closed_disk(p1)) {
        for (const Root& r : all_roots(p1).roots) {
            if (std::abs(r.location) >= 1.0 - kTorusEps) continue;
            Cpx z2 = r.location;
            // p(z1, z2) = z1 p2(z2): zero at z1 = 0 unless p2 also vanishes.
            if (std::abs(p2.eval(z2)) > 0.0) return {false, Cpx(0.0, 0.0), z2};
        }
        // Interior zero exists arbitrarily close to a boundary root of p1;
        // search radially inward for a concrete witness.
        for (const Root& r : all_roots(p1).roots) {
            if (std::abs(std::abs(r.location) - 1.0) > kTorusEps) continue;
            for (double shrink : {0.9, 0.99, 0.999, 0.9999}) {
                Cpx z2 = shrink * project_to_circle(r.location);
                Cpx root1 = -p1.eval(z2) / p2.eval(z2);
                if (std::abs(root1) < 1.0 - 1e-12)
                    return {false, root1, z2};
            }
        }
    }

    auto witness_at = [&](Cpx z2) -> std::optional<StabilityResult> {
        Cpx root1 = -p1.eval(z2) / p2.eval(z2);
        if (std::abs(z2) >= 1.0) {
            // On the circle: shrink inward until the witness is interior.
            for (double shrink : {0.999, 0.99, 0.9, 0.5}) {
                Cpx w2 = shrink * z2;
                Cpx w1 = -p1.eval(w2) / p2.eval(w2);
                if (std::abs(w1) < 1.0 - 1e-12) return StabilityResult{false, w1, w2};
            }
            return std::nullopt;
        }
        if (std::abs(root1) < 1.0 - 1e-12) return StabilityResult{false, root1, z2};
        return std::nullopt;
    };

    for (int k = 0; k < 4096; ++k) {
        Cpx z2 = unit(-kPi + 2.0 * kPi * (k + 1) / 4096.0);
        if (std::abs(p2.eval(z2)) > (1.0 + kTorusEps) * std::abs(p1.eval(z2)))
            if (auto w = witness_at(z2)) return *w;
    }
    for (int ir = 1; ir <= 64; ++ir)
        for (int ia = 0; ia < 64; ++ia) {
            Cpx z2 = (ir / 65.0) * unit(-kPi + 2.0 * kPi * (ia + 1) / 64.0);
            if (std::abs(p2.eval(z2)) > (1.0 + 1e-12) * std::abs(p1.eval(z2)))
                if (auto w = witness_at(z2)) return *w;
        }
    return {};
}

// Grid scan over the closed bidisk with refinement around near-zeros.
// Documented heuristic for z1-degree >= 2.
inline StabilityResult stability_scan(const BiPoly& p) {
    const double scale = std::max(p.coeff_scale(), 1e-300);
    double best = 1e300;
    Cpx bz1, bz2;
    for (int r1 = 0; r1 <= 8; ++r1)
        for (int a1 = 0; a1 < 16; ++a1)
            for (int r2 = 0; r2 <= 8; ++r2)
                for (int a2 = 0; a2 < 16; ++a2) {
                    Cpx z1 = (r1 / 8.0) * unit(2.0 * kPi * a1 / 16.0);
                    Cpx z2 = (r2 / 8.0) * unit(2.0 * kPi * a2 / 16.0);
                    double v = std::abs(p.eval(z1, z2));
                    if (v < best) { best = v; bz1 = z1; bz2 = z2; }
                }
    // Local refinement via shrinking coordinate search.
    double step = 0.15;
    while (step > 1e-10) {
        bool improved = false;
        for (int dx : {-1, 0, 1})
            for (int dy : {-1, 0, 1})
                for (int du : {-1, 0, 1})
                    for (int dv : {-1, 0, 1}) {
                        Cpx z1 = bz1 + step * Cpx(dx, dy);
                        Cpx z2 = bz2 + step * Cpx(du, dv);
                        if (std::abs(z1) >= 1.0 || std::abs(z2) >= 1.0) continue;
                        double v = std::abs(p.eval(z1, z2));
                        if (v < best) { best = v; bz1 = z1; bz2 = z2; improved = true; }
                    }
        if (!improved) step *= 0.5;
    }
    if (best <= kSingularEps * scale && std::abs(bz1) < 1.0 - 1e-9 && std::abs(bz2) < 1.0 - 1e-9)
        return {false, bz1, bz2};
    return {};
}

}  // namespace detail

inline StabilityResult validate_stability(const BiPoly& p) {
    if (p.is_zero()) return {false, Cpx(0, 0), Cpx(0, 0)};
    if (p.degree1() <= 1) return detail::stability_fibered(p);
    return detail::stability_scan(p);
}

// Reflection is taken at the declared bidegree (defaults to the support
// bidegree); declaring a larger one changes ptilde by a monomial factor.
inline Rif build_rif(const BiPoly& p, double alpha, int beta1 = 0, int beta2 = 0,
                     int declared_m = -1, int declared_n = -1) {
    StabilityResult st = validate_stability(p);
    if (!st.ok)
        throw UnstableDenominator("denominator has a zero in the open bidisk", st.z1, st.z2);
    Rif r;
    r.alpha = alpha;
    r.beta1 = beta1;
    r.beta2 = beta2;
    r.p = p;
    r.deg1 = std::max(declared_m, std::max(p.degree1(), 0));
    r.deg2 = std::max(declared_n, std::max(p.degree2(), 0));
    r.ptilde = reflect(p, r.deg1, r.deg2);
    return r;
}

// Second component of the trivial skew-product, phi2(z) = z2.
inline Rif identity_component() {
    return build_rif(BiPoly::constant({1, 0}), 0.0, 0, 0, 0, 1);
}

enum class RispKind { Simple, MonomialTwisted, GeneralRim };

inline const char* to_string(RispKind k) {
    switch (k) {
        case RispKind::Simple: return "simple";
        case RispKind::MonomialTwisted: return "monomial-twisted";
        case RispKind::GeneralRim: return "rim";
    }
    return "?";
}

// Q_alpha = (p1 - e^{i alpha} p1~)^2 + 4 e^{i alpha} p2 p2~, the discriminant of
// the fiber fixed-point quadratic.  Cancellation dust below 1e-12 of the
// summand scale collapses to the zero polynomial.
inline UniPoly q_alpha_poly(const UniPoly& p1, const UniPoly& p2, const UniPoly& p1t,
                            const UniPoly& p2t, double alpha) {
    const Cpx e = unit(alpha);
    UniPoly u = p1 - e * p1t;
    UniPoly a = u * u;
    UniPoly b = (4.0 * e) * (p2 * p2t);
    UniPoly q = a + b;
    if (q.coeff_scale() <= 1e-12 * std::max(a.coeff_scale(), b.coeff_scale()))
        return UniPoly::zero();
    return q;
}

// A rational inner mapping of the bidisk.  Simple kind is the skew-product
// (phi(z1,z2), z2) with phi of z1-degree exactly 1; that case caches the
// p1/p2 decomposition and the collapse data everything downstream uses.
struct Risp {
    RispKind kind = RispKind::Simple;
    Rif phi;
    std::optional<Rif> second;  // general RIM only

    // simple-kind caches
    UniPoly p1, p2, p1t, p2t;
    UniPoly D;  // degeneracy polynomial p1 p1~ - p2 p2~; unimodular zeros = collapsing fibers
    CircleRootSet lambda_flat;
    CircleRootSet lambda_sharp;
    double torus_eps = kTorusEps;  // circle-membership tolerance used throughout
    std::string map_id = "risp";

    bool simple() const { return kind == RispKind::Simple; }
};

inline Risp build_risp_simple(const Rif& phi, double torus_eps = kTorusEps) {
    if (phi.p.degree1() != 1)
        throw DegreeError("build_risp_simple: z1-degree of p must be exactly 1");
    if (phi.beta1 != 0 || phi.beta2 != 0)
        throw DegreeError("build_risp_simple: monomial exponents must vanish for simple kind");
    Risp r;
    r.kind = RispKind::Simple;
    r.phi = phi;
    r.torus_eps = torus_eps;
    std::tie(r.p1, r.p2) = phi.p.split_p1_p2();
    const int n = phi.deg2;
    r.p1t = reflect_uni(r.p1, n);
    r.p2t = reflect_uni(r.p2, n);
    r.D = r.p1 * r.p1t - r.p2 * r.p2t;
    if (r.D.is_zero())
        throw Error("build_risp_simple: degeneracy polynomial vanishes identically "
                    "(denominator is not atoral)");
    r.lambda_flat =
        r.D.degree() >= 1 ? unimodular_roots(all_roots(r.D), torus_eps) : CircleRootSet{};
    r.lambda_sharp =
        r.p2.degree() >= 1 ? unimodular_roots(all_roots(r.p2), torus_eps) : CircleRootSet{};
    return r;
}

inline Risp build_risp_monomial(const Rif& phi) {
    if (phi.beta1 < 1) throw DegreeError("build_risp_monomial: beta1 must be >= 1");
    Risp r;
    r.kind = RispKind::MonomialTwisted;
    r.phi = phi;
    return r;
}

inline Risp build_risp_rim(const Rif& phi1, const Rif& phi2) {
    Risp r;
    r.kind = RispKind::GeneralRim;
    r.phi = phi1;
    r.second = phi2;
    return r;
}

// Fiber map z1 -> phi(z1, lambda) as a Moebius transformation,
// (a z1 + b)/(c z1 + d) with a = e^{ia} p1~, b = e^{ia} p2~, c = p2, d = p1.
inline MobiusMap fiber_map(const Risp& r, Cpx lambda) {
    if (!r.simple()) throw Error("fiber_map: simple kind required");
    const Cpx e = r.phi.phase();
    return classify_mobius(e * r.p1t.eval(lambda), e * r.p2t.eval(lambda), r.p2.eval(lambda),
                           r.p1.eval(lambda));
}

// Nontangential boundary value of a RIF at zeta in T^2.  Nonsingular points
// evaluate directly; singular points use a radial-limit estimate with
// geometric extrapolation.
inline Cpx boundary_value(const Rif& f, Cpx zeta1, Cpx zeta2) {
    if (!on_torus(zeta1, 1e-6) || !on_torus(zeta2, 1e-6))
        throw Error("boundary_value: point is not on the 2-torus");
    zeta1 = project_to_circle(zeta1);
    zeta2 = project_to_circle(zeta2);
    if (!f.is_singular_point(zeta1, zeta2)) return f.eval(zeta1, zeta2);

    Cpx prev(0.0, 0.0), cur(0.0, 0.0);
    double prev_gap = 1e300;
    for (int k = 8; k <= 20; ++k) {
        double rr = 1.0 - std::pow(2.0, -k);
        Cpx v = f.eval(rr * zeta1, rr * zeta2);
        if (!is_finite(v)) throw NonconvergentLimit("boundary_value: radial sample not finite");
        prev = cur;
        cur = v;
        if (k > 9) {
            double gap = std::abs(cur - prev);
            if (gap > prev_gap * 1.5 && gap > 1e-9)
                throw NonconvergentLimit("boundary_value: radial samples not Cauchy");
            prev_gap = std::max(gap, 1e-300);
        }
    }
    // Error halves per step along the radial sequence; extrapolate geometrically.
    Cpx limit = cur + (cur - prev);
    return limit;
}

enum class SfCrossing { SingleBranch, TwoBranch, Undetermined };

inline const char* to_string(SfCrossing c) {
    switch (c) {
        case SfCrossing::SingleBranch: return "single-branch";
        case SfCrossing::TwoBranch: return "two-branch";
        case SfCrossing::Undetermined: return "undetermined";
    }
    return "?";
}

// A singular point (tau1, lambda) sitting in a collapsing fiber, with the
// branch structure of the fixed-point set at lambda read off from the
// vanishing order of Q_alpha.
struct SfPoint {
    Cpx tau1;
    Cpx lambda;
    double lambda_angle = 0.0;
    SfCrossing crossing = SfCrossing::Undetermined;
    std::optional<int> q_order;      // unset when Q_alpha is identically zero
    Cpx boundary_val;                // radial boundary value of phi at (tau1, lambda)
};

inline int vanishing_order_at(const UniPoly& q, Cpx lambda, int max_order) {
    const double scale = std::max(q.coeff_scale(), 1e-300);
    UniPoly d = q;
    for (int k = 0; k < max_order; ++k) {
        if (std::abs(d.eval(lambda)) > 1e-6 * scale) return k;
        d = d.derivative();
        if (d.is_zero()) return max_order;
    }
    return max_order;
}

inline std::vector<SfPoint> sf_points(const Risp& r) {
    if (!r.simple()) throw Error("sf_points: simple kind required");
    UniPoly q = q_alpha_poly(r.p1, r.p2, r.p1t, r.p2t, r.phi.alpha);
    std::vector<SfPoint> out;
    for (const CircleRoot& cr : r.lambda_flat.angles) {
        Cpx lambda = unit(cr.angle);
        Cpx p2v = r.p2.eval(lambda);
        if (std::abs(p2v) <= kSingularEps * std::max(r.p2.coeff_scale(), 1e-300)) continue;
        Cpx tau1 = -r.p1.eval(lambda) / p2v;
        if (std::abs(std::abs(tau1) - 1.0) > 1e-8)
            throw NonUnimodularTau(
                "sf_points: computed tau1 is not unimodular (denominator likely not atoral)");
        SfPoint sp;
        sp.tau1 = tau1;
        sp.lambda = lambda;
        sp.lambda_angle = cr.angle;
        if (q.is_zero()) {
            sp.crossing = SfCrossing::Undetermined;
        } else {
            int order = vanishing_order_at(q, lambda, q.degree() + 1);
            sp.q_order = order;
            if (order == 0)
                sp.crossing = SfCrossing::SingleBranch;
            else if (order % 2 == 0)
                sp.crossing = SfCrossing::TwoBranch;
            else
                sp.crossing = SfCrossing::Undetermined;
        }
        sp.boundary_val = boundary_value(r.phi, tau1, lambda);
        out.push_back(sp);
    }
    return out;
}

// Chooses alpha so that e^{i alpha} ptilde/p has boundary value tau1 at tau.
inline double normalize_alpha_for_sf(const BiPoly& p, Cpx tau1, Cpx tau2) {
    Rif raw;  // unvalidated carrier for the radial evaluation of ptilde/p
    raw.alpha = 0.0;
    raw.p = p;
    raw.deg1 = std::max(p.degree1(), 0);
    raw.deg2 = std::max(p.degree2(), 0);
    raw.ptilde = reflect(p, raw.deg1, raw.deg2);
    Cpx u = boundary_value(raw, tau1, tau2);  // radial limit of ptilde/p at tau
    if (std::abs(u) < 1e-12) throw NonconvergentLimit("normalize_alpha_for_sf: ptilde/p -> 0");
    return angle_of(tau1 / u);
}

}  // namespace risp
