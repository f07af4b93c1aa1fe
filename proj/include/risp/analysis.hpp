#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "risp/bipoly.hpp"
#include "risp/core.hpp"
#include "risp/mobius.hpp"
#include "risp/rif.hpp"
#include "risp/roots.hpp"
#include "risp/unipoly.hpp"

namespace risp {

struct QPoly {
    UniPoly q;
    bool is_identically_zero = false;
    CircleRootSet circle_roots;
    std::map<double, int> vanishing_orders;  // circle-root angle -> order
};

inline QPoly q_alpha(const Risp& r) {
    if (!r.simple()) throw Error("q_alpha: simple kind required");
    QPoly out;
    out.q = q_alpha_poly(r.p1, r.p2, r.p1t, r.p2t, r.phi.alpha);
    out.is_identically_zero = out.q.is_zero();
    if (out.is_identically_zero) return out;
    if (out.q.degree() >= 1) out.circle_roots = unimodular_roots(all_roots(out.q), r.torus_eps);
    for (const CircleRoot& cr : out.circle_roots.angles)
        out.vanishing_orders[cr.angle] =
            vanishing_order_at(out.q, unit(cr.angle), out.q.degree() + 1);
    return out;
}

// P_alpha = e^{i alpha} ptilde - z1 p, the bivariate fixed-point polynomial of
// the skew-product.  Zeros on T^2 are exactly the fixed points together with
// the singular points.
inline BiPoly fixed_point_polynomial(const Risp& r) {
    return r.phi.phase() * r.phi.ptilde - BiPoly::z1() * r.phi.p;
}

// The two fixed-point branches, i.e. the roots of
// p2 t^2 + (p1 - e^{ia} p1~) t - e^{ia} p2~ = 0:
//     psi^{1,2} = (e^{ia} p1~ - p1 +- sqrt(Q_alpha)) / (2 p2).
// sqrt_hint selects the branch of the square root by continuity (phase
// unwrapping against the previous sample); pass nullptr for principal.
inline std::pair<Cpx, Cpx> psi_branches(const Risp& r, Cpx lambda, Cpx* sqrt_hint = nullptr) {
    if (!r.simple()) throw Error("psi_branches: simple kind required");
    Cpx p2v = r.p2.eval(lambda);
    if (std::abs(p2v) <= kSingularEps * std::max(r.p2.coeff_scale(), 1e-300))
        throw LambdaSharpPoint("psi_branches: p2(lambda) = 0");
    const Cpx e = r.phi.phase();
    Cpx s = e * r.p1t.eval(lambda) - r.p1.eval(lambda);
    Cpx qv = q_alpha_poly(r.p1, r.p2, r.p1t, r.p2t, r.phi.alpha).eval(lambda);
    Cpx root = std::sqrt(qv);
    if (sqrt_hint != nullptr) {
        if (std::abs(root - *sqrt_hint) > std::abs(-root - *sqrt_hint)) root = -root;
        *sqrt_hint = root;
    }
    return {(s + root) / (2.0 * p2v), (s - root) / (2.0 * p2v)};
}

enum class SampleClass {
    HyperbolicAttracting,
    HyperbolicRepelling,
    Parabolic,
    EllipticInterior,
    EllipticExterior,
    IdentityFiber,
};

inline const char* to_string(SampleClass c) {
    switch (c) {
        case SampleClass::HyperbolicAttracting: return "hyperbolic-attracting";
        case SampleClass::HyperbolicRepelling: return "hyperbolic-repelling";
        case SampleClass::Parabolic: return "parabolic";
        case SampleClass::EllipticInterior: return "elliptic-interior";
        case SampleClass::EllipticExterior: return "elliptic-exterior";
        case SampleClass::IdentityFiber: return "identity-fiber";
    }
    return "?";
}

inline std::optional<SampleClass> sample_class_from_string(const std::string& s) {
    for (SampleClass c :
         {SampleClass::HyperbolicAttracting, SampleClass::HyperbolicRepelling,
          SampleClass::Parabolic, SampleClass::EllipticInterior, SampleClass::EllipticExterior,
          SampleClass::IdentityFiber})
        if (s == to_string(c)) return c;
    return std::nullopt;
}

struct CurveSample {
    double lambda_angle = 0.0;
    Cpx z1;
    bool on_torus = false;
    SampleClass cls = SampleClass::Parabolic;
    Cpx multiplier;
};

struct FixedPointCurve {
    int branch = 1;
    std::vector<CurveSample> samples;
    std::vector<double> branch_point_angles;  // unimodular zeros of Q_alpha
};

namespace detail {

inline SampleClass classify_sample(const MobiusMap& fm, Cpx z1, Cpx& multiplier_out) {
    multiplier_out = fm.derivative_at(z1);
    if (fm.kind == MobiusKind::Identity) return SampleClass::IdentityFiber;
    if (on_torus(z1, kTorusEps * 10)) {
        double m = std::abs(multiplier_out);
        if (std::abs(m - 1.0) <= 1e-6) return SampleClass::Parabolic;
        return m < 1.0 ? SampleClass::HyperbolicAttracting : SampleClass::HyperbolicRepelling;
    }
    return std::abs(z1) < 1.0 ? SampleClass::EllipticInterior : SampleClass::EllipticExterior;
}

inline std::vector<double> excluded_angles(const Risp& r) {
    std::vector<double> ex;
    for (const CircleRoot& cr : r.lambda_flat.angles) ex.push_back(cr.angle);
    for (const CircleRoot& cr : r.lambda_sharp.angles) ex.push_back(cr.angle);
    return ex;
}

}  // namespace detail

// Samples lambda over (-pi, pi] minus exclusion disks of radius 1e-4 around
// Lambda-flat and Lambda-sharp, evaluating both psi branches and classifying
// each sample via the fiber map.  Branch 1 carries the repelling (resp.
// exterior) fixed point, branch 2 the attracting (resp. interior) one; the
// roles cannot flip inside an arc between branch points, and at branch points
// (circle roots of Q_alpha, recorded in branch_point_angles) the curves meet
// and may swap.
inline std::pair<FixedPointCurve, FixedPointCurve> trace_fixed_curves(const Risp& r,
                                                                      int n_samples = 4096) {
    if (!r.simple()) throw Error("trace_fixed_curves: simple kind required");
    QPoly q = q_alpha(r);
    if (q.is_identically_zero)
        throw QIdenticallyZero(
            "trace_fixed_curves: Q_alpha is identically zero; every regular fiber is parabolic "
            "(use the parabolic line instead)");

    const double exclusion = 1e-4;
    std::vector<double> excluded = detail::excluded_angles(r);

    FixedPointCurve c1, c2;
    c1.branch = 1;
    c2.branch = 2;
    for (const CircleRoot& cr : q.circle_roots.angles) {
        c1.branch_point_angles.push_back(cr.angle);
        c2.branch_point_angles.push_back(cr.angle);
    }

    for (int k = 0; k < n_samples; ++k) {
        double t = -kPi + 2.0 * kPi * (k + 1) / n_samples;
        bool skip = false;
        for (double ex : excluded)
            if (circle_dist(t, ex) < exclusion) skip = true;
        if (skip) continue;
        Cpx lambda = unit(t);
        std::pair<Cpx, Cpx> psi = psi_branches(r, lambda);
        MobiusMap fm = fiber_map(r, lambda);
        bool both_torus =
            on_torus(psi.first, 10 * kTorusEps) && on_torus(psi.second, 10 * kTorusEps);
        bool swap_branches =
            both_torus
                ? std::abs(fm.derivative_at(psi.first)) < std::abs(fm.derivative_at(psi.second))
                : std::abs(psi.first) < std::abs(psi.second);
        if (swap_branches) std::swap(psi.first, psi.second);
        CurveSample s1, s2;
        s1.lambda_angle = s2.lambda_angle = t;
        s1.z1 = psi.first;
        s2.z1 = psi.second;
        s1.on_torus = on_torus(psi.first, kTorusEps * 10);
        s2.on_torus = on_torus(psi.second, kTorusEps * 10);
        s1.cls = detail::classify_sample(fm, s1.z1, s1.multiplier);
        s2.cls = detail::classify_sample(fm, s2.z1, s2.multiplier);
        c1.samples.push_back(s1);
        c2.samples.push_back(s2);
    }
    return {c1, c2};
}

// Degenerate Q_alpha == 0 case: the single parabolic branch
// z1(lambda) = (e^{ia} p1~ - p1) / (2 p2).
inline FixedPointCurve parabolic_line(const Risp& r, int n_samples = 4096) {
    if (!r.simple()) throw Error("parabolic_line: simple kind required");
    const double exclusion = 1e-4;
    std::vector<double> excluded = detail::excluded_angles(r);
    FixedPointCurve c;
    c.branch = 1;
    for (int k = 0; k < n_samples; ++k) {
        double t = -kPi + 2.0 * kPi * (k + 1) / n_samples;
        bool skip = false;
        for (double ex : excluded)
            if (circle_dist(t, ex) < exclusion) skip = true;
        if (skip) continue;
        Cpx lambda = unit(t);
        Cpx p2v = r.p2.eval(lambda);
        if (std::abs(p2v) <= kSingularEps * std::max(r.p2.coeff_scale(), 1e-300)) continue;
        CurveSample s;
        s.lambda_angle = t;
        s.z1 = (r.phi.phase() * r.p1t.eval(lambda) - r.p1.eval(lambda)) / (2.0 * p2v);
        s.on_torus = on_torus(s.z1, kTorusEps * 10);
        MobiusMap fm = fiber_map(r, lambda);
        s.cls = detail::classify_sample(fm, s.z1, s.multiplier);
        c.samples.push_back(s);
    }
    return c;
}

struct MultiplierEntry {
    double lambda_angle = 0.0;
    Cpx multiplier;
};

struct RationalRotationFlag {
    double lambda_angle = 0.0;
    int numerator = 0;   // arg(multiplier)/pi ~ numerator/denominator
    int denominator = 1;
};

struct MultiplierProfile {
    std::vector<MultiplierEntry> entries;
    std::vector<RationalRotationFlag> rational_flags;
    std::vector<double> continuity_defect_angles;  // jumps away from excluded sets
};

inline MultiplierProfile multiplier_profile(const Risp& r, const FixedPointCurve& curve) {
    MultiplierProfile out;
    std::vector<double> excluded = detail::excluded_angles(r);
    QPoly q = q_alpha(r);
    for (const CircleRoot& cr : q.circle_roots.angles) excluded.push_back(cr.angle);

    Cpx prev;
    bool have_prev = false;
    double prev_angle = 0.0;
    for (const CurveSample& s : curve.samples) {
        MobiusMap fm = fiber_map(r, unit(s.lambda_angle));
        Cpx mult = fm.derivative_at(s.z1);
        out.entries.push_back({s.lambda_angle, mult});

        if (std::abs(std::abs(mult) - 1.0) <= 1e-6) {
            double x = std::arg(mult) / kPi;
            for (int den = 1; den <= 64; ++den) {
                double num = std::round(x * den);
                if (std::abs(x - num / den) <= 1e-6) {
                    out.rational_flags.push_back({s.lambda_angle, static_cast<int>(num), den});
                    break;
                }
            }
        }
        if (have_prev && std::abs(mult - prev) > 0.25) {
            bool near_excluded = false;
            for (double ex : excluded)
                if (circle_dist(s.lambda_angle, ex) < 0.05 || circle_dist(prev_angle, ex) < 0.05)
                    near_excluded = true;
            if (!near_excluded) out.continuity_defect_angles.push_back(s.lambda_angle);
        }
        prev = mult;
        prev_angle = s.lambda_angle;
        have_prev = true;
    }
    return out;
}

enum class BeltBoundaryKind { Parabolic, IdentityFiber };

inline const char* to_string(BeltBoundaryKind k) {
    return k == BeltBoundaryKind::Parabolic ? "parabolic" : "identity-fiber";
}

struct Belt {
    double start_angle = 0.0;  // (-pi, pi]
    double end_angle = 0.0;    // start + arc length, may exceed pi for wrapped belts
    BeltBoundaryKind start_kind = BeltBoundaryKind::Parabolic;
    BeltBoundaryKind end_kind = BeltBoundaryKind::Parabolic;
};

struct BeltReport {
    std::vector<Belt> belts;
    int qa_circle_root_count_excl_flat = 0;
    int bound = 0;
    bool bound_satisfied = true;
    bool q_identically_zero = false;
};

namespace detail {

enum class BoundaryRole {
    Terminator,   // fiber carries a fixed point on T (parabolic or identity)
    MergeThrough, // rotation fiber with no fixed points on T
    Collapsing,   // Lambda-flat: a belt can neither contain nor abut it
};

struct BoundaryAngle {
    double angle = 0.0;
    BoundaryRole role = BoundaryRole::Terminator;
    BeltBoundaryKind kind = BeltBoundaryKind::Parabolic;
};

inline BoundaryAngle classify_boundary(const Risp& r, const QPoly& q, double angle) {
    BoundaryAngle b;
    b.angle = angle;
    if (r.lambda_flat.contains(angle)) {
        b.role = BoundaryRole::Collapsing;
        return b;
    }
    MobiusMap fm = fiber_map(r, unit(angle));
    if (fm.kind == MobiusKind::Identity) {
        b.role = BoundaryRole::Terminator;
        b.kind = BeltBoundaryKind::IdentityFiber;
        return b;
    }
    if (fm.kind == MobiusKind::Rotation) {
        // Near-identity rotations are ambiguous between the two boundary kinds.
        double rot = std::abs(fm.multipliers.front() - Cpx(1.0, 0.0));
        if (rot > kDegenerateEps && rot < 1e-7)
            throw AmbiguousBoundary("rotation fiber within tolerance of the identity");
        b.role = BoundaryRole::MergeThrough;
        return b;
    }
    const double qscale = std::max(q.q.coeff_scale(), 1e-300);
    if (std::abs(q.q.eval(unit(angle))) <= 1e-6 * qscale) {
        b.role = BoundaryRole::Terminator;
        b.kind = BeltBoundaryKind::Parabolic;
        return b;
    }
    throw AmbiguousBoundary("boundary fiber is neither parabolic, identity, rotation "
                            "nor collapsing within tolerance");
}

inline bool arc_fixed_point_free(const Risp& r, double start, double end) {
    for (int i = 1; i <= 9; ++i) {
        double t = start + (end - start) * i / 10.0;
        Cpx lambda = unit(t);
        if (std::abs(r.p2.eval(lambda)) <= 1e-12 * std::max(r.p2.coeff_scale(), 1e-300))
            continue;  // rotation fiber inside the arc carries no fixed point
        auto [a, b] = psi_branches(r, lambda);
        if (std::abs(std::abs(a) - 1.0) <= 1e-6 || std::abs(std::abs(b) - 1.0) <= 1e-6)
            return false;
    }
    return true;
}

}  // namespace detail

// Partitions T by the angles of (Z(Q_alpha) on T) u Lambda-flat u Lambda-sharp,
// tests each open arc for unimodular fixed points, merges fixed-point-free arcs
// across rotation fibers, and keeps maximal runs bounded by fixed-point-carrying
// fibers (Theorem 4.10 bound checked against the circle roots off Lambda-flat).
inline BeltReport rotation_belts(const Risp& r) {
    if (!r.simple()) throw Error("rotation_belts: simple kind required");
    BeltReport out;
    QPoly q = q_alpha(r);
    if (q.is_identically_zero) {
        out.q_identically_zero = true;
        return out;
    }

    for (const CircleRoot& cr : q.circle_roots.angles)
        if (!r.lambda_flat.contains(cr.angle))
            out.qa_circle_root_count_excl_flat += cr.multiplicity;
    out.bound = out.qa_circle_root_count_excl_flat / 2;

    // Partition angles, deduplicated.
    std::vector<double> angles;
    auto push = [&angles](double t) {
        for (double a : angles)
            if (circle_dist(a, t) <= 1e-9) return;
        angles.push_back(t);
    };
    for (const CircleRoot& cr : q.circle_roots.angles) push(cr.angle);
    for (const CircleRoot& cr : r.lambda_flat.angles) push(cr.angle);
    for (const CircleRoot& cr : r.lambda_sharp.angles) push(cr.angle);
    std::sort(angles.begin(), angles.end());

    if (angles.empty()) {
        out.bound_satisfied = true;
        return out;  // no candidate boundary fibers, hence no belts
    }

    const size_t n = angles.size();
    std::vector<detail::BoundaryAngle> bounds;
    bounds.reserve(n);
    for (double t : angles) bounds.push_back(detail::classify_boundary(r, q, t));

    std::vector<bool> free_arc(n);
    for (size_t i = 0; i < n; ++i) {
        double start = angles[i];
        double end = i + 1 < n ? angles[i + 1] : angles[0] + 2.0 * kPi;
        free_arc[i] = detail::arc_fixed_point_free(r, start, end);
    }

    // Arc i runs from boundary i to boundary (i+1) mod n.  Adjacent free arcs
    // merge exactly across a rotation fiber (no fixed points on T there).
    std::vector<bool> joined(n);
    for (size_t b = 0; b < n; ++b)
        joined[b] = bounds[b].role == detail::BoundaryRole::MergeThrough &&
                    free_arc[(b + n - 1) % n] && free_arc[b];

    for (size_t i0 = 0; i0 < n; ++i0) {
        if (!free_arc[i0] || joined[i0]) continue;  // not a run start
        size_t last = i0;
        size_t steps = 0;
        while (joined[(last + 1) % n] && steps < n) {
            last = (last + 1) % n;
            ++steps;
        }
        const detail::BoundaryAngle& lo = bounds[i0];
        const detail::BoundaryAngle& hi = bounds[(last + 1) % n];
        if (lo.role != detail::BoundaryRole::Terminator ||
            hi.role != detail::BoundaryRole::Terminator)
            continue;  // abuts a collapsing fiber or has no fixed-point boundary
        Belt b;
        b.start_angle = lo.angle;
        b.end_angle = hi.angle > lo.angle + 1e-15 ? hi.angle : hi.angle + 2.0 * kPi;
        b.start_kind = lo.kind;
        b.end_kind = hi.kind;
        out.belts.push_back(b);
    }
    std::sort(out.belts.begin(), out.belts.end(),
              [](const Belt& a, const Belt& b) { return a.start_angle < b.start_angle; });
    out.bound_satisfied = static_cast<int>(out.belts.size()) <= out.bound;
    return out;
}

// General-RIM fixed-point machinery: P1 = e^{ia1} p1~ - z1 p1 and
// P2 = e^{ia2} p2~ - z2 p2, their essential T^2-symmetry, the Bezout bound
// 2 n1 n2 + n1 + n2, and a torus-grid estimate of common zeros.
struct RimFixedData {
    BiPoly P1, P2;
    bool symmetric_ok_1 = false, symmetric_ok_2 = false;
    int bezout_bound = 0;
    std::vector<std::pair<Cpx, Cpx>> common_zero_estimate;
    bool p2_identically_zero = false;
    bool common_factor_suspected = false;
};

inline RimFixedData rim_fixed_data(const Rif& f1, const Rif& f2) {
    RimFixedData out;
    out.P1 = f1.phase() * f1.ptilde - BiPoly::z1() * f1.p;
    out.P2 = f2.phase() * f2.ptilde - BiPoly::z2() * f2.p;

    const int n1 = std::max(f1.deg1, f2.deg1);
    const int n2 = std::max(f1.deg2, f2.deg2);
    out.bezout_bound = 2 * n1 * n2 + n1 + n2;

    auto check_sym = [](const BiPoly& P, double alpha, int m, int n) {
        if (P.is_zero()) return true;
        BiPoly want = -unit(-alpha) * P;
        BiPoly got = reflect(P, std::max(P.degree1(), m), std::max(P.degree2(), n));
        return max_coeff_dist(got, want) <= 1e-10 * std::max(P.coeff_scale(), 1.0);
    };
    out.symmetric_ok_1 = check_sym(out.P1, f1.alpha, f1.deg1 + 1, f1.deg2);
    out.symmetric_ok_2 = check_sym(out.P2, f2.alpha, f2.deg1, f2.deg2 + 1);

    if (out.P2.is_zero()) {
        out.p2_identically_zero = true;
        return out;
    }

    const double s1 = std::max(out.P1.coeff_scale(), 1e-300);
    const double s2 = std::max(out.P2.coeff_scale(), 1e-300);
    auto height = [&](double t1, double t2) {
        Cpx z1 = unit(t1), z2 = unit(t2);
        return std::max(std::abs(out.P1.eval(z1, z2)) / s1, std::abs(out.P2.eval(z1, z2)) / s2);
    };
    const int grid = 256;
    std::vector<std::pair<double, double>> hits;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            double t1 = -kPi + 2.0 * kPi * (i + 1) / grid;
            double t2 = -kPi + 2.0 * kPi * (j + 1) / grid;
            if (height(t1, t2) <= 2e-2) hits.push_back({t1, t2});
        }
    // A shared factor leaves a curve's worth of grid hits; a zero-dimensional
    // intersection only a handful of clusters.
    std::vector<std::pair<double, double>> clusters;
    for (const auto& h : hits) {
        bool merged = false;
        for (auto& c : clusters)
            if (circle_dist(h.first, c.first) + circle_dist(h.second, c.second) < 0.2)
                merged = true;
        if (!merged) clusters.push_back(h);
    }
    if (static_cast<int>(clusters.size()) > 4 * out.bezout_bound) {
        out.common_factor_suspected = true;
        return out;
    }
    // Refine each cluster by shrinking coordinate search on the torus and keep
    // only genuine common zeros.
    for (auto& c : clusters) {
        double step = 2.0 * kPi / grid;
        double best = height(c.first, c.second);
        while (step > 1e-12) {
            bool improved = false;
            for (int dx : {-1, 0, 1})
                for (int dy : {-1, 0, 1}) {
                    if (dx == 0 && dy == 0) continue;
                    double v = height(c.first + step * dx, c.second + step * dy);
                    if (v < best) {
                        best = v;
                        c.first += step * dx;
                        c.second += step * dy;
                        improved = true;
                    }
                }
            if (!improved) step *= 0.5;
        }
        if (best <= 1e-8) {
            Cpx z1 = unit(c.first), z2 = unit(c.second);
            bool dup = false;
            for (const auto& z : out.common_zero_estimate)
                if (std::abs(z.first - z1) + std::abs(z.second - z2) < 1e-6) dup = true;
            if (!dup) out.common_zero_estimate.push_back({z1, z2});
        }
    }
    return out;
}

}  // namespace risp
