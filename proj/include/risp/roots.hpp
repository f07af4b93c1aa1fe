#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "risp/core.hpp"
#include "risp/unipoly.hpp"

namespace risp {

struct Root {
    Cpx location;
    int multiplicity = 1;
};

struct RootSet {
    std::vector<Root> roots;
    double residual = 0.0;       // max |q(root)| over the set
    double residual_bound = 0.0; // bound declared at solve time
    std::string diagnostics;     // borderline cluster/multiplicity notes

    int total_multiplicity() const {
        int s = 0;
        for (const Root& r : roots) s += r.multiplicity;
        return s;
    }
};

struct CircleRoot {
    double angle = 0.0;  // radians in (-pi, pi]
    int multiplicity = 1;
};

struct CircleRootSet {
    std::vector<CircleRoot> angles;  // strictly increasing
    double tolerance = kTorusEps;

    bool contains(double t, double angle_tol = 1e-7) const {
        for (const CircleRoot& r : angles)
            if (circle_dist(r.angle, t) <= angle_tol) return true;
        return false;
    }
    int total_multiplicity() const {
        int s = 0;
        for (const CircleRoot& r : angles) s += r.multiplicity;
        return s;
    }
    bool empty() const { return angles.empty(); }
};

struct SolverOptions {
    double newton_tol = 1e-13;
    int max_iter = 200;
    double cluster_radius = kClusterRadius;
};

namespace detail {

// One Newton step per root with the Aberth-Ehrlich coupling term.
inline bool aberth_sweep(const UniPoly& q, const UniPoly& dq, std::vector<Cpx>& z, double tol) {
    const size_t d = z.size();
    double worst = 0.0;
    for (size_t i = 0; i < d; ++i) {
        Cpx qi = q.eval(z[i]);
        Cpx dqi = dq.eval(z[i]);
        if (std::abs(dqi) == 0.0) {
            z[i] += Cpx(1e-8, 1e-8);
            worst = 1.0;
            continue;
        }
        Cpx w = qi / dqi;
        Cpx s(0.0, 0.0);
        for (size_t j = 0; j < d; ++j) {
            if (j == i) continue;
            Cpx diff = z[i] - z[j];
            if (std::abs(diff) < 1e-300) diff = Cpx(1e-300, 0.0);
            s += 1.0 / diff;
        }
        Cpx denom = 1.0 - w * s;
        Cpx delta = std::abs(denom) < 1e-300 ? w : w / denom;
        z[i] -= delta;
        worst = std::max(worst, std::abs(delta) / (1.0 + std::abs(z[i])));
    }
    return worst <= tol;
}

// Newton refinement on the (m-1)th derivative pins multiple roots far more
// accurately than the mean of an Aberth cluster.
inline Cpx polish_multiple(const UniPoly& q, int mult, Cpx guess, double radius) {
    UniPoly g = q;
    for (int i = 0; i + 1 < mult; ++i) g = g.derivative();
    UniPoly dg = g.derivative();
    Cpx z = guess;
    for (int it = 0; it < 30; ++it) {
        Cpx gv = g.eval(z), dgv = dg.eval(z);
        if (std::abs(dgv) == 0.0) break;
        Cpx step = gv / dgv;
        z -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
    }
    return std::abs(z - guess) <= radius ? z : guess;
}

}  // namespace detail

// Aberth-Ehrlich simultaneous iteration from a perturbed-circle initialization,
// Newton-polished; clusters within cluster_radius merge into one root with the
// summed multiplicity.
inline RootSet all_roots(const UniPoly& q_in, const SolverOptions& opt = {}) {
    if (q_in.is_zero()) throw DegreeError("all_roots: zero polynomial");
    if (q_in.degree() < 1) throw DegreeError("all_roots: degree must be >= 1");

    RootSet out;
    const double scale = q_in.coeff_scale();
    out.residual_bound = 1e-8 * scale;

    // Strip exact roots at the origin before iterating.
    std::vector<Cpx> coeffs = q_in.coeffs();
    int zero_roots = 0;
    while (coeffs.size() > 1 && std::abs(coeffs.front()) <= kCoeffTrim * scale) {
        coeffs.erase(coeffs.begin());
        ++zero_roots;
    }
    UniPoly q{std::vector<Cpx>(coeffs)};
    const int d = q.degree();

    std::vector<Cpx> z;
    if (d >= 1) {
        const UniPoly dq = q.derivative();
        const double radius = std::pow(1.0 + std::abs(q.coeff(0) / q.coeff(d)), 1.0 / d);
        const double golden = 0.3819660112501051;
        z.resize(static_cast<size_t>(d));
        for (int k = 0; k < d; ++k) {
            double theta = 2.0 * kPi * (k + golden) / d;
            double r = radius * (1.0 + 2e-4 * std::fmod((k + 1) * golden, 1.0));
            z[static_cast<size_t>(k)] = r * unit(theta);
        }

        bool converged = false;
        for (int it = 0; it < opt.max_iter && !converged; ++it)
            converged = detail::aberth_sweep(q, dq, z, opt.newton_tol);
        if (!converged) {
            double res = 0.0;
            for (Cpx r : z) res = std::max(res, std::abs(q.eval(r)));
            if (res > out.residual_bound)
                throw SolverError("all_roots: no convergence after max_iter, best residual " +
                                  std::to_string(res));
        }
        // Newton polish.
        for (Cpx& r : z) {
            for (int it = 0; it < 3; ++it) {
                Cpx dv = dq.eval(r);
                if (std::abs(dv) == 0.0) break;
                Cpx step = q.eval(r) / dv;
                if (std::abs(step) > 10 * opt.cluster_radius) break;  // near-multiple root
                r -= step;
            }
        }
    }

    // Greedy transitive clustering at the pairwise radius.
    std::vector<Root> clusters;
    std::vector<bool> used(z.size(), false);
    for (size_t i = 0; i < z.size(); ++i) {
        if (used[i]) continue;
        std::vector<Cpx> members{z[i]};
        used[i] = true;
        bool grew = true;
        while (grew) {
            grew = false;
            for (size_t j = 0; j < z.size(); ++j) {
                if (used[j]) continue;
                for (Cpx m : members)
                    if (std::abs(z[j] - m) <= opt.cluster_radius) {
                        members.push_back(z[j]);
                        used[j] = true;
                        grew = true;
                        break;
                    }
            }
        }
        Cpx mean(0.0, 0.0);
        for (Cpx m : members) mean += m;
        mean /= static_cast<double>(members.size());
        clusters.push_back({mean, static_cast<int>(members.size())});
    }

    // A root of multiplicity m is only located to O(eps^{1/m}) by the sweep,
    // which can exceed the cluster radius for m >= 3.  Merge near-coincident
    // clusters when all derivatives below the combined multiplicity vanish to
    // machine noise at the jointly polished point; borderline separations are
    // surfaced in diagnostics, never decided silently.
    auto derivatives_vanish = [&q](Cpx at, int below_order) {
        UniPoly d = q;
        for (int j = 1; j < below_order; ++j) {
            d = d.derivative();
            double growth = std::pow(std::max(1.0, std::abs(at)), std::max(d.degree(), 0));
            if (std::abs(d.eval(at)) > 1e-9 * std::max(d.coeff_scale(), 1e-300) * growth)
                return false;
        }
        return true;
    };
    bool merged_any = true;
    while (merged_any) {
        merged_any = false;
        for (size_t i = 0; i < clusters.size() && !merged_any; ++i)
            for (size_t j = i + 1; j < clusters.size() && !merged_any; ++j) {
                if (std::abs(clusters[i].location - clusters[j].location) > 5e-3) continue;
                int m = clusters[i].multiplicity + clusters[j].multiplicity;
                Cpx guess = (clusters[i].location * static_cast<double>(clusters[i].multiplicity) +
                             clusters[j].location * static_cast<double>(clusters[j].multiplicity)) /
                            static_cast<double>(m);
                Cpx at = detail::polish_multiple(q, m, guess, 1e-2);
                if (std::abs(q.eval(at)) > out.residual_bound || !derivatives_vanish(at, m))
                    continue;
                out.diagnostics += "merged clusters separated by more than the cluster radius "
                                   "into one root of multiplicity " +
                                   std::to_string(m) + "\n";
                clusters[i] = {at, m};
                clusters.erase(clusters.begin() + static_cast<long>(j));
                merged_any = true;
            }
    }

    for (Root& c : clusters) {
        if (c.multiplicity >= 2) {
            c.location = detail::polish_multiple(q, c.multiplicity, c.location,
                                                 100 * opt.cluster_radius);
            double dscale = std::max(q.derivative().coeff_scale(), 1e-300);
            if (std::abs(q.derivative().eval(c.location)) > 1e-5 * dscale)
                out.diagnostics += "cluster at (" + std::to_string(c.location.real()) + "," +
                                   std::to_string(c.location.imag()) +
                                   ") has non-vanishing derivative; borderline multiplicity\n";
        }
        out.roots.push_back(c);
    }
    if (zero_roots > 0) out.roots.push_back({Cpx(0.0, 0.0), zero_roots});

    std::sort(out.roots.begin(), out.roots.end(), [](const Root& a, const Root& b) {
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    for (const Root& r : out.roots)
        out.residual = std::max(out.residual, std::abs(q_in.eval(r.location)));
    return out;
}

// Filters roots within eps_T of the unit circle, projects them onto it, and
// returns sorted angles in (-pi, pi] with multiplicities.
inline CircleRootSet unimodular_roots(const RootSet& rs, double eps_T = kTorusEps) {
    CircleRootSet out;
    out.tolerance = eps_T;
    std::vector<CircleRoot> raw;
    for (const Root& r : rs.roots) {
        if (std::abs(std::abs(r.location) - 1.0) > eps_T) continue;
        raw.push_back({angle_of(r.location), r.multiplicity});
    }
    std::sort(raw.begin(), raw.end(),
              [](const CircleRoot& a, const CircleRoot& b) { return a.angle < b.angle; });
    for (const CircleRoot& r : raw) {
        if (!out.angles.empty() && circle_dist(out.angles.back().angle, r.angle) <= 1e-9)
            out.angles.back().multiplicity += r.multiplicity;
        else
            out.angles.push_back(r);
    }
    return out;
}

inline bool has_root_in_closed_disk(const UniPoly& q, double eps_T = kTorusEps) {
    if (q.is_zero()) throw DegreeError("has_root_in_closed_disk: zero polynomial");
    if (q.degree() < 1) return false;  // nonzero constant
    RootSet rs = all_roots(q);
    for (const Root& r : rs.roots)
        if (std::abs(r.location) <= 1.0 + eps_T) return true;
    return false;
}

}  // namespace risp
