#pragma once

#include <array>
#include <string>
#include <vector>

#include "risp/core.hpp"
#include "risp/rif.hpp"

namespace risp {

struct StepResult {
    Cpx z1, z2;
    Cpx z1_raw, z2_raw;               // values before torus re-projection
    bool singular_encounter = false;  // value taken as a radial limit
};

namespace detail {

inline Cpx component_value(const Rif& f, Cpx z1, Cpx z2, bool& flagged) {
    if (on_torus(z1, 1e-7) && on_torus(z2, 1e-7) && f.is_singular_point(z1, z2)) {
        flagged = true;
        return boundary_value(f, z1, z2);
    }
    return f.eval(z1, z2);
}

}  // namespace detail

// One application of the mapping.  Points on T^2 that land within the
// singular tolerance of a singularity take the radial-limit value and are
// flagged; boundary points are re-projected to T to stop multiplicative drift.
inline StepResult step(const Risp& r, Cpx z1, Cpx z2) {
    StepResult out;
    bool flagged = false;
    Cpx w1 = detail::component_value(r.phi, z1, z2, flagged);
    Cpx w2 = z2;
    if (r.kind == RispKind::GeneralRim) w2 = detail::component_value(*r.second, z1, z2, flagged);
    out.z1_raw = w1;
    out.z2_raw = w2;
    out.z1 = on_torus(w1, 1e-7) ? project_to_circle(w1) : w1;
    out.z2 = on_torus(w2, 1e-7) ? project_to_circle(w2) : w2;
    out.singular_encounter = flagged;
    return out;
}

struct OrbitDataset {
    std::string map_id;
    std::vector<std::array<double, 2>> seeds;               // (t1, t2) in (-pi, pi]^2
    std::vector<std::vector<std::array<double, 2>>> frames; // frames[k][seed] = angles after k+1 steps
    std::vector<std::vector<std::array<Cpx, 2>>> raw_frames; // unprojected values (debug channel)
    std::vector<bool> divergence_flags;                      // persistent singular-fiber encounters
    int n_iters = 0;
};

// Pushforward of the vertical-line family {(a pi, t2)} under Phi^n, the
// figure pipeline.  Deterministic for fixed inputs.
inline OrbitDataset iterate_grid(const Risp& r, const std::vector<double>& vertical_lines,
                                 int points_per_line, int n) {
    if (n < 1) throw Error("iterate_grid: n must be >= 1");
    OrbitDataset out;
    out.map_id = r.map_id;
    out.n_iters = n;
    for (double a : vertical_lines)
        for (int k = 0; k < points_per_line; ++k) {
            double t2 = -kPi + 2.0 * kPi * (k + 1) / points_per_line;
            out.seeds.push_back({wrap_angle(a * kPi), t2});
        }
    out.divergence_flags.assign(out.seeds.size(), false);

    std::vector<std::array<Cpx, 2>> state(out.seeds.size());
    for (size_t i = 0; i < out.seeds.size(); ++i)
        state[i] = {unit(out.seeds[i][0]), unit(out.seeds[i][1])};

    out.frames.resize(static_cast<size_t>(n));
    out.raw_frames.resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        auto& frame = out.frames[static_cast<size_t>(k)];
        auto& raw = out.raw_frames[static_cast<size_t>(k)];
        frame.resize(state.size());
        raw.resize(state.size());
        for (size_t i = 0; i < state.size(); ++i) {
            StepResult s = step(r, state[i][0], state[i][1]);
            if (s.singular_encounter) out.divergence_flags[i] = true;
            raw[i] = {s.z1_raw, s.z2_raw};
            state[i] = {s.z1, s.z2};
            frame[i] = {angle_of(s.z1), angle_of(s.z2)};
        }
    }
    return out;
}

// Closed form of Phi^n for the map (-( 2 z1 z2 - z1 - z2)/(2 - z1 - z2), z2);
// exists solely as an oracle for iterate-engine tests.
inline std::pair<Cpx, Cpx> closed_form_phi_n_ex21(Cpx z1, Cpx z2, int n) {
    double p = std::pow(2.0, n);
    Cpx num = p * z1 * z2 - z1 - (p - 1.0) * z2;
    Cpx den = p - (p - 1.0) * z1 - z2;
    if (std::abs(den) < 1e-14) throw Error("closed_form_phi_n_ex21: denominator vanishes");
    return {-num / den, z2};
}

enum class LimitStatus { Converged, Periodic, Undecided };

struct LimitResult {
    LimitStatus status = LimitStatus::Undecided;
    Cpx z1, z2;      // limit point when converged
    int period = 0;  // when periodic
};

// Cauchy test on the orbit tail for convergence; tail matching for periods up
// to 64.
inline LimitResult detect_limit(const Risp& r, Cpx seed1, Cpx seed2, int n_max, double tol) {
    std::vector<std::array<Cpx, 2>> orbit{{seed1, seed2}};
    for (int k = 0; k < n_max; ++k) {
        StepResult s = step(r, orbit.back()[0], orbit.back()[1]);
        orbit.push_back({s.z1, s.z2});
        size_t m = orbit.size();
        if (std::abs(orbit[m - 1][0] - orbit[m - 2][0]) <= tol &&
            std::abs(orbit[m - 1][1] - orbit[m - 2][1]) <= tol) {
            // Confirm with one more step.
            StepResult c = step(r, s.z1, s.z2);
            if (std::abs(c.z1 - s.z1) <= tol && std::abs(c.z2 - s.z2) <= tol)
                return {LimitStatus::Converged, s.z1, s.z2, 0};
        }
    }
    const size_t m = orbit.size();
    for (int p = 1; p <= 64 && static_cast<size_t>(3 * p) < m; ++p) {
        bool ok = true;
        for (int j = 0; j < 2 * p && ok; ++j) {
            const auto& a = orbit[m - 1 - static_cast<size_t>(j)];
            const auto& b = orbit[m - 1 - static_cast<size_t>(j) - static_cast<size_t>(p)];
            ok = std::abs(a[0] - b[0]) <= tol && std::abs(a[1] - b[1]) <= tol;
        }
        if (ok && p > 1) return {LimitStatus::Periodic, orbit[m - 1][0], orbit[m - 1][1], p};
        if (ok && p == 1) return {LimitStatus::Converged, orbit[m - 1][0], orbit[m - 1][1], 0};
    }
    return {LimitStatus::Undecided, orbit[m - 1][0], orbit[m - 1][1], 0};
}

}  // namespace risp
