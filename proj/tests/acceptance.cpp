// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion.  Exit code 0 iff all pass.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"

using namespace risp;
using namespace testutil;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void note(const std::string& s) { g_notes.push_back(s); }

void criterion(int id, const std::string& what, const std::function<bool()>& body) {
    g_notes.clear();
    bool ok = false;
    std::string error;
    try {
        ok = body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
    if (!ok) {
        ++g_failures;
        for (const std::string& n : g_notes) std::printf("       %s\n", n.c_str());
        if (!error.empty()) std::printf("       exception: %s\n", error.c_str());
    }
    std::fflush(stdout);
}

bool coeffs_match(const UniPoly& got, const UniPoly& want, double rel_tol) {
    if (got.degree() != want.degree()) {
        note("degree mismatch: got " + std::to_string(got.degree()) + ", want " +
             std::to_string(want.degree()));
        return false;
    }
    double err = max_coeff_dist(got, want) / want.coeff_scale();
    if (err > rel_tol) {
        note("coefficientwise relative error " + std::to_string(err));
        return false;
    }
    return true;
}

bool root_present(const RootSet& rs, Cpx where, int mult, double tol = 1e-8) {
    for (const Root& r : rs.roots)
        if (std::abs(r.location - where) <= tol && r.multiplicity == mult) return true;
    note("missing root near (" + std::to_string(where.real()) + "," +
         std::to_string(where.imag()) + ") with multiplicity " + std::to_string(mult));
    return false;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(RISP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    return WEXITSTATUS(std::system(cmd.c_str()));
}

// --- criteria -------------------------------------------------------------

bool crit1_q_exactness() {
    bool ok = true;
    ok &= coeffs_match(q_alpha(ex23()).q, UniPoly({{16, 0}, {-28, 0}, {16, 0}}), 1e-10);
    ok &= coeffs_match(q_alpha(ex51()).q,
                       UniPoly({{25, 0}, {-64, 0}, {78, 0}, {-64, 0}, {25, 0}}), 1e-10);
    ok &= coeffs_match(q_alpha(ex52()).q,
                       UniPoly({{20, 0}, {8, 0}, {-4, 0}, {16, 0}, {-4, 0}, {8, 0}, {20, 0}}),
                       1e-10);
    return ok;
}

bool crit2_root_recovery() {
    bool ok = true;
    RootSet r23 = all_roots(q_alpha(ex23()).q);
    double s15 = std::sqrt(15.0) / 8.0;
    ok &= root_present(r23, {7.0 / 8.0, s15}, 1);
    ok &= root_present(r23, {7.0 / 8.0, -s15}, 1);

    RootSet r51 = all_roots(q_alpha(ex51()).q);
    ok &= root_present(r51, {1, 0}, 2);
    ok &= root_present(r51, {7.0 / 25.0, 24.0 / 25.0}, 1);
    ok &= root_present(r51, {7.0 / 25.0, -24.0 / 25.0}, 1);

    RootSet r52 = all_roots(q_alpha(ex52()).q);
    ok &= root_present(r52, {-1, 0}, 2);
    ok &= root_present(r52, {0, 1}, 1);
    ok &= root_present(r52, {0, -1}, 1);
    ok &= root_present(r52, {4.0 / 5.0, 3.0 / 5.0}, 1);
    ok &= root_present(r52, {4.0 / 5.0, -3.0 / 5.0}, 1);
    return ok;
}

bool crit3_belt_counts() {
    bool ok = true;
    auto check_count = [&ok](const char* name, const Risp& r, size_t want) {
        BeltReport rep = rotation_belts(r);
        if (rep.belts.size() != want) {
            note(std::string(name) + ": got " + std::to_string(rep.belts.size()) + " belts, want " +
                 std::to_string(want));
            ok = false;
        }
        if (!rep.bound_satisfied) {
            note(std::string(name) + ": bound violated");
            ok = false;
        }
    };
    check_count("example-2.1", ex21(), 0);
    BeltReport b22 = rotation_belts(ex22());
    if (!b22.q_identically_zero || !b22.belts.empty()) {
        note("example-2.2: expected flagged Q==0 with 0 belts");
        ok = false;
    }
    check_count("example-2.3", ex23(), 1);
    check_count("example-5.1", ex51(), 1);
    check_count("example-5.2", ex52(), 2);

    std::mt19937_64 rng(20240817);
    for (int it = 0; it < 100; ++it) {
        Risp r = random_stable_risp12(rng);
        BeltReport rep = rotation_belts(r);
        if (!rep.bound_satisfied) {
            note("randomized input " + std::to_string(it) + ": bound violated");
            ok = false;
        }
    }
    return ok;
}

bool crit4_fixed_point_algebra() {
    bool ok = true;
    // ptilde + z1 p for the degenerate example equals -(z1-1)^2 (z2+1) exactly
    BiPoly p({{Cpx(3, 0), Cpx(-1, 0)}, {Cpx(-1, 0), Cpx(-1, 0)}});
    BiPoly lhs = reflect(p, 1, 1) + BiPoly::z1() * p;
    BiPoly lin({{Cpx(-1, 0)}, {Cpx(1, 0)}});
    BiPoly rhs = -(lin * lin * BiPoly({{Cpx(1, 0), Cpx(1, 0)}}));
    if (max_coeff_dist(lhs, rhs) != 0.0) {
        note("expansion of the fixed-point polynomial is not exact");
        ok = false;
    }

    auto [c1, c2] = trace_fixed_curves(ex23(), 4096);
    double worst = 0.0;
    for (const FixedPointCurve* c : {&c1, &c2})
        for (const CurveSample& s : c->samples) {
            Cpx z1 = s.z1, z2 = unit(s.lambda_angle);
            worst = std::max(worst, std::abs(z2 * (4.0 * z1 - 1.0) - z1 * (4.0 - z1)));
        }
    if (worst > 1e-8) {
        note("curve relation residual " + std::to_string(worst));
        ok = false;
    }
    return ok;
}

bool crit5_multipliers() {
    bool ok = true;
    MobiusMap m23 = fiber_map(ex23(), {1, 0});
    bool saw3 = false, saw13 = false;
    for (Cpx m : m23.multipliers) {
        saw3 |= std::abs(m - Cpx(3, 0)) <= 1e-9;
        saw13 |= std::abs(m - Cpx(1.0 / 3.0, 0)) <= 1e-9;
    }
    if (!saw3 || !saw13) {
        note("fiber lambda=1 multipliers are not {3, 1/3}");
        ok = false;
    }

    Risp r22 = ex22();
    for (const CurveSample& s : parabolic_line(r22, 512).samples)
        if (std::abs(s.multiplier - Cpx(1, 0)) > 1e-6) {
            note("degenerate-example multiplier deviates from 1");
            ok = false;
            break;
        }

    // constant multiplier 2 on the repelling line {z1 = 1}, against the
    // symbolic-derivative oracle d/dz1 [e^{ia} ptilde/p]
    Risp r21 = ex21();
    auto [c1, c2] = trace_fixed_curves(r21, 1024);
    const FixedPointCurve& line = c1;  // branch 1 = repelling
    BiPoly dp = r21.phi.p.derivative_z1(), dpt = r21.phi.ptilde.derivative_z1();
    for (const CurveSample& s : line.samples) {
        if (std::abs(s.multiplier - Cpx(2, 0)) > 1e-9) {
            note("repelling-line multiplier deviates from 2");
            ok = false;
            break;
        }
        Cpx lambda = unit(s.lambda_angle);
        Cpx pv = r21.phi.p.eval({1, 0}, lambda);
        Cpx oracle = r21.phi.phase() *
                     (dpt.eval({1, 0}, lambda) * pv -
                      r21.phi.ptilde.eval({1, 0}, lambda) * dp.eval({1, 0}, lambda)) /
                     (pv * pv);
        if (std::abs(oracle - Cpx(2, 0)) > 1e-9 || std::abs(s.multiplier - oracle) > 1e-9) {
            note("symbolic-derivative oracle disagrees with multiplier 2");
            ok = false;
            break;
        }
    }

    std::mt19937_64 rng(424243);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    int hyperbolic = 0, tried = 0;
    while (tried < 1000) {
        Risp r = random_stable_risp12(rng);
        for (int k = 0; k < 10 && tried < 1000; ++k, ++tried) {
            MobiusMap m = fiber_map(r, unit(ang(rng)));
            if (m.kind != MobiusKind::Hyperbolic) continue;
            ++hyperbolic;
            if (std::abs(m.multipliers[0] * m.multipliers[1] - Cpx(1, 0)) > 1e-8) {
                note("hyperbolic reciprocity violated");
                ok = false;
            }
        }
    }
    if (hyperbolic < 50) {
        note("too few hyperbolic fibers sampled: " + std::to_string(hyperbolic));
        ok = false;
    }
    return ok;
}

bool crit6_iteration_oracle() {
    bool ok = true;
    Risp r21 = ex21();
    std::mt19937_64 rng(515253);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    double worst = 0.0;
    int used = 0;
    while (used < 100) {
        Cpx z1 = unit(ang(rng)), z2 = unit(ang(rng));
        Cpx w1 = z1, w2 = z2;
        bool flagged = false;
        for (int k = 0; k < 10; ++k) {
            StepResult s = step(r21, w1, w2);
            flagged = flagged || s.singular_encounter;
            w1 = s.z1;
            w2 = s.z2;
        }
        if (flagged) continue;
        auto [e1, e2] = closed_form_phi_n_ex21(z1, z2, 10);
        worst = std::max(worst, std::max(std::abs(w1 - e1), std::abs(w2 - e2)));
        ++used;
    }
    if (worst > 1e-6) {
        note("closed-form disagreement " + std::to_string(worst));
        ok = false;
    }

    OrbitDataset ds = iterate_grid(r21, {-0.9, -0.6, -0.3, 0.3, 0.6, 0.9}, 240, 40);
    double sup = 0.0;
    const auto& last = ds.frames.back();
    for (size_t i = 0; i < last.size(); ++i) {
        if (ds.divergence_flags[i]) continue;
        sup = std::max(sup, circle_dist(last[i][0], last[i][1]));
    }
    if (sup > 1e-3) {
        note("diagonal convergence sup " + std::to_string(sup));
        ok = false;
    }
    return ok;
}

bool crit7_sf_geometry() {
    bool ok = true;
    auto sf52 = sf_points(ex52());
    if (sf52.size() != 2) {
        note("example-5.2: expected exactly 2 SF-points");
        ok = false;
    } else {
        bool first = std::abs(sf52[0].tau1 - Cpx(1, 0)) < 1e-8 &&
                     std::abs(sf52[0].lambda - Cpx(1, 0)) < 1e-8 &&
                     sf52[0].crossing == SfCrossing::SingleBranch;
        bool second = std::abs(sf52[1].tau1 - Cpx(-1, 0)) < 1e-8 &&
                      std::abs(sf52[1].lambda - Cpx(-1, 0)) < 1e-8 &&
                      sf52[1].crossing == SfCrossing::TwoBranch;
        if (!first || !second) {
            note("example-5.2 SF-point locations or crossing types wrong");
            ok = false;
        }
    }
    auto sf51 = sf_points(ex51());
    if (sf51.size() != 1 || std::abs(sf51[0].tau1 - Cpx(1, 0)) > 1e-8 ||
        std::abs(sf51[0].lambda - Cpx(1, 0)) > 1e-8 ||
        sf51[0].crossing != SfCrossing::TwoBranch) {
        note("example-5.1 SF-point wrong");
        ok = false;
    }

    // even vanishing order of Q at every collapsing fiber where Q vanishes
    std::mt19937_64 rng(616263);
    std::vector<Risp> maps = {ex21(), ex23(), ex51(), ex52()};
    for (int it = 0; it < 100; ++it) maps.push_back(random_stable_risp12(rng));
    for (const Risp& r : maps) {
        QPoly q = q_alpha(r);
        if (q.is_identically_zero) continue;
        for (const CircleRoot& cr : r.lambda_flat.angles) {
            Cpx lambda = unit(cr.angle);
            if (std::abs(q.q.eval(lambda)) > 1e-6 * q.q.coeff_scale()) continue;
            int order = vanishing_order_at(q.q, lambda, q.q.degree() + 1);
            if (order < 2 || order % 2 != 0) {
                note("odd/low vanishing order " + std::to_string(order) + " on a collapsing fiber");
                ok = false;
            }
        }
    }
    return ok;
}

bool crit8_property_suites() {
    bool ok = true;
    std::mt19937_64 rng(717273);

    // reflection involution, exact
    for (int it = 0; it < 200; ++it) {
        BiPoly p = rand_bipoly(rng, 1 + static_cast<int>(rng() % 2),
                               1 + static_cast<int>(rng() % 3));
        if (max_coeff_dist(reflect(reflect(p, p.degree1(), p.degree2()), p.degree1(),
                                   p.degree2()),
                           p) != 0.0) {
            note("reflection involution not exact");
            ok = false;
        }
    }

    // essential symmetry of the fixed-point polynomial
    for (int it = 0; it < 50; ++it) {
        Risp r = random_stable_risp12(rng);
        RimFixedData d = rim_fixed_data(r.phi, identity_component());
        if (!d.symmetric_ok_1) {
            note("P1 essential symmetry violated");
            ok = false;
        }
    }

    // inner bound and torus preservation over 50 iterations
    std::uniform_real_distribution<double> rad(0.0, 0.999), ang(-kPi, kPi);
    for (const Risp& r : {ex21(), ex23(), ex51(), ex52()}) {
        for (int it = 0; it < 200; ++it) {
            Cpx z1 = rad(rng) * unit(ang(rng)), z2 = rad(rng) * unit(ang(rng));
            if (std::abs(r.phi.eval(z1, z2)) > 1.0 + 1e-9) {
                note("inner bound violated");
                ok = false;
            }
        }
        OrbitDataset ds = iterate_grid(r, {0.35, -0.85}, 60, 50);
        for (size_t k = 0; k < ds.raw_frames.size(); ++k)
            for (size_t i = 0; i < ds.raw_frames[k].size(); ++i) {
                if (ds.divergence_flags[i]) continue;
                if (std::abs(std::abs(ds.raw_frames[k][i][0]) - 1.0) > 1e-7 ||
                    std::abs(std::abs(ds.raw_frames[k][i][1]) - 1.0) > 1e-7) {
                    note("torus preservation violated");
                    ok = false;
                }
            }
    }

    // psi-product unimodularity
    for (const Risp& r : {ex21(), ex23(), ex51(), ex52()}) {
        int used = 0;
        while (used < 250) {
            double t = ang(rng);
            if (r.lambda_flat.contains(t, 1e-3) || r.lambda_sharp.contains(t, 1e-3)) continue;
            auto [a, b] = psi_branches(r, unit(t));
            if (std::abs(std::abs(a * b) - 1.0) > 1e-8) {
                note("psi product unimodularity violated");
                ok = false;
            }
            ++used;
        }
    }

    // semigroup property
    std::uniform_int_distribution<int> mn(1, 10);
    for (const Risp& r : {ex21(), ex23(), ex51(), ex52()}) {
        int used = 0;
        while (used < 25) {
            Cpx z1 = unit(ang(rng)), z2 = unit(ang(rng));
            int m = mn(rng), n = mn(rng);
            bool flagged = false;
            auto iter = [&](Cpx a, Cpx b, int count) {
                for (int k = 0; k < count; ++k) {
                    StepResult s = step(r, a, b);
                    flagged = flagged || s.singular_encounter;
                    a = s.z1;
                    b = s.z2;
                }
                return std::pair<Cpx, Cpx>{a, b};
            };
            auto [x1, x2] = iter(z1, z2, m + n);
            auto [y1, y2] = iter(z1, z2, n);
            auto [w1, w2] = iter(y1, y2, m);
            if (flagged) continue;
            if (std::abs(x1 - w1) > 1e-7 || std::abs(x2 - w2) > 1e-7) {
                note("semigroup property violated");
                ok = false;
            }
            ++used;
        }
    }

    // byte-deterministic CLI outputs
    fs::path a = fs::temp_directory_path() / "risp_acc_det_a";
    fs::path b = fs::temp_directory_path() / "risp_acc_det_b";
    fs::remove_all(a);
    fs::remove_all(b);
    std::string in = std::string(RISP_DATA_DIR) + "/maps/ex52.json";
    if (run_cli("analyze --input " + in + " --out " + a.string()) != 0 ||
        run_cli("analyze --input " + in + " --out " + b.string()) != 0) {
        note("CLI analyze failed");
        return false;
    }
    for (const char* f : {"qalpha.json", "belts.json", "sfpoints.json", "curves.csv"})
        if (slurp(a / f) != slurp(b / f) || slurp(a / f).empty()) {
            note(std::string("CLI output not byte-identical: ") + f);
            ok = false;
        }
    return ok;
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion(1, "Q_alpha exactness on the three worked discriminants", crit1_q_exactness);
    criterion(2, "root recovery with correct multiplicities", crit2_root_recovery);
    criterion(3, "rotation belt counts and the belt-count bound", crit3_belt_counts);
    criterion(4, "fixed-point algebra (exact expansion and curve relation)",
              crit4_fixed_point_algebra);
    criterion(5, "multipliers on named fibers and hyperbolic reciprocity", crit5_multipliers);
    criterion(6, "iteration engine against the closed-form oracle", crit6_iteration_oracle);
    criterion(7, "SF-point count, crossing types, even-order vanishing", crit7_sf_geometry);
    criterion(8, "property suites (involution, symmetry, bounds, determinism)",
              crit8_property_suites);
    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", g_failures);
    return 1;
}
