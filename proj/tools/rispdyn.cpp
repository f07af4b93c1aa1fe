// Command-line front end: parse map definitions, run analyses, emit datasets
// and SVG figures.  Exit codes: 0 ok, 2 input/validation failure, 3 numeric
// failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "risp/risp.hpp"

namespace fs = std::filesystem;
using namespace risp;

namespace {

struct RunConfig {
    std::string input;
    std::string out = "out";
    int n_samples = 4096;
    int n_iters = 5;
    int points_per_line = 720;
    std::vector<double> seed_lines = {-0.9, -0.6, -0.3, 0.3, 0.6, 0.9};
    bool overlay_belts = false;
    bool dump_roots = false;
    double torus_eps = kTorusEps;
    int canvas = 900;
    double point_radius = 1.2;
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};
constexpr int kPaletteSize = 6;

void ensure_outdir(const RunConfig& cfg) { fs::create_directories(cfg.out); }

std::string join(const RunConfig& cfg, const std::string& name) {
    return (fs::path(cfg.out) / name).string();
}

Risp load(const RunConfig& cfg) { return load_map_file(cfg.input, "", cfg.torus_eps); }

void dump_roots_file(const RunConfig& cfg, const Risp& r, const QPoly* q) {
    Json j{{"schema", kSchemaTag}};
    if (r.simple()) {
        j["degeneracy_roots"] = rootset_to_json(all_roots(r.D));
        if (r.p2.degree() >= 1) j["p2_roots"] = rootset_to_json(all_roots(r.p2));
        if (q != nullptr && !q->is_identically_zero && q->q.degree() >= 1)
            j["q_alpha_roots"] = rootset_to_json(all_roots(q->q));
    }
    write_file(join(cfg, "roots.json"), j.dump(2) + "\n");
}

int cmd_analyze(const RunConfig& cfg) {
    Risp r = load(cfg);
    if (!r.simple()) {
        std::cerr << "analyze: map kind '" << to_string(r.kind)
                  << "' has no fiber classification; only simple RISPs are analyzable\n";
        return 2;
    }
    ensure_outdir(cfg);

    QPoly q = q_alpha(r);
    write_file(join(cfg, "qalpha.json"), qpoly_to_json(q, r).dump(2) + "\n");

    BeltReport belts = rotation_belts(r);
    write_file(join(cfg, "belts.json"), belts_to_json(belts).dump(2) + "\n");

    write_file(join(cfg, "sfpoints.json"), sf_points_to_json(sf_points(r)).dump(2) + "\n");

    std::vector<FixedPointCurve> curves;
    if (q.is_identically_zero) {
        curves.push_back(parabolic_line(r, cfg.n_samples));
    } else {
        auto [c1, c2] = trace_fixed_curves(r, cfg.n_samples);
        curves.push_back(c1);
        curves.push_back(c2);
    }
    write_file(join(cfg, "curves.csv"), curves_csv(curves));

    if (cfg.dump_roots) dump_roots_file(cfg, r, &q);
    return 0;
}

void render_frame(const RunConfig& cfg, const Risp& r, const OrbitDataset& ds, size_t frame,
                  const std::string& path) {
    SvgCanvas canvas(cfg.canvas);
    if (cfg.overlay_belts && r.simple()) {
        QPoly q = q_alpha(r);
        for (const CircleRoot& cr : q.circle_roots.angles)
            if (!r.lambda_flat.contains(cr.angle)) canvas.hline(cr.angle, "#ff69b4", 3.0);
        if (!q.is_identically_zero) {
            auto [c1, c2] = trace_fixed_curves(r, 1024);
            for (const FixedPointCurve* c : {&c1, &c2}) {
                std::vector<std::pair<double, double>> pts;
                for (const CurveSample& s : c->samples)
                    if (s.on_torus) pts.push_back({angle_of(s.z1), s.lambda_angle});
                canvas.polyline(pts, "#444444", 1.0);
            }
        }
    }
    const size_t per_line = static_cast<size_t>(cfg.points_per_line);
    for (size_t i = 0; i < ds.frames[frame].size(); ++i) {
        const char* color = ds.divergence_flags[i]
                                ? "#aaaaaa"
                                : kPalette[(i / per_line) % kPaletteSize];
        canvas.point(ds.frames[frame][i][0], ds.frames[frame][i][1], cfg.point_radius, color);
    }
    write_file(path, canvas.str());
}

int cmd_iterate(const RunConfig& cfg) {
    Risp r = load(cfg);
    ensure_outdir(cfg);
    OrbitDataset ds = iterate_grid(r, cfg.seed_lines, cfg.points_per_line, cfg.n_iters);
    write_file(join(cfg, "orbit.jsonl"), orbit_jsonl(ds));
    for (size_t k = 0; k < ds.frames.size(); ++k)
        render_frame(cfg, r, ds, k, join(cfg, "frame_" + std::to_string(k + 1) + ".svg"));
    if (cfg.dump_roots && r.simple()) dump_roots_file(cfg, r, nullptr);
    return 0;
}

int cmd_branch_profile(const RunConfig& cfg) {
    Risp r = load(cfg);
    if (!r.simple()) {
        std::cerr << "branch-profile: simple RISP required\n";
        return 2;
    }
    QPoly q = q_alpha(r);
    if (q.is_identically_zero) {
        std::cerr << "branch-profile: Q_alpha is identically zero; no branch structure\n";
        return 2;
    }
    ensure_outdir(cfg);
    std::string csv = psi_modulus_csv(r, cfg.n_samples);
    write_file(join(cfg, "psi_modulus.csv"), csv);

    // |psi^{1,2}| against t2: x spans (-pi, pi], y spans [0, ymax].
    double ymax = 1.5;
    std::vector<std::pair<double, double>> b1, b2;
    {
        std::istringstream in(csv);
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            std::string t, a, b;
            std::getline(ls, t, ',');
            std::getline(ls, a, ',');
            std::getline(ls, b, ',');
            double tv = std::stod(t), av = std::stod(a), bv = std::stod(b);
            ymax = std::max(ymax, std::max(std::min(av, 10.0), std::min(bv, 10.0)));
            b1.push_back({tv, av});
            b2.push_back({tv, bv});
        }
    }
    SvgCanvas canvas(cfg.canvas);
    auto to_plot = [&](std::vector<std::pair<double, double>> pts) {
        for (auto& p : pts) p.second = std::min(p.second, ymax) / ymax * 2.0 * kPi - kPi;
        return pts;
    };
    canvas.hline(1.0 / ymax * 2.0 * kPi - kPi, "#bbbbbb", 1.0);  // |psi| = 1 reference
    canvas.polyline(to_plot(b1), kPalette[0], 1.5);
    canvas.polyline(to_plot(b2), kPalette[1], 1.5);
    write_file(join(cfg, "psi_modulus.svg"), canvas.str());
    return 0;
}

int cmd_rim_check(const RunConfig& cfg) {
    std::ifstream in(cfg.input);
    if (!in) throw Error("cannot open map file: " + cfg.input);
    Json j = Json::parse(in);
    Rif f1 = rif_from_json(j);
    Rif f2 = j.contains("second") ? rif_from_json(j.at("second")) : identity_component();
    ensure_outdir(cfg);
    write_file(join(cfg, "rimcheck.json"), rim_to_json(rim_fixed_data(f1, f2)).dump(2) + "\n");
    return 0;
}

int cmd_validate(const RunConfig& cfg) {
    std::ifstream in(cfg.input);
    if (!in) throw Error("cannot open map file: " + cfg.input);
    Json j = Json::parse(in);
    BiPoly p = bipoly_from_json(j.at("p"));
    StabilityResult st = validate_stability(p);
    Json out{{"schema", kSchemaTag}, {"ok", st.ok}};
    if (!st.ok) out["witness"] = Json::array({st.z1.real(), st.z1.imag(), st.z2.real(), st.z2.imag()});
    std::cout << out.dump(2) << "\n";
    return st.ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rational inner skew-product dynamics on the bidisk"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand name

    RunConfig cfg;
    app.add_option("--input", cfg.input, "map definition JSON")->required();
    app.add_option("--out", cfg.out, "output directory");
    app.add_option("--samples", cfg.n_samples, "samples per traced branch")
        ->check(CLI::PositiveNumber);
    app.add_option("--iters", cfg.n_iters, "number of iterates")->check(CLI::PositiveNumber);
    app.add_option("--seed-lines", cfg.seed_lines, "vertical line positions a (seeds at t1=a*pi)")
        ->delimiter(',');
    app.add_option("--points-per-line", cfg.points_per_line, "seed count per vertical line")
        ->check(CLI::PositiveNumber);
    app.add_flag("--overlay-belts", cfg.overlay_belts, "overlay parabolic fibers and fixed curves");
    app.add_flag("--dump-roots", cfg.dump_roots, "write roots.json with all computed root sets");
    app.add_option("--tolerance-torus", cfg.torus_eps, "circle membership tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--canvas", cfg.canvas, "SVG canvas size in pixels")->check(CLI::PositiveNumber);
    app.add_option("--point-radius", cfg.point_radius, "SVG point radius")
        ->check(CLI::PositiveNumber);

    auto* analyze = app.add_subcommand("analyze", "Q_alpha, belts, SF-points, fixed curves");
    auto* iterate = app.add_subcommand("iterate", "pushforward of vertical lines, orbit dataset");
    auto* branch = app.add_subcommand("branch-profile", "|psi^{1,2}| profile over the base circle");
    auto* rim = app.add_subcommand("rim-check", "fixed-point polynomials P1/P2 of a general RIM");
    auto* validate = app.add_subcommand("validate", "denominator stability check");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return cmd_analyze(cfg);
        if (iterate->parsed()) return cmd_iterate(cfg);
        if (branch->parsed()) return cmd_branch_profile(cfg);
        if (rim->parsed()) return cmd_rim_check(cfg);
        if (validate->parsed()) return cmd_validate(cfg);
    } catch (const UnstableDenominator& e) {
        std::cerr << "validation failure: " << e.what() << " (witness " << e.z1 << ", " << e.z2
                  << ")\n";
        return 2;
    } catch (const DegreeError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const NonconvergentLimit& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const AmbiguousBoundary& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
