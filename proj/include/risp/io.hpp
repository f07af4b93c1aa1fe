#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "risp/analysis.hpp"
#include "risp/bipoly.hpp"
#include "risp/core.hpp"
#include "risp/iterate.hpp"
#include "risp/rif.hpp"
#include "risp/roots.hpp"
#include "risp/unipoly.hpp"

namespace risp {

inline constexpr const char* kSchemaTag = "risp-dyn/1";

using Json = nlohmann::json;

inline Json cpx_to_json(Cpx z) { return Json::array({z.real(), z.imag()}); }

inline Cpx cpx_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw Error("expected [re, im] pair");
    return Cpx(j[0].get<double>(), j[1].get<double>());
}

// {"degree": n, "coeffs": [[re,im], ...]}
inline Json unipoly_to_json(const UniPoly& q) {
    Json coeffs = Json::array();
    for (int k = 0; k <= q.degree(); ++k) coeffs.push_back(cpx_to_json(q.coeff(k)));
    return Json{{"degree", q.degree()}, {"coeffs", coeffs}};
}

inline UniPoly unipoly_from_json(const Json& j) {
    std::vector<Cpx> cs;
    for (const Json& c : j.at("coeffs")) cs.push_back(cpx_from_json(c));
    return UniPoly(std::move(cs));
}

// {"bidegree": [m,n], "coeffs": [[[re,im],...],...]} with coeffs[j][k] <-> z1^j z2^k
inline Json bipoly_to_json(const BiPoly& p) {
    Json rows = Json::array();
    for (int j = 0; j <= std::max(p.degree1(), 0); ++j) {
        Json row = Json::array();
        for (int k = 0; k <= std::max(p.degree2(), 0); ++k) row.push_back(cpx_to_json(p.coeff(j, k)));
        rows.push_back(row);
    }
    return Json{{"bidegree", Json::array({p.degree1(), p.degree2()})}, {"coeffs", rows}};
}

inline BiPoly bipoly_from_json(const Json& j) {
    std::vector<std::vector<Cpx>> rows;
    for (const Json& r : j.at("coeffs")) {
        std::vector<Cpx> row;
        for (const Json& c : r) row.push_back(cpx_from_json(c));
        rows.push_back(std::move(row));
    }
    return BiPoly(std::move(rows));
}

// Map-definition schema:
// {"schema":"risp-dyn/1", "p": <BiPoly>, "alpha": <number> | {"auto-sf":[t1re,t1im,t2re,t2im]},
//  "beta":[b1,b2], "kind":"simple"|"monomial-twisted"|"rim", "second": {...} for "rim"}
inline Rif rif_from_json(const Json& j) {
    BiPoly p = bipoly_from_json(j.at("p"));
    int declared_m = -1, declared_n = -1;
    if (j.at("p").contains("bidegree")) {
        declared_m = j.at("p").at("bidegree").at(0).get<int>();
        declared_n = j.at("p").at("bidegree").at(1).get<int>();
    }
    double alpha = 0.0;
    const Json& ja = j.at("alpha");
    if (ja.is_number()) {
        alpha = ja.get<double>();
    } else if (ja.is_object() && ja.contains("auto-sf")) {
        const Json& t = ja.at("auto-sf");
        if (!t.is_array() || t.size() != 4) throw Error("auto-sf expects [t1re,t1im,t2re,t2im]");
        alpha = normalize_alpha_for_sf(p, Cpx(t[0].get<double>(), t[1].get<double>()),
                                       Cpx(t[2].get<double>(), t[3].get<double>()));
    } else {
        throw Error("alpha must be a number or {\"auto-sf\": [...]}");
    }
    int b1 = 0, b2 = 0;
    if (j.contains("beta")) {
        b1 = j.at("beta").at(0).get<int>();
        b2 = j.at("beta").at(1).get<int>();
    }
    return build_rif(p, alpha, b1, b2, declared_m, declared_n);
}

inline Risp risp_from_json(const Json& j, const std::string& map_id = "risp",
                           double torus_eps = kTorusEps) {
    std::string kind = j.value("kind", std::string("simple"));
    Rif phi = rif_from_json(j);
    Risp r;
    if (kind == "simple")
        r = build_risp_simple(phi, torus_eps);
    else if (kind == "monomial-twisted")
        r = build_risp_monomial(phi);
    else if (kind == "rim")
        r = build_risp_rim(phi, rif_from_json(j.at("second")));
    else
        throw Error("unknown kind: " + kind);
    r.map_id = map_id;
    return r;
}

inline Risp load_map_file(const std::string& path, const std::string& map_id = "",
                          double torus_eps = kTorusEps) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open map file: " + path);
    Json j = Json::parse(in);
    std::string id = map_id;
    if (id.empty()) {
        size_t slash = path.find_last_of("/\\");
        id = slash == std::string::npos ? path : path.substr(slash + 1);
        size_t dot = id.find_last_of('.');
        if (dot != std::string::npos) id = id.substr(0, dot);
    }
    return risp_from_json(j, id, torus_eps);
}

inline Json rootset_to_json(const RootSet& rs) {
    Json roots = Json::array();
    for (const Root& r : rs.roots)
        roots.push_back(Json{{"location", cpx_to_json(r.location)},
                             {"multiplicity", r.multiplicity}});
    return Json{{"roots", roots}, {"residual", rs.residual}};
}

inline Json circle_roots_to_json(const CircleRootSet& cs) {
    Json arr = Json::array();
    for (const CircleRoot& r : cs.angles)
        arr.push_back(Json{{"angle", r.angle}, {"multiplicity", r.multiplicity}});
    return arr;
}

inline Json qpoly_to_json(const QPoly& q, const Risp& r) {
    Json roots = Json::array();
    for (const CircleRoot& cr : q.circle_roots.angles) {
        int order = 0;
        auto it = q.vanishing_orders.find(cr.angle);
        if (it != q.vanishing_orders.end()) order = it->second;
        roots.push_back(Json{{"angle", cr.angle},
                             {"multiplicity", cr.multiplicity},
                             {"vanishing_order", order}});
    }
    return Json{{"schema", kSchemaTag},
                {"alpha", r.phi.alpha},
                {"q", unipoly_to_json(q.q)},
                {"is_identically_zero", q.is_identically_zero},
                {"circle_roots", roots},
                {"lambda_flat", circle_roots_to_json(r.lambda_flat)},
                {"lambda_sharp", circle_roots_to_json(r.lambda_sharp)}};
}

inline Json belts_to_json(const BeltReport& b) {
    Json belts = Json::array();
    for (const Belt& belt : b.belts)
        belts.push_back(Json{{"start_angle", belt.start_angle},
                             {"end_angle", belt.end_angle},
                             {"start_kind", to_string(belt.start_kind)},
                             {"end_kind", to_string(belt.end_kind)}});
    return Json{{"schema", kSchemaTag},
                {"belts", belts},
                {"qa_circle_root_count_excl_flat", b.qa_circle_root_count_excl_flat},
                {"bound", b.bound},
                {"bound_satisfied", b.bound_satisfied},
                {"q_identically_zero", b.q_identically_zero}};
}

inline Json sf_points_to_json(const std::vector<SfPoint>& pts) {
    Json arr = Json::array();
    for (const SfPoint& p : pts) {
        Json j{{"tau1", cpx_to_json(p.tau1)},
               {"lambda", cpx_to_json(p.lambda)},
               {"lambda_angle", p.lambda_angle},
               {"crossing", to_string(p.crossing)},
               {"boundary_value", cpx_to_json(p.boundary_val)}};
        if (p.q_order)
            j["q_order"] = *p.q_order;
        else
            j["q_order"] = nullptr;
        arr.push_back(j);
    }
    return Json{{"schema", kSchemaTag}, {"sf_points", arr}};
}

inline Json rim_to_json(const RimFixedData& d) {
    Json zeros = Json::array();
    for (const auto& z : d.common_zero_estimate)
        zeros.push_back(Json::array(
            {z.first.real(), z.first.imag(), z.second.real(), z.second.imag()}));
    return Json{{"schema", kSchemaTag},
                {"P1", bipoly_to_json(d.P1)},
                {"P2", bipoly_to_json(d.P2)},
                {"symmetric_ok", Json::array({d.symmetric_ok_1, d.symmetric_ok_2})},
                {"bezout_bound", d.bezout_bound},
                {"common_zero_estimate", zeros},
                {"p2_identically_zero", d.p2_identically_zero},
                {"common_factor_suspected", d.common_factor_suspected}};
}

namespace detail {

inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace detail

// CSV columns: lambda_angle, re_z1, im_z1, class, re_mult, im_mult, branch
inline std::string curves_csv(const std::vector<FixedPointCurve>& curves) {
    std::ostringstream out;
    out << "lambda_angle,re_z1,im_z1,class,re_mult,im_mult,branch\n";
    for (const FixedPointCurve& c : curves)
        for (const CurveSample& s : c.samples)
            out << detail::fmt_double(s.lambda_angle) << ',' << detail::fmt_double(s.z1.real())
                << ',' << detail::fmt_double(s.z1.imag()) << ',' << to_string(s.cls) << ','
                << detail::fmt_double(s.multiplier.real()) << ','
                << detail::fmt_double(s.multiplier.imag()) << ',' << c.branch << '\n';
    return out.str();
}

struct CurveCsvRow {
    double lambda_angle;
    Cpx z1;
    SampleClass cls;
    Cpx multiplier;
    int branch;
};

inline std::vector<CurveCsvRow> parse_curves_csv(const std::string& text) {
    std::vector<CurveCsvRow> rows;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 7) throw Error("curves csv: bad row: " + line);
        CurveCsvRow r;
        r.lambda_angle = std::stod(fields[0]);
        r.z1 = Cpx(std::stod(fields[1]), std::stod(fields[2]));
        auto cls = sample_class_from_string(fields[3]);
        if (!cls) throw Error("curves csv: bad class: " + fields[3]);
        r.cls = *cls;
        r.multiplier = Cpx(std::stod(fields[4]), std::stod(fields[5]));
        r.branch = std::stoi(fields[6]);
        rows.push_back(r);
    }
    return rows;
}

// One frame per line: {"frame":k,"points":[[t1,t2,flag],...]}
inline std::string orbit_jsonl(const OrbitDataset& d) {
    std::ostringstream out;
    for (size_t k = 0; k < d.frames.size(); ++k) {
        Json points = Json::array();
        for (size_t i = 0; i < d.frames[k].size(); ++i)
            points.push_back(Json::array({d.frames[k][i][0], d.frames[k][i][1],
                                          d.divergence_flags[i] ? 1 : 0}));
        Json line{{"schema", kSchemaTag},
                  {"map_id", d.map_id},
                  {"frame", static_cast<int>(k + 1)},
                  {"points", points}};
        out << line.dump() << '\n';
    }
    return out.str();
}

// CSV columns: frame, seed_index, t1, t2, flag
inline std::string orbit_csv(const OrbitDataset& d) {
    std::ostringstream out;
    out << "frame,seed_index,t1,t2,flag\n";
    for (size_t k = 0; k < d.frames.size(); ++k)
        for (size_t i = 0; i < d.frames[k].size(); ++i)
            out << (k + 1) << ',' << i << ',' << detail::fmt_double(d.frames[k][i][0]) << ','
                << detail::fmt_double(d.frames[k][i][1]) << ',' << (d.divergence_flags[i] ? 1 : 0)
                << '\n';
    return out.str();
}

// abs_psi1 >= abs_psi2 per sample (exterior branch first).
inline std::string psi_modulus_csv(const Risp& r, int n_samples) {
    std::ostringstream out;
    out << "t2,abs_psi1,abs_psi2\n";
    std::vector<double> excluded = detail::excluded_angles(r);
    for (int k = 0; k < n_samples; ++k) {
        double t = -kPi + 2.0 * kPi * (k + 1) / n_samples;
        bool skip = false;
        for (double ex : excluded)
            if (circle_dist(t, ex) < 1e-4) skip = true;
        if (skip) continue;
        std::pair<Cpx, Cpx> psi = psi_branches(r, unit(t));
        double hi = std::max(std::abs(psi.first), std::abs(psi.second));
        double lo = std::min(std::abs(psi.first), std::abs(psi.second));
        out << detail::fmt_double(t) << ',' << detail::fmt_double(hi) << ','
            << detail::fmt_double(lo) << '\n';
    }
    return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

}  // namespace risp
