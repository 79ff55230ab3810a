#pragma once

// Scenario-driven front end: loads lattice/net/vector fixtures from JSON,
// runs the full certificate suite and renders a deterministic report.
// Fixtures may declare expected values (compared field by field) and quoted
// cross-check values (disagreements become discrepancy notes, not errors).

#include "mukai/arith.hpp"
#include "mukai/fm_solver.hpp"
#include "mukai/grassmann.hpp"
#include "mukai/lattice.hpp"
#include "mukai/mukai_vector.hpp"
#include "mukai/quad_unit.hpp"
#include "mukai/quadric_net.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mukai {

using json = nlohmann::json;

struct ScenarioError : std::runtime_error {
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

struct ScenarioOptions {
    long height = 30;
    FMBranch branch = FMBranch::positive;
};

struct Scenario {
    std::string name;
    LatticePtr lattice;
    DivisorClass polarization;
    std::map<std::string, DivisorClass> extra_classes;
    std::vector<std::pair<std::string, std::string>> report_pairings;
    std::optional<Mat<Int>> involution;
    std::vector<std::string> involution_fixes;
    std::vector<std::pair<std::string, std::string>> involution_swaps;
    std::optional<LatticePtr> moduli_lattice;
    std::optional<std::vector<long>> moduli_degree_class;
    std::optional<LinearFormMatrix> net;
    std::vector<std::array<Int, 3>> net_lines;
    std::vector<std::pair<std::array<Int, 3>, std::array<Int, 3>>> net_pencils;
    long scan_height = 1;
    std::vector<long> scan_primes;
    bool run_fm = false;
    long fm_height = 5;
    std::optional<std::array<Rat, 3>> fm_point;
    json crosscheck = json::array();
    json expected = json::object();
};

// ---- JSON helpers ---------------------------------------------------------

inline json to_json(const Int& n) {
    if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
        return static_cast<long long>(n);
    return n.str();
}

inline json to_json(const Rat& q) {
    if (is_integer(q)) return to_json(numerator(q));
    return to_string(q);
}

inline json coords_json(const DivisorClass& c) {
    json a = json::array();
    for (const Rat& x : c.coords()) a.push_back(to_json(x));
    return a;
}

inline json to_json(const MukaiVector& v) {
    return json{{"r", to_json(v.r())}, {"c1", coords_json(v.c1())}, {"s", to_json(v.s())}};
}

inline json gram_json(const Mat<Int>& g) {
    json rows = json::array();
    for (std::size_t i = 0; i < g.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < g.cols(); ++j) row.push_back(to_json(g.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

namespace scenario_detail {

inline const json& require(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) throw ScenarioError(path + ": missing field '" + key + "'");
    return j.at(key);
}

inline Mat<Int> parse_int_matrix(const json& j, std::size_t rows, std::size_t cols,
                                 const std::string& path) {
    if (!j.is_array() || j.size() != rows) throw ScenarioError(path + ": expected " + std::to_string(rows) + " rows");
    Mat<Int> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = j.at(i);
        if (!row.is_array() || row.size() != cols)
            throw ScenarioError(path + "[" + std::to_string(i) + "]: expected " + std::to_string(cols) + " entries");
        for (std::size_t k = 0; k < cols; ++k) m.at(i, k) = Int(row.at(k).get<long long>());
    }
    return m;
}

inline LatticePtr parse_lattice(const json& j, const std::string& path) {
    const json& basis = require(j, "basis", path);
    std::vector<std::string> names;
    for (const auto& b : basis) names.push_back(b.get<std::string>());
    Mat<Int> gram = parse_int_matrix(require(j, "gram", path), names.size(), names.size(), path + ".gram");
    try {
        return IntegerLattice::create(std::move(gram), std::move(names));
    } catch (const std::exception& e) {
        throw ScenarioError(path + ": " + e.what());
    }
}

inline std::vector<long> parse_coords(const json& j, std::size_t rank, const std::string& path) {
    if (!j.is_array() || j.size() != rank)
        throw ScenarioError(path + ": expected " + std::to_string(rank) + " coordinates");
    std::vector<long> v;
    for (const auto& x : j) v.push_back(x.get<long>());
    return v;
}

inline std::array<Int, 3> parse_line(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3) throw ScenarioError(path + ": expected 3 coefficients");
    return {Int(j.at(0).get<long long>()), Int(j.at(1).get<long long>()), Int(j.at(2).get<long long>())};
}

} // namespace scenario_detail

inline Scenario parse_scenario(const json& j, const std::string& source) {
    using namespace scenario_detail;
    Scenario s;
    s.name = require(j, "name", source).get<std::string>();
    s.lattice = parse_lattice(require(j, "lattice", source), source + ".lattice");
    auto coords = parse_coords(require(j, "polarization", source), s.lattice->rank(), source + ".polarization");
    s.polarization = DivisorClass(s.lattice, coords);
    if (self_pair(s.polarization) <= 0)
        throw ScenarioError(source + ".polarization: polarization^2 must be positive");
    if (j.contains("extra_classes"))
        for (const auto& [name, c] : j.at("extra_classes").items())
            s.extra_classes.emplace(name, DivisorClass(s.lattice, parse_coords(c, s.lattice->rank(),
                                                       source + ".extra_classes." + name)));
    if (j.contains("report_pairings"))
        for (const auto& p : j.at("report_pairings"))
            s.report_pairings.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
    if (j.contains("involution")) {
        s.involution = parse_int_matrix(j.at("involution"), s.lattice->rank(), s.lattice->rank(),
                                        source + ".involution");
        if (j.contains("involution_fixes"))
            for (const auto& n : j.at("involution_fixes")) s.involution_fixes.push_back(n.get<std::string>());
        if (j.contains("involution_swaps"))
            for (const auto& p : j.at("involution_swaps"))
                s.involution_swaps.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
    }
    if (j.contains("moduli_lattice")) {
        s.moduli_lattice = parse_lattice(j.at("moduli_lattice"), source + ".moduli_lattice");
        s.moduli_degree_class = parse_coords(require(j, "moduli_degree_class", source),
                                             (*s.moduli_lattice)->rank(), source + ".moduli_degree_class");
    }
    if (j.contains("net")) {
        const json& n = j.at("net");
        try {
            s.net = LinearFormMatrix(parse_int_matrix(require(n, "N0", source + ".net"), 6, 6, source + ".net.N0"),
                                     parse_int_matrix(require(n, "N1", source + ".net"), 6, 6, source + ".net.N1"),
                                     parse_int_matrix(require(n, "N2", source + ".net"), 6, 6, source + ".net.N2"));
        } catch (const ScenarioError&) {
            throw;
        } catch (const std::exception& e) {
            throw ScenarioError(source + ".net: " + e.what());
        }
        if (j.contains("net_lines"))
            for (const auto& lj : j.at("net_lines")) s.net_lines.push_back(parse_line(lj, source + ".net_lines"));
        if (j.contains("net_pencils"))
            for (const auto& pj : j.at("net_pencils"))
                s.net_pencils.emplace_back(parse_line(pj.at(0), source + ".net_pencils"),
                                           parse_line(pj.at(1), source + ".net_pencils"));
        if (j.contains("scan_height")) s.scan_height = j.at("scan_height").get<long>();
        if (j.contains("scan_primes"))
            for (const auto& p : j.at("scan_primes")) s.scan_primes.push_back(p.get<long>());
    }
    if (j.contains("fm")) s.run_fm = j.at("fm").get<bool>();
    if (j.contains("fm_height")) s.fm_height = j.at("fm_height").get<long>();
    if (j.contains("fm_point")) {
        const json& p = j.at("fm_point");
        if (!p.is_array() || p.size() != 3) throw ScenarioError(source + ".fm_point: expected [a,b,d]");
        s.fm_point = std::array<Rat, 3>{Rat(p.at(0).get<long>()), Rat(p.at(1).get<long>()),
                                        Rat(p.at(2).get<long>())};
    }
    if (j.contains("crosscheck")) s.crosscheck = j.at("crosscheck");
    if (j.contains("expected")) s.expected = j.at("expected");
    return s;
}

inline Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(path + ": cannot open");
    json j;
    try {
        j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const std::exception& e) {
        throw ScenarioError(path + ": " + e.what());
    }
    return parse_scenario(j, path);
}

// ---- report ---------------------------------------------------------------

inline json run_scenario(const Scenario& s, const ScenarioOptions& opt) {
    json r;
    r["schema"] = 1;
    r["name"] = s.name;
    r["options"] = {{"height", opt.height}, {"fm_branch", fm_branch_name(opt.branch)}};

    const LatticePtr& L = s.lattice;
    r["lattice"] = {{"basis", L->basis_names()},
                    {"gram", gram_json(L->gram())},
                    {"discriminant", to_json(L->discriminant())}};
    const DivisorClass& H = s.polarization;
    r["polarization"] = {{"coords", coords_json(H)},
                         {"square", to_json(self_pair(H))},
                         {"ample_evidence", ample_evidence(L, H, opt.height)}};

    MukaiVector v = from_chern(2, H, Int(4));
    Int sm = sigma_min(L, v);
    r["mukai_vector"] = {{"r", to_json(v.r())},
                         {"c1", coords_json(v.c1())},
                         {"s", to_json(v.s())},
                         {"c2", 4},
                         {"isotropic", is_isotropic(v)},
                         {"primitive", is_primitive(v)},
                         {"moduli_dim", to_json(moduli_dim(v))},
                         {"sigma_min", to_json(sm)},
                         {"fine", sm == 1},
                         {"hilbert", hilbert_poly(v, H).str()}};

    if (L->rank() <= 2) {
        auto comp = compactness_certificate(L, H);
        json cj = {{"compact", comp.compact}};
        if (!comp.compact) {
            cj["witness"] = coords_json(*comp.witness);
            auto split = strictly_semistable_split(L, H);
            if (split) {
                cj["split"] = {{"l1", coords_json(split->first)}, {"sigma", coords_json(split->second)}};
                MukaiVector dest = from_chern(1, split->first, Int(0));
                cj["destabilizer"] = {{"v", to_json(dest)},
                                      {"hilbert", hilbert_poly(dest, H).str()},
                                      {"hilbert_equal", hilbert_poly(dest, H) == hilbert_poly(v, H)}};
            }
        }
        r["compactness"] = cj;
        auto ci = ci_certificate(L, H);
        json cij = {{"ci", ci.complete_intersection}};
        if (!ci.complete_intersection) cij["witness"] = coords_json(*ci.witness);
        r["complete_intersection"] = cij;
    }

    if (L->rank() == 2) {
        json classes;
        json minus2 = json::array(), plus2 = json::array();
        for (const auto& c : classes_with_square(L, Int(-2), opt.height)) minus2.push_back(coords_json(c));
        for (const auto& c : classes_with_square(L, Int(2), opt.height)) plus2.push_back(coords_json(c));
        classes["minus_two"] = minus2;
        classes["plus_two"] = plus2;
        r["classes"] = classes;

        auto rays = effective_cone_rays(L, H, opt.height);
        json cones;
        if (rays.empty()) {
            cones["found_minus2"] = false;
            cones["note"] = "no -2 curves within height";
        } else {
            cones["found_minus2"] = true;
            json er = json::array(), ab = json::array();
            std::vector<DivisorClass> boundary;
            for (const auto& c : rays) {
                er.push_back(coords_json(c));
                boundary.push_back(orthogonal_ray(c, H));
            }
            std::sort(boundary.begin(), boundary.end());
            for (const auto& c : boundary) ab.push_back(coords_json(c));
            cones["effective_rays"] = er;
            cones["ample_boundary"] = ab;
        }
        r["cones"] = cones;

        // Unit-power classification of the +-2 classes on the (H,l) lattice.
        if (L->gram().at(0, 0) == 8 && L->gram().at(0, 1) == 1 && L->gram().at(1, 1) == -2) {
            json units = json::array();
            for (const Int& sq : {Int(-2), Int(2)})
                for (const auto& c : classes_with_square(L, sq, opt.height)) {
                    auto up = unit_power_classify(L, c);
                    units.push_back({{"class", coords_json(c)},
                                     {"square", to_json(sq)},
                                     {"sign", up.sign},
                                     {"exponent", up.exponent}});
                }
            r["unit_classification"] = units;
        }
    }

    if (!s.report_pairings.empty()) {
        json pj;
        for (const auto& [an, bn] : s.report_pairings) {
            auto ai = s.extra_classes.find(an), bi = s.extra_classes.find(bn);
            if (ai == s.extra_classes.end() || bi == s.extra_classes.end())
                throw ScenarioError(s.name + ".report_pairings: unknown class name");
            pj[an + "." + bn] = to_json(pair(ai->second, bi->second));
        }
        r["pairings"] = pj;
    }

    if (s.involution) {
        json ij;
        ij["matrix"] = gram_json(*s.involution);
        ij["isometry_involution"] = check_involution(L, *s.involution);
        json fixes, swaps;
        for (const auto& n : s.involution_fixes) {
            const auto& c = s.extra_classes.at(n);
            fixes[n] = (apply_matrix(*s.involution, c) == c);
        }
        for (const auto& [an, bn] : s.involution_swaps) {
            const auto& a = s.extra_classes.at(an);
            const auto& b = s.extra_classes.at(bn);
            swaps[an + "<->" + bn] =
                (apply_matrix(*s.involution, a) == b && apply_matrix(*s.involution, b) == a);
        }
        if (!fixes.empty()) ij["fixes"] = fixes;
        if (!swaps.empty()) ij["swaps"] = swaps;
        r["involution"] = ij;
    }

    if (s.moduli_lattice) {
        DivisorClass deg(*s.moduli_lattice, *s.moduli_degree_class);
        auto verdict = fineness_parity_check(*s.moduli_lattice, deg);
        r["parity_check"] = {{"lattice", gram_json((*s.moduli_lattice)->gram())},
                             {"degree_class", coords_json(deg)},
                             {"verdict", verdict == ParityVerdict::obstructed ? "obstructed" : "unobstructed"}};
    }

    if (s.net) {
        json nj;
        auto sextic = det_sextic(*s.net);
        nj["det"] = sextic.poly.str();
        nj["det_degree"] = sextic.poly.degree();
        nj["degenerate"] = sextic.degenerate;
        // A smooth plane sextic has genus 10; the count of even ineffective
        // theta-characteristics is the number of quadric nets determining it.
        nj["theta_characteristics"] = {{"genus", 10}, {"count", to_json(theta_count(10))}};
        if (!s.net_lines.empty()) {
            json lines = json::array();
            for (const auto& lam : s.net_lines) {
                json lj;
                lj["line"] = {to_json(lam[0]), to_json(lam[1]), to_json(lam[2])};
                auto restriction = restrict_to_line(sextic, lam);
                if (restriction.line_is_component) {
                    lj["component"] = true;
                } else {
                    lj["component"] = false;
                    lj["tritangent"] = tritangent_certificate(sextic, lam);
                    lj["restriction"] = restriction.form.str();
                }
                lines.push_back(lj);
            }
            nj["tritangents"] = lines;
        }
        if (!s.net_pencils.empty()) {
            json pencils = json::array();
            for (const auto& [p, q] : s.net_pencils) {
                auto br = pencil_branch_form(*s.net, p, q);
                json pj;
                pj["points"] = {{to_json(p[0]), to_json(p[1]), to_json(p[2])},
                                {to_json(q[0]), to_json(q[1]), to_json(q[2])}};
                pj["degenerate"] = br.degenerate;
                if (!br.degenerate) {
                    pj["branch_form"] = br.form.str();
                    json mult = json::array();
                    for (const auto& [m, c] : br.multiplicities) mult.push_back({m, c});
                    pj["multiplicities"] = mult;
                    pj["six_distinct_points"] = is_squarefree(br.form);
                }
                pencils.push_back(pj);
            }
            nj["pencils"] = pencils;
        }
        auto scan = singular_point_scan(sextic, s.scan_height, s.scan_primes);
        json sj;
        sj["height"] = s.scan_height;
        json pts = json::array();
        for (const auto& p : scan.points) pts.push_back(p.str());
        sj["points"] = pts;
        sj["count"] = scan.points.size();
        sj["non_reduced_evidence"] = scan.non_reduced_evidence;
        if (!scan.finite_field_counts.empty()) {
            json ff;
            for (const auto& [p, c] : scan.finite_field_counts) ff[std::to_string(p)] = c;
            sj["finite_field_counts"] = ff;
        }
        nj["singular_scan"] = sj;
        r["net"] = nj;
    }

    if (s.run_fm) {
        AlgebraicMukaiLattice aml(L);
        auto basis = vperp_mod_v_basis(aml);
        auto constraints = fm_constraint_set(aml, opt.branch);
        auto pm = build_constraints(aml, constraints);
        auto sys = isometry_system(aml, pm);
        json fj;
        fj["branch"] = fm_branch_name(opt.branch);
        fj["coset_basis"] = {{"x", to_json(basis.x)}, {"w", to_json(basis.w)}};
        fj["coset_gram"] = gram_json(basis.coset_gram);
        json cj = json::array();
        for (const auto& c : constraints) {
            json one;
            json src = json::array(), tgt = json::array();
            for (const auto& x : c.source) src.push_back(to_json(x));
            for (const auto& x : c.target) tgt.push_back(to_json(x));
            one["source"] = src;
            one["target"] = tgt;
            one["modulo_fundamental"] = c.modulo_fundamental;
            cj.push_back(one);
        }
        fj["constraints"] = cj;
        json pmj = json::array();
        for (std::size_t i = 0; i < 4; ++i) {
            json row = json::array();
            for (std::size_t j2 = 0; j2 < 4; ++j2) row.push_back(pm.P.at(i, j2).str());
            pmj.push_back(row);
        }
        fj["matrix"] = pmj;
        fj["eliminated"] = sys.eliminated;
        if (sys.eliminated) {
            fj["det_relation"] = sys.det_relation.str();
            json lin = json::array();
            for (const auto& p : sys.linear_relations) lin.push_back(p.str());
            fj["linear_relations"] = lin;
            fj["residual_quadratic"] = sys.residual_quadratic.str();
            auto points = solve_points(sys.residual_quadratic, s.fm_height);
            json ptj = json::array();
            json solj = json::array();
            for (const auto& p : points) {
                ptj.push_back({to_json(p[0]), to_json(p[1]), to_json(p[2])});
                auto sol = assemble(aml, pm, sys, p);
                auto rep = verify_hodge_isometry(aml, pm, sol);
                json sjn;
                sjn["point"] = {to_json(p[0]), to_json(p[1]), to_json(p[2])};
                json elim;
                for (const auto& [k2, val] : sol.eliminated_values) elim[k2] = to_json(val);
                sjn["eliminated"] = elim;
                sjn["vEx"] = to_json(sol.vEx);
                if (sol.twist_class) {
                    sjn["twist"] = coords_json(*sol.twist_class);
                    sjn["normalized"] = to_json(*sol.normalized);
                } else {
                    sjn["twist"] = nullptr;
                    sjn["normalized"] = nullptr;
                }
                sjn["integral"] = sol.integral;
                sjn["verification"] = {{"isometry", rep.isometry},
                                       {"det_unimodular", rep.det_unimodular},
                                       {"fundamental_ok", rep.fundamental_ok},
                                       {"images_ok", rep.images_ok}};
                solj.push_back(sjn);
                if (s.fm_point && p == *s.fm_point) fj["declared_point"] = sjn;
            }
            fj["points"] = ptj;
            fj["point_search_height"] = s.fm_height;
            fj["solutions"] = solj;
        } else {
            json raw = json::array();
            for (const auto& p : sys.raw_entries) raw.push_back(p.str());
            fj["raw_system"] = raw;
        }
        r["fm"] = fj;
    }

    // Quoted cross-check values: disagreement is reported, never asserted.
    json checks = json::array();
    json discrepancies = json::array();
    for (const auto& c : s.crosscheck) {
        std::string path = c.at("path").get<std::string>();
        json quoted = c.at("quoted");
        json entry;
        entry["path"] = path;
        entry["quoted"] = quoted;
        json computed;
        try {
            computed = r.at(json::json_pointer(path));
        } catch (const std::exception&) {
            entry["error"] = "path not found in report";
            checks.push_back(entry);
            continue;
        }
        entry["computed"] = computed;
        bool agree = (computed == quoted);
        entry["agree"] = agree;
        checks.push_back(entry);
        if (!agree) {
            std::ostringstream note;
            note << path << ": computed " << computed.dump() << " disagrees with quoted value "
                 << quoted.dump();
            discrepancies.push_back(note.str());
        }
    }
    if (!checks.empty()) r["crosschecks"] = checks;
    r["discrepancies"] = discrepancies;
    return r;
}

// Every leaf present in `expected` must match the report exactly.
inline void expectation_mismatches(const json& report, const json& expected, const std::string& path,
                                   std::vector<std::string>& out) {
    if (expected.is_object()) {
        for (const auto& [key, sub] : expected.items()) {
            std::string sp = path + "/" + key;
            if (!report.is_object() || !report.contains(key)) {
                out.push_back(sp + ": expected " + sub.dump() + ", field missing");
                continue;
            }
            expectation_mismatches(report.at(key), sub, sp, out);
        }
        return;
    }
    if (report != expected)
        out.push_back(path + ": expected " + expected.dump() + ", got " + report.dump());
}

inline std::vector<std::string> expectation_mismatches(const json& report, const json& expected) {
    std::vector<std::string> out;
    expectation_mismatches(report, expected, "", out);
    return out;
}

struct ScenarioRow {
    std::string file;
    std::string name;
    bool ok;
    std::vector<std::string> mismatches;
};

struct RunAllSummary {
    std::vector<ScenarioRow> rows;
    int exit_code = 0;

    std::string table() const {
        std::ostringstream os;
        for (const auto& row : rows) {
            os << (row.ok ? "[ OK ] " : "[FAIL] ") << row.name << " (" << row.file << ")\n";
            for (const auto& m : row.mismatches) os << "        " << m << "\n";
        }
        os << (exit_code == 0 ? "all scenarios match expectations\n" : "expectation mismatches found\n");
        return os.str();
    }
};

inline RunAllSummary run_all(const std::string& dir, const ScenarioOptions& opt) {
    namespace fs = std::filesystem;
    RunAllSummary summary;
    std::vector<std::string> files;
    if (!fs::exists(dir)) throw ScenarioError(dir + ": no such directory");
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        Scenario s = load_scenario_file(f);
        json report = run_scenario(s, opt);
        ScenarioRow row{fs::path(f).filename().string(), s.name, true, {}};
        row.mismatches = expectation_mismatches(report, s.expected);
        row.ok = row.mismatches.empty();
        if (!row.ok) summary.exit_code = 1;
        summary.rows.push_back(std::move(row));
    }
    return summary;
}

// Text rendering of the JSON report (same content, one key per line).
inline void render_text(const json& j, const std::string& indent, std::ostream& os) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_object() || (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array()))) {
                os << indent << k << ":\n";
                render_text(v, indent + "  ", os);
            } else {
                os << indent << k << ": " << v.dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        std::size_t i = 0;
        for (const auto& v : j) {
            if (v.is_object() || v.is_array()) {
                os << indent << "- [" << i << "]\n";
                render_text(v, indent + "  ", os);
            } else {
                os << indent << "- " << v.dump() << "\n";
            }
            ++i;
        }
    } else {
        os << indent << j.dump() << "\n";
    }
}

inline std::string render_text(const json& j) {
    std::ostringstream os;
    render_text(j, "", os);
    return os.str();
}

} // namespace mukai
