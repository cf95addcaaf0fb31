#include "groupoidrep/cli.hpp"

#include "groupoidrep/rep_ring.hpp"
#include "groupoidrep/samples.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

namespace groupoidrep {

namespace {

size_t sz(int v) { return static_cast<size_t>(v); }

struct Workspace {
    json doc;
    std::optional<LoadedGroupoid> loaded;
    HaarSystem w;
    std::vector<std::pair<std::string, Representation>> reps;

    const Groupoid& G() const {
        if (!loaded) throw InputError("missing key \"groupoid\"");
        return loaded->groupoid;
    }
};

Workspace load_workspace(const RunConfig& c) {
    if (c.input.empty()) throw InputError("no --input given");
    Workspace ws;
    ws.doc = load_document(c.input);
    if (!ws.doc.is_object()) throw InputError("input document must be an object");
    if (ws.doc.contains("groupoid")) {
        ws.loaded = groupoid_from_json(ws.doc.at("groupoid"));
        ws.w = haar_from_json(ws.G(), ws.doc.contains("haar") ? &ws.doc.at("haar") : nullptr);
        if (ws.doc.contains("representations")) {
            const json& r = ws.doc.at("representations");
            if (r.is_object()) {
                for (auto it = r.begin(); it != r.end(); ++it)
                    ws.reps.emplace_back(it.key(), rep_from_json(ws.G(), ws.w, it.value()));
            } else if (r.is_array()) {
                for (size_t i = 0; i < r.size(); ++i)
                    ws.reps.emplace_back(r[i].value("name", "rep" + std::to_string(i)), rep_from_json(ws.G(), ws.w, r[i]));
            } else {
                throw InputError("representations must be an object or a list");
            }
        }
    }
    return ws;
}

const Representation& select_rep(const Workspace& ws, const std::string& name) {
    if (ws.reps.empty()) throw InputError("input has no representations");
    if (name.empty()) return ws.reps.front().second;
    for (const auto& [n, r] : ws.reps)
        if (n == name) return r;
    throw InputError("no representation named \"" + name + "\"");
}

std::string rep_name(const Workspace& ws, const std::string& name) {
    return name.empty() ? ws.reps.front().first : name;
}

/// Unitary version of rho (unitarized when needed) and whether that happened.
std::pair<Representation, bool> unitary_version(const Groupoid& G, const HaarSystem& w, const Representation& rho) {
    if (rho.unitary) return {rho, false};
    return {unitarize(G, w, rho).rep, true};
}

json dims_json(const HilbertField& f) { return f.dims; }

using Command = std::function<json(const RunConfig&, Workspace&, bool&)>;

json cmd_validate(const RunConfig& c, Workspace& ws, bool& ok) {
    const Groupoid& G = ws.G();
    Report axioms = validate_groupoid(G);
    json out = {{"groupoid", {{"kind", ws.loaded->kind}, {"objects", G.num_objects()}, {"arrows", G.num_arrows()}}},
                {"axioms", to_json(axioms)}};
    ok = axioms.ok;
    if (axioms.ok) {
        Report haar = validate_haar(G, ws.w, c.tol);
        out["haar"] = to_json(haar);
        ok = ok && haar.ok;
    }
    return out;
}

json cmd_orbits(const RunConfig&, Workspace& ws, bool& ok) {
    const Groupoid& G = ws.G();
    Report axioms = validate_groupoid(G);
    ok = axioms.ok;
    json out = {{"axioms", to_json(axioms)}};
    if (!ok) return out;
    out["orbits"] = orbits(G);
    json iso = json::array();
    for (int m = 0; m < G.num_objects(); ++m) iso.push_back(G.hom(m, m).size());
    out["isotropy_orders"] = iso;
    Groupoid R = orbit_relation(G);
    json pairs = json::array();
    for (int r = 0; r < R.num_arrows(); ++r) pairs.push_back({R.tgt(r), R.src(r)});
    out["relation"] = pairs;
    return out;
}

json cmd_haar(const RunConfig& c, Workspace& ws, bool& ok) {
    const Groupoid& G = ws.G();
    Report haar = validate_haar(G, ws.w, c.tol);
    ok = haar.ok;
    return {{"haar", to_json(haar)}, {"orbit_constant", is_orbit_constant(G, ws.w)}, {"weights", to_json(ws.w)["weights"]}};
}

json cmd_rep_validate(const RunConfig& c, Workspace& ws, bool& ok) {
    const Groupoid& G = ws.G();
    json out = json::object();
    if (ws.reps.empty()) throw InputError("input has no representations");
    for (const auto& [name, rho] : ws.reps) {
        if (!c.rep.empty() && name != c.rep) continue;
        Report v = validate_rep(G, rho, c.tol);
        Report fell = v.ok ? fell_norm_check(G, rho, c.tol) : Report::fail("skipped");
        out[name] = {{"dims", dims_json(rho.field)}, {"unitary", rho.unitary}, {"axioms", to_json(v)},
                     {"norms", to_json(fell)}};
        ok = ok && v.ok && fell.ok;
    }
    if (out.empty()) throw InputError("no representation named \"" + c.rep + "\"");
    return {{"representations", out}};
}

json cmd_decompose(const RunConfig& c, Workspace& ws, bool& ok) {
    const Groupoid& G = ws.G();
    auto [rho, unitarized] = unitary_version(G, ws.w, select_rep(ws, c.rep));
    auto parts = decompose(G, rho, c.seed);
    std::vector<size_t> order(parts.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return parts[a].rep.field.total_dim() < parts[b].rep.field.total_dim();
    });
    json summands = json::array();
    json totals = json::array();
    std::vector<Matrix> projector;
    for (int m = 0; m < G.num_objects(); ++m) projector.push_back(Matrix::Zero(rho.dim(m), rho.dim(m)));
    double intertwining = 0.0;
    for (size_t i : order) {
        const auto& s = parts[i];
        bool irr = is_M_irreducible(G, s.rep);
        ok = ok && irr;
        double res = intertwining_residual(G, s.rep, rho, s.embedding);
        intertwining = std::max(intertwining, res);
        for (int m = 0; m < G.num_objects(); ++m)
            projector[sz(m)] += s.embedding.mats[sz(m)] * s.embedding.mats[sz(m)].adjoint();
        totals.push_back(s.rep.field.total_dim());
        summands.push_back({{"dims", dims_json(s.rep.field)}, {"m_irreducible", irr}, {"rep", to_json(s.rep)}});
    }
    double completeness = 0.0;
    for (int m = 0; m < G.num_objects(); ++m)
        if (rho.dim(m)) completeness = std::max(completeness, max_abs(projector[sz(m)] - Matrix::Identity(rho.dim(m), rho.dim(m))));
    // isomorphism classes among the summands
    std::vector<int> cls(order.size(), -1);
    int classes = 0;
    for (size_t a = 0; a < order.size(); ++a) {
        if (cls[a] >= 0) continue;
        cls[a] = classes;
        for (size_t b = a + 1; b < order.size(); ++b)
            if (cls[b] < 0 && is_isomorphic(G, parts[order[a]].rep, parts[order[b]].rep, Prng::derive(c.seed, a * 97 + b)).isomorphic)
                cls[b] = classes;
        ++classes;
    }
    ok = ok && intertwining < c.tol && completeness < c.tol;
    return {{"representation", rep_name(ws, c.rep)},
            {"unitarized", unitarized},
            {"summand_count", parts.size()},
            {"summand_dims", totals},
            {"summands", summands},
            {"isomorphism_class", cls},
            {"intertwining_residual", sig12(intertwining)},
            {"completeness_residual", sig12(completeness)}};
}

json schur_json(const SchurReport& s) {
    json lambdas = json::array();
    for (const auto& l : s.lambdas) {
        json row = json::array();
        for (const auto& z : l) row.push_back(to_json(z));
        lambdas.push_back(row);
    }
    json out = {{"ok", s.ok}, {"end_dim", s.end_dim}, {"hom_dim", s.hom_dim}, {"lambdas", lambdas}};
    if (!s.ok) out["what"] = s.what;
    return out;
}

json cmd_schur(const RunConfig& c, Workspace& ws, bool& ok) {
    const Groupoid& G = ws.G();
    if (!c.rep.empty() || !c.rep2.empty()) {
        const Representation& a = select_rep(ws, c.rep);
        const Representation& b = select_rep(ws, c.rep2.empty() ? c.rep : c.rep2);
        SchurReport s = schur_check(G, a, b, c.tol);
        ok = s.ok;
        return {{"pairs", json::array({{{"first", rep_name(ws, c.rep)}, {"second", c.rep2}, {"result", schur_json(s)}}})}};
    }
    PWSet pw = compute_pw_set(G, ws.w, c.seed);
    json pairs = json::array();
    for (size_t i = 0; i < pw.members.size(); ++i)
        for (size_t j = 0; j < pw.members.size(); ++j) {
            SchurReport s = schur_check(G, pw.members[i].rep, pw.members[j].rep, c.tol);
            bool expect = (i == j) ? s.end_dim == 1 && s.hom_dim == 1 : s.hom_dim == 0;
            ok = ok && s.ok && expect;
            pairs.push_back({{"first", i}, {"second", j}, {"result", schur_json(s)}});
        }
    return {{"source", "pw-set"}, {"members", pw.members.size()}, {"pairs", pairs}};
}

json pw_members_json(const PWSet& pw) {
    json members = json::array();
    for (const auto& m : pw.members) {
        json chi = json::array();
        for (const auto& z : m.character) chi.push_back(to_json(z));
        members.push_back({{"orbit", m.orbit}, {"base", m.base}, {"dims", dims_json(m.rep.field)}, {"character", chi}});
    }
    return members;
}

json cmd_peterweyl(const RunConfig& c, Workspace& ws, bool& ok) {
    const Groupoid& G = ws.G();
    PWSet pw = compute_pw_set(G, ws.w, c.seed);
    json certs = json::array();
    for (const auto& cert : pw.certificates)
        certs.push_back({{"object", cert.object}, {"isotropy_order", cert.isotropy_order}, {"dims", cert.dims},
                         {"sum_squares", cert.sum_squares}, {"bijective", cert.bijective()}});
    CoefficientReport orth = pw_orthogonality(pw, G, ws.w, c.tol);
    CoefficientReport comp = pw_completeness(pw, G, ws.w, c.tol);
    json ranks = json::array();
    for (const auto& fr : comp.ranks) ranks.push_back({{"n", fr.n}, {"m", fr.m}, {"rank", fr.rank}, {"expected", fr.expected}});
    json out = {{"members", pw_members_json(pw)},
                {"certificates", certs},
                {"gram_offblock_max", sig12(orth.gram_offblock_max)},
                {"rank_per_fiber", ranks},
                {"total_rank", comp.total_rank},
                {"expected_total_rank", comp.expected_total},
                {"orthogonality_ok", orth.ok},
                {"completeness_ok", comp.ok}};
    ok = orth.ok && comp.ok;
    if (!comp.ok) out["completeness_failure"] = {{"what", comp.what}, {"witness", comp.witness}};
    if (!pw.complete()) {
        ok = false;
        out["psi_error"] = "restriction to some isotropy group is not bijective";
        return out;
    }
    PsiReport psi = pw_isomorphism(pw, G, ws.w, c.tol);
    json ident = json::array();
    for (const auto& d : psi.dimension_identity)
        ident.push_back({{"object", d.object}, {"lhs", d.sum_squares}, {"rhs", d.isotropy_order},
                         {"holds", d.sum_squares == d.isotropy_order}});
    json norm = json::array();
    for (const auto& row : psi.normalizer) {
        json r = json::array();
        for (double x : row) r.push_back(sig12(x));
        norm.push_back(r);
    }
    json dets = json::array();
    for (double d : psi.abs_det) dets.push_back(sig12(d));
    out["dimension_identity"] = ident;
    out["bijective"] = psi.bijective;
    out["abs_det"] = dets;
    out["equivariance_residual"] = sig12(psi.equivariance_residual);
    out["normalizer"] = norm;
    out["normalized_unitarity_residual"] = sig12(psi.normalized_unitarity_residual);
    out["psi"] = to_json(psi.psi);
    ok = ok && psi.ok;
    return out;
}

json cmd_conv(const RunConfig& c, Workspace& ws, bool& ok) {
    const Groupoid& G = ws.G();
    Prng rng(c.seed);
    std::vector<std::pair<std::string, Representation>> reps;
    for (const auto& [name, r] : ws.reps) reps.emplace_back(name, unitary_version(G, ws.w, r).first);
    if (reps.empty()) {
        PWSet pw = compute_pw_set(G, ws.w, c.seed);
        Prng prng(Prng::derive(c.seed, 1));
        reps.emplace_back("random", unitarize(G, ws.w, random_skewed_rep(G, pw, prng)).rep);
    }
    json trips = json::object();
    for (const auto& [name, rho] : reps) {
        RoundTripReport r = bijection_roundtrip(G, ws.w, rho, c.tol);
        trips[name] = {{"ok", r.ok},
                       {"extract_residual", sig12(r.extract_residual)},
                       {"integrate_residual", sig12(r.integrate_residual)},
                       {"homomorphism_residual", sig12(r.homomorphism_residual)},
                       {"star_residual", sig12(r.star_residual)}};
        if (!r.ok) trips[name]["what"] = r.what;
        ok = ok && r.ok;
    }
    double assoc = 0.0;
    for (int t = 0; t < 100; ++t) {
        ConvElement a = random_element(G, rng), b = random_element(G, rng), d = random_element(G, rng);
        ConvElement left = convolve(convolve(a, b, G, ws.w), d, G, ws.w);
        ConvElement right = convolve(a, convolve(b, d, G, ws.w), G, ws.w);
        assoc = std::max(assoc, max_abs_diff(left, right));
    }
    ok = ok && assoc < c.tol;
    return {{"orbit_constant_haar", is_orbit_constant(G, ws.w)},
            {"roundtrip", trips},
            {"associativity_trials", 100},
            {"associativity_residual", sig12(assoc)}};
}

json cmd_morita(const RunConfig& c, Workspace& ws, bool& ok) {
    const Groupoid& G = ws.G();
    Groupoid H;
    Bibundle b;
    std::string source;
    if (ws.doc.contains("bibundles")) {
        H = groupoid_from_json(ws.doc.contains("target") ? ws.doc.at("target") : ws.doc.at("groupoid")).groupoid;
        const json& bs = ws.doc.at("bibundles");
        const json* pick = nullptr;
        if (bs.is_object()) {
            if (c.bibundle.empty()) {
                if (bs.empty()) throw InputError("bibundles is empty");
                pick = &bs.begin().value();
                source = bs.begin().key();
            } else if (bs.contains(c.bibundle)) {
                pick = &bs.at(c.bibundle);
                source = c.bibundle;
            }
        } else if (bs.is_array() && !bs.empty()) {
            pick = &bs[0];
            source = "0";
        }
        if (!pick) throw InputError("no bibundle named \"" + c.bibundle + "\"");
        b = bibundle_from_json(G, H, *pick);
    } else if (ws.loaded->principal) {
        H = ws.loaded->principal->group;
        b = ws.loaded->principal->bibundle;
        source = "principal bundle";
    } else {
        H = G;
        b = unit_bibundle(G);
        source = "unit bibundle";
    }
    BibundleReport v = validate_bibundle(G, H, b);
    json out = {{"bibundle", source},
                {"valid", v.ok},
                {"classification", v.classification},
                {"left_free", v.left_free},
                {"left_principal", v.left_principal},
                {"right_free", v.right_free},
                {"right_principal", v.right_principal},
                {"morita", v.morita},
                {"left_quotient", v.left_quotient},
                {"right_quotient", v.right_quotient}};
    if (!v.what.empty()) out["what"] = v.what;
    if (!v.witness.empty()) out["witness"] = v.witness;
    ok = v.ok && v.morita;
    if (!ok) return out;

    PWSet pw = compute_pw_set(G, ws.w, c.seed);
    std::vector<Representation> samples = pw.reps();
    samples.push_back(left_regular(G, ws.w));
    for (const auto& [name, r] : ws.reps) samples.push_back(unitary_version(G, ws.w, r).first);
    EquivalenceReport e = equivalence_check(G, H, b, samples, c.seed);
    out["round_trip"] = e.round_trip;
    out["irreducible_kept"] = e.irreducible_kept;
    out["hom_dims_source"] = e.hom_g;
    out["hom_dims_target"] = e.hom_h;
    if (!e.what.empty()) out["equivalence_what"] = e.what;

    RepRing rg(G, ws.w, c.seed);
    RepRing rh(H, counting_haar(H), c.seed);
    json class_map = json::array();
    bool classes_ok = rg.rank() == rh.rank();
    for (int i = 0; i < rg.rank(); ++i) {
        RepRingElement img = rh.classify(induce_rep(G, H, b, rg.basis(i)));
        long long total = 0;
        int hit = -1;
        for (size_t k = 0; k < img.coeffs.size(); ++k) {
            total += img.coeffs[k];
            if (img.coeffs[k] == 1) hit = static_cast<int>(k);
        }
        if (total != 1) classes_ok = false;
        class_map.push_back(hit);
    }
    out["ring_rank_source"] = rg.rank();
    out["ring_rank_target"] = rh.rank();
    out["class_map"] = class_map;
    out["classes_preserved"] = classes_ok;
    ok = ok && e.ok && classes_ok;
    return out;
}

json cmd_bisections(const RunConfig& c, Workspace& ws, bool& ok) {
    const Groupoid& G = ws.G();
    BisectionGroup bis = enumerate_bisections(G);
    BisectionalReport br = is_bisectional(G);
    json elems = json::array();
    for (const auto& b : bis.elements) elems.push_back(to_json(b));
    json out = {{"order", bis.elements.size()},
                {"group_axioms", to_json(bis.axioms)},
                {"elements", elems},
                {"table", to_json(bis.group)["table"]},
                {"bisectional", br.bisectional},
                {"openness_automatic", br.openness_automatic}};
    if (br.witness >= 0) out["uncovered_arrow"] = br.witness;
    ok = bis.axioms.ok && br.bisectional;
    std::vector<std::pair<std::string, Representation>> reps;
    for (const auto& [name, r] : ws.reps) reps.emplace_back(name, unitary_version(G, ws.w, r).first);
    if (reps.empty()) reps.emplace_back("left_regular", left_regular(G, ws.w));
    json trips = json::object();
    for (const auto& [name, rho] : reps) {
        BisectionAction a = induced_bisection_rep(G, bis, rho);
        BisectionActionReport ar = check_bisection_action(G, bis, a, c.tol);
        json entry = {{"action_ok", ar.ok},
                      {"unitarity_residual", sig12(ar.unitarity_residual)},
                      {"linearity_residual", sig12(ar.linearity_residual)},
                      {"locality_residual", sig12(ar.locality_residual)},
                      {"homomorphism_residual", sig12(ar.homomorphism_residual)}};
        if (!ar.ok) entry["what"] = ar.what;
        ok = ok && ar.ok;
        if (ar.ok && br.bisectional) {
            BisectionRoundTrip rt = bisection_roundtrip(G, bis, rho, c.tol);
            entry["rep_residual"] = sig12(rt.rep_residual);
            entry["action_residual"] = sig12(rt.action_residual);
            entry["roundtrip_ok"] = rt.ok;
            ok = ok && rt.ok;
        }
        trips[name] = entry;
    }
    out["representations"] = trips;
    return out;
}

json cmd_repring(const RunConfig& c, Workspace& ws, bool& ok) {
    const Groupoid& G = ws.G();
    RepRing ring(G, ws.w, c.seed);
    ring.compute_all_structure_constants();
    const int r = ring.rank();
    json constants = json::array();
    for (int i = 0; i < r; ++i) {
        json row = json::array();
        for (int j = 0; j < r; ++j) row.push_back(ring.structure_constant(i, j).coeffs);
        constants.push_back(row);
    }
    json res = json::array();
    for (int m = 0; m < G.num_objects(); ++m) res.push_back(ring.restriction_map(m));
    DominanceReport dom = dominance_report(ring);
    json per = json::array();
    for (const auto& d : dom.objects)
        per.push_back({{"object", d.object}, {"injective", d.injective}, {"surjective", d.surjective},
                       {"bijective", d.bijective()}});
    json out = {{"rank", r},
                {"basis", ring.labels()},
                {"structure_constants", constants},
                {"restriction_maps", res},
                {"dominance", per},
                {"globally_injective", dom.globally_injective},
                {"all_bijective", dom.all_bijective},
                {"one", ring.one().coeffs}};
    json classes = json::object();
    for (const auto& [name, rho] : ws.reps) classes[name] = ring.classify(rho).coeffs;
    out["classified"] = classes;
    ok = true;
    return out;
}

json cmd_field(const RunConfig& c, Workspace& ws, bool& ok) {
    const json& d = ws.doc;
    if (!d.contains("field")) throw InputError("missing key \"field\"");
    HilbertField f = field_from_json(d.at("field"));
    if (!d.contains("space")) throw InputError("missing key \"space\"");
    SampledSpace space = space_from_json(d.at("space"));
    if (space.num_points() != f.num_objects()) throw InputError("space and field have different point counts");
    LscReport lsc = check_dim_lsc(f, space);
    json out = {{"dims", f.dims},
                {"lsc", {{"ok", lsc.ok}, {"violators", lsc.violators}, {"witnesses", lsc.witnesses}}}};
    ok = lsc.ok;
    if (d.contains("sections")) {
        std::vector<Section> sections;
        for (const auto& s : d.at("sections")) {
            sections.push_back(section_from_json(s));
            try {
                check_section(f, sections.back());
            } catch (const StructuralError& e) {
                throw InputError(std::string("section: ") + e.what());
            }
        }
        const int base = d.value("base", 0);
        if (base < 0 || base >= f.num_objects()) throw InputError("base point out of range");
        try {
            GramTrivialization t = gram_trivialization(f, sections, base, c.tol);
            json dets = json::array();
            for (double x : t.gram_det) dets.push_back(sig12(x));
            json excluded = json::array();
            for (int m = 0; m < f.num_objects(); ++m)
                if (std::find(t.region.begin(), t.region.end(), m) == t.region.end()) excluded.push_back(m);
            out["trivialization"] = {{"base", base}, {"chosen", t.chosen}, {"gram_det", dets},
                                     {"region", t.region}, {"excluded", excluded}};
        } catch (const NumericalError& e) {
            out["trivialization"] = {{"error", e.what()}};
            ok = false;
        }
        const double lip = d.value("lipschitz", 1.0);
        json cont = json::array();
        for (const auto& s : sections) {
            ContinuityReport cr = check_norm_continuity(f, space, s, [lip](double x) { return lip * x; });
            cont.push_back({{"ok", cr.ok}, {"worst_excess", sig12(cr.worst_excess)}, {"violations", cr.violations}});
            ok = ok && cr.ok;
        }
        out["continuity"] = cont;
    }
    return out;
}

const std::map<std::string, Command>& table() {
    static const std::map<std::string, Command> t = {
        {"validate", cmd_validate},       {"orbits", cmd_orbits},         {"haar-check", cmd_haar},
        {"rep-validate", cmd_rep_validate}, {"decompose", cmd_decompose}, {"schur", cmd_schur},
        {"peterweyl", cmd_peterweyl},     {"conv-roundtrip", cmd_conv},   {"morita", cmd_morita},
        {"bisections", cmd_bisections},   {"repring", cmd_repring},       {"field-topology", cmd_field},
    };
    return t;
}

}  // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> names = {"validate",  "orbits",        "haar-check", "rep-validate",
                                                   "decompose", "schur",         "peterweyl",  "conv-roundtrip",
                                                   "morita",    "bisections",    "repring",    "field-topology"};
    return names;
}

RunResult run(const RunConfig& config) {
    RunResult res;
    res.report = {{"command", config.command},
                  {"input", config.input},
                  {"seed", config.seed},
                  {"tol", sig12(config.tol)}};
    try {
        auto it = table().find(config.command);
        if (it == table().end()) throw InputError("unknown command \"" + config.command + "\"");
        if (!(config.tol > 0)) throw InputError("--tol must be positive");
        Workspace ws = load_workspace(config);
        bool ok = true;
        json body = it->second(config, ws, ok);
        for (auto b = body.begin(); b != body.end(); ++b) res.report[b.key()] = b.value();
        res.report["ok"] = ok;
        res.status = ok ? 0 : 1;
    } catch (const InputError& e) {
        res.report["ok"] = false;
        res.report["error"] = {{"kind", "input"}, {"message", e.what()}};
        res.status = 2;
    } catch (const StructuralError& e) {
        res.report["ok"] = false;
        res.report["error"] = {{"kind", "input"}, {"message", e.what()}};
        res.status = 2;
    } catch (const json::exception& e) {
        res.report["ok"] = false;
        res.report["error"] = {{"kind", "input"}, {"message", e.what()}};
        res.status = 2;
    } catch (const PreconditionError& e) {
        res.report["ok"] = false;
        res.report["error"] = {{"kind", "precondition"}, {"message", e.what()}};
        res.status = 1;
    } catch (const ValidationError& e) {
        res.report["ok"] = false;
        res.report["error"] = {{"kind", "validation"}, {"message", e.what()}};
        res.status = 1;
    } catch (const NumericalError& e) {
        res.report["ok"] = false;
        res.report["error"] = {{"kind", "numerical"}, {"message", e.what()}};
        res.status = 1;
    }
    return res;
}

int run_and_write(const RunConfig& config, std::ostream& out, std::ostream& err) {
    RunResult r = run(config);
    std::string text = config.format == "text" ? to_text(r.report) : r.report.dump(2) + "\n";
    if (config.out.empty()) {
        out << text;
    } else {
        std::ofstream f(config.out);
        if (!f) {
            err << "cannot write " << config.out << "\n";
            return 2;
        }
        f << text;
    }
    if (r.report.contains("error")) err << r.report["error"]["message"].get<std::string>() << "\n";
    return r.status;
}

}  // namespace groupoidrep
