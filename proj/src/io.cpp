#include "groupoidrep/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace groupoidrep {

namespace {

size_t sz(int v) { return static_cast<size_t>(v); }

const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

int as_int(const json& j, const char* what) {
    if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
    return j.get<int>();
}

std::vector<int> int_list(const json& j, const char* what) {
    if (!j.is_array()) throw InputError(std::string(what) + " must be a list");
    std::vector<int> out;
    for (const auto& x : j) out.push_back(as_int(x, what));
    return out;
}

std::vector<std::vector<int>> int_table(const json& j, const char* what) {
    if (!j.is_array()) throw InputError(std::string(what) + " must be a list of lists");
    std::vector<std::vector<int>> out;
    for (const auto& row : j) out.push_back(int_list(row, what));
    return out;
}

double as_double(const json& j, const char* what) {
    if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
    return j.get<double>();
}

cplx entry(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw InputError("matrix entries must be numbers or [re, im] pairs");
}

FiniteGroup named_group(const std::string& name) {
    auto x = name.find('x');
    if (x != std::string::npos)
        return direct_product(named_group(name.substr(0, x)), named_group(name.substr(x + 1)));
    if (name == "Q8") return quaternion_group();
    if (name.size() >= 2) {
        int n = 0;
        try {
            n = std::stoi(name.substr(1));
        } catch (const std::exception&) {
            throw InputError("unknown group \"" + name + "\"");
        }
        if (n >= 1) {
            char c = name[0];
            if (c == 'Z' || c == 'C') return cyclic_group(n);
            if (c == 'S' && n <= 6) return symmetric_group(n);
            if (c == 'D' && n >= 1) return dihedral_group(n);
        }
    }
    throw InputError("unknown group \"" + name + "\"");
}

std::string join(const std::string& prefix, const std::string& key) { return prefix.empty() ? key : prefix + "." + key; }

void flatten(const json& j, const std::string& prefix, std::ostringstream& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), join(prefix, it.key()), out);
    } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& x) { return x.is_object(); })) {
        for (size_t i = 0; i < j.size(); ++i) flatten(j[i], join(prefix, std::to_string(i)), out);
    } else {
        out << prefix << ": " << j.dump() << "\n";
    }
}

}  // namespace

json parse_document(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // locate the byte offset as line and column
        size_t line = 1, col = 1;
        for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
    }
}

json load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str(), path);
}

double sig12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

json to_json(const cplx& z) { return json::array({sig12(z.real()), sig12(z.imag())}); }

json to_json(const Matrix& a) {
    json rows = json::array();
    for (int i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (int k = 0; k < a.cols(); ++k) row.push_back(to_json(a(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array()) throw InputError("matrix must be a list of rows");
    const int rows = static_cast<int>(j.size());
    int cols = -1;
    for (const auto& r : j) {
        if (!r.is_array()) throw InputError("matrix rows must be lists");
        if (cols < 0) cols = static_cast<int>(r.size());
        else if (cols != static_cast<int>(r.size())) throw InputError("matrix rows have different lengths");
    }
    Matrix a(rows, std::max(cols, 0));
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < a.cols(); ++k) a(i, k) = entry(j[sz(i)][sz(k)]);
    return a;
}

json to_json(const Vector& v) {
    json out = json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
    return out;
}

Vector vector_from_json(const json& j) {
    if (!j.is_array()) throw InputError("vector must be a list");
    Vector v(static_cast<int>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = entry(j[i]);
    return v;
}

FiniteGroup group_from_json(const json& j) {
    if (j.is_string()) return named_group(j.get<std::string>());
    if (j.is_object() && j.contains("table")) {
        try {
            return FiniteGroup::from_table(int_table(j.at("table"), "group table"), j.value("name", std::string{}));
        } catch (const ValidationError& e) {
            throw InputError(std::string("group table: ") + e.what());
        } catch (const StructuralError& e) {
            throw InputError(std::string("group table: ") + e.what());
        }
    }
    throw InputError("group must be a name or {\"table\": ...}");
}

json to_json(const FiniteGroup& h) {
    json table = json::array();
    for (int a = 0; a < h.order; ++a) {
        json row = json::array();
        for (int b = 0; b < h.order; ++b) row.push_back(h(a, b));
        table.push_back(std::move(row));
    }
    return {{"name", h.name}, {"order", h.order}, {"table", table}};
}

LoadedGroupoid groupoid_from_json(const json& j) {
    if (!j.is_object()) throw InputError("groupoid must be an object");
    LoadedGroupoid out;
    try {
        if (j.contains("pair")) {
            out.kind = "pair";
            out.groupoid = make_pair(as_int(j.at("pair"), "pair"));
        } else if (j.contains("group")) {
            out.kind = "group";
            out.groupoid = group_as_groupoid(group_from_json(j.at("group")));
        } else if (j.contains("bundle")) {
            out.kind = "bundle";
            std::vector<FiniteGroup> fibers;
            for (const auto& g : j.at("bundle")) fibers.push_back(group_from_json(g));
            out.groupoid = make_bundle_of_groups(fibers);
        } else if (j.contains("action")) {
            out.kind = "action";
            const json& a = j.at("action");
            FiniteGroup h = group_from_json(need(a, "group"));
            out.groupoid = make_action(h, as_int(need(a, "points"), "points"), int_table(need(a, "act"), "act"));
        } else if (j.contains("gauge")) {
            out.kind = "gauge";
            const json& a = j.at("gauge");
            FiniteGroup h = group_from_json(need(a, "group"));
            int points = 0;
            std::vector<std::vector<int>> act;
            if (a.contains("base")) {
                int base = as_int(a.at("base"), "base");
                points = base * h.order;
                act = trivial_bundle_action(base, h);
            } else {
                points = as_int(need(a, "points"), "points");
                act = int_table(need(a, "act"), "act");
            }
            out.principal = principal_bundle(points, h, act);
            out.groupoid = out.principal->gauge;
        } else {
            out.kind = "full";
            std::vector<int> comp;
            for (const auto& row : need(j, "comp")) {
                auto r = int_list(row, "comp");
                comp.insert(comp.end(), r.begin(), r.end());
            }
            out.groupoid = Groupoid(as_int(need(j, "objects"), "objects"), int_list(need(j, "src"), "src"),
                                    int_list(need(j, "tgt"), "tgt"), std::move(comp), int_list(need(j, "inv"), "inv"),
                                    int_list(need(j, "unit"), "unit"));
        }
    } catch (const StructuralError& e) {
        throw InputError(std::string("groupoid: ") + e.what());
    } catch (const ValidationError& e) {
        throw InputError(std::string("groupoid: ") + e.what());
    }
    return out;
}

json to_json(const Groupoid& g) {
    json comp = json::array();
    for (int a = 0; a < g.num_arrows(); ++a) {
        json row = json::array();
        for (int b = 0; b < g.num_arrows(); ++b) row.push_back(g.comp(a, b));
        comp.push_back(std::move(row));
    }
    return {{"objects", g.num_objects()}, {"src", g.src_table()}, {"tgt", g.tgt_table()},
            {"comp", comp},               {"inv", g.inv_table()}, {"unit", g.unit_table()}};
}

HaarSystem haar_from_json(const Groupoid& g, const json* j) {
    if (!j || (j->is_string() && j->get<std::string>() == "counting")) return counting_haar(g);
    if (j->is_object() && j->contains("weights")) {
        HaarSystem w;
        for (const auto& x : j->at("weights")) w.weights.push_back(as_double(x, "weight"));
        if (static_cast<int>(w.weights.size()) != g.num_arrows()) throw InputError("haar: one weight per arrow expected");
        return w;
    }
    if (j->is_object() && j->contains("source")) {
        std::vector<double> c;
        for (const auto& x : j->at("source")) c.push_back(as_double(x, "weight"));
        if (static_cast<int>(c.size()) != g.num_objects()) throw InputError("haar: one weight per object expected");
        return source_haar(g, c);
    }
    throw InputError("haar must be \"counting\", {\"weights\": ...} or {\"source\": ...}");
}

json to_json(const HaarSystem& w) {
    json ws = json::array();
    for (double x : w.weights) ws.push_back(sig12(x));
    return {{"weights", ws}};
}

Representation rep_from_json(const Groupoid& g, const HaarSystem& w, const json& j) {
    if (!j.is_object()) throw InputError("representation must be an object");
    Representation r;
    if (j.contains("builtin")) {
        std::string b = j.at("builtin").get<std::string>();
        if (b == "trivial") r = trivial_rep(g);
        else if (b == "left_regular") r = left_regular(g, w);
        else if (b == "right_regular") r = right_regular(g, w);
        else if (b == "conjugation") r = conjugation_rep(g, w);
        else throw InputError("unknown builtin representation \"" + b + "\"");
        return r;
    }
    r.field.dims = int_list(need(j, "dims"), "dims");
    r.field.conjugate = j.value("conjugate", false);
    const json& mats = need(j, "matrices");
    if (!mats.is_array() || static_cast<int>(mats.size()) != g.num_arrows())
        throw InputError("representation needs one matrix per arrow");
    for (const auto& m : mats) r.mats.push_back(matrix_from_json(m));
    if (static_cast<int>(r.field.dims.size()) != g.num_objects())
        throw InputError("representation needs one dimension per object");
    try {
        check_shapes(g, r);
    } catch (const StructuralError& e) {
        throw InputError(std::string("representation: ") + e.what());
    }
    if (j.contains("unitary")) {
        r.unitary = j.at("unitary").get<bool>();
    } else {
        r.unitary = true;
        for (const auto& m : r.mats)
            if (m.size() && (m.rows() != m.cols() || unitarity_residual(m) > kRepTol)) r.unitary = false;
    }
    return r;
}

json to_json(const Representation& rho) {
    json mats = json::array();
    for (const auto& m : rho.mats) mats.push_back(to_json(m));
    json out = {{"dims", rho.field.dims}, {"matrices", mats}, {"unitary", rho.unitary}};
    if (rho.field.conjugate) out["conjugate"] = true;
    return out;
}

HilbertField field_from_json(const json& j) {
    HilbertField f;
    f.dims = int_list(j.is_array() ? j : need(j, "dims"), "dims");
    try {
        check_field(f);
    } catch (const StructuralError& e) {
        throw InputError(std::string("field: ") + e.what());
    }
    return f;
}

json to_json(const HilbertField& f) { return {{"dims", f.dims}}; }

Section section_from_json(const json& j) {
    Section s;
    const json& v = j.is_array() ? j : need(j, "vectors");
    for (const auto& x : v) s.vectors.push_back(vector_from_json(x));
    return s;
}

json to_json(const Section& s) {
    json v = json::array();
    for (const auto& x : s.vectors) v.push_back(to_json(x));
    return {{"vectors", v}};
}

json to_json(const FieldMorphism& phi) {
    json out = json::array();
    for (const auto& m : phi.mats) out.push_back(to_json(m));
    return out;
}

SampledSpace space_from_json(const json& j) {
    double eps = as_double(need(j, "resolution"), "resolution");
    SampledSpace s;
    if (j.contains("positions")) {
        std::vector<double> pos;
        for (const auto& x : j.at("positions")) pos.push_back(as_double(x, "position"));
        s = line_space(pos, eps);
    } else {
        const json& d = need(j, "dist");
        const int n = static_cast<int>(d.size());
        s.dist.resize(n, n);
        s.resolution = eps;
        for (int a = 0; a < n; ++a) {
            if (static_cast<int>(d[sz(a)].size()) != n) throw InputError("dist must be square");
            for (int b = 0; b < n; ++b) s.dist(a, b) = as_double(d[sz(a)][sz(b)], "distance");
        }
    }
    try {
        validate_space(s);
    } catch (const ValidationError& e) {
        throw InputError(std::string("space: ") + e.what());
    }
    return s;
}

Bibundle bibundle_from_json(const Groupoid& left, const Groupoid& right, const json& j) {
    const int size = as_int(need(j, "size"), "size");
    Bibundle b = Bibundle::blank(size, left.num_arrows(), right.num_arrows());
    b.left_anchor = int_list(need(j, "left_anchor"), "left_anchor");
    b.right_anchor = int_list(need(j, "right_anchor"), "right_anchor");
    auto l = int_table(need(j, "left"), "left");
    auto r = int_table(need(j, "right"), "right");
    if (static_cast<int>(l.size()) != left.num_arrows()) throw InputError("bibundle: one left row per arrow expected");
    if (static_cast<int>(r.size()) != size) throw InputError("bibundle: one right row per element expected");
    for (int g = 0; g < left.num_arrows(); ++g) {
        if (static_cast<int>(l[sz(g)].size()) != size) throw InputError("bibundle: left rows need one entry per element");
        for (int n = 0; n < size; ++n) b.left[sz(g) * sz(size) + sz(n)] = l[sz(g)][sz(n)];
    }
    for (int n = 0; n < size; ++n) {
        if (static_cast<int>(r[sz(n)].size()) != right.num_arrows())
            throw InputError("bibundle: right rows need one entry per arrow");
        for (int h = 0; h < right.num_arrows(); ++h) b.right[sz(n) * sz(right.num_arrows()) + sz(h)] = r[sz(n)][sz(h)];
    }
    try {
        check_bibundle_tables(left, right, b);
    } catch (const StructuralError& e) {
        throw InputError(std::string("bibundle: ") + e.what());
    }
    return b;
}

json to_json(const Bibundle& b) {
    json l = json::array(), r = json::array();
    for (int g = 0; g < b.left_arrows; ++g) {
        json row = json::array();
        for (int n = 0; n < b.size; ++n) row.push_back(b.act_left(g, n));
        l.push_back(std::move(row));
    }
    for (int n = 0; n < b.size; ++n) {
        json row = json::array();
        for (int h = 0; h < b.right_arrows; ++h) row.push_back(b.act_right(n, h));
        r.push_back(std::move(row));
    }
    return {{"size", b.size}, {"left_anchor", b.left_anchor}, {"right_anchor", b.right_anchor}, {"left", l}, {"right", r}};
}

ConvElement conv_from_json(const Groupoid& g, const json& j) {
    if (!j.is_array()) throw InputError("convolution element must be a list");
    ConvElement f = zero_element(g);
    for (const auto& e : j) {
        int a = as_int(need(e, "arrow"), "arrow");
        if (a < 0 || a >= g.num_arrows()) throw InputError("arrow id out of range");
        f.values[sz(a)] += cplx(e.contains("re") ? as_double(e.at("re"), "re") : 0.0,
                                e.contains("im") ? as_double(e.at("im"), "im") : 0.0);
    }
    return f;
}

json to_json(const ConvElement& f) {
    json out = json::array();
    for (size_t a = 0; a < f.values.size(); ++a)
        if (f.values[a] != 0.0)
            out.push_back({{"arrow", a}, {"re", sig12(f.values[a].real())}, {"im", sig12(f.values[a].imag())}});
    return out;
}

Bisection bisection_from_json(const json& j) { return {int_list(need(j, "sigma"), "sigma")}; }

json to_json(const Bisection& b) { return {{"sigma", b.sigma}}; }

json to_json(const Report& r) {
    json out = {{"ok", r.ok}, {"residual", sig12(r.residual)}};
    if (!r.ok) {
        out["what"] = r.what;
        out["witness"] = r.witness;
    }
    return out;
}

json to_json(const RelationFunction& f) {
    json out = json::array();
    for (size_t i = 0; i < f.pairs.size(); ++i) {
        json v = std::abs(f.values[i].imag()) > 0 ? to_json(f.values[i]) : json(sig12(f.values[i].real()));
        out.push_back({{"n", f.pairs[i].first}, {"m", f.pairs[i].second}, {"value", v}});
    }
    return out;
}

std::string to_text(const json& j) {
    std::ostringstream out;
    flatten(j, "", out);
    return out.str();
}

}  // namespace groupoidrep
