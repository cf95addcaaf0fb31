#include "groupoidrep/groupoid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>

namespace groupoidrep {

namespace {

size_t sz(int v) { return static_cast<size_t>(v); }

void check_range(const std::vector<int>& v, int bound, const char* what, bool allow_undefined = false) {
    for (size_t i = 0; i < v.size(); ++i) {
        if (allow_undefined && v[i] == kUndefined) continue;
        if (v[i] < 0 || v[i] >= bound)
            throw StructuralError(std::string(what) + " entry " + std::to_string(i) +
                                  " out of range: " + std::to_string(v[i]));
    }
}

}  // namespace

Groupoid::Groupoid(int objects, std::vector<int> src, std::vector<int> tgt, std::vector<int> comp,
                   std::vector<int> inv, std::vector<int> unit)
    : objects_(objects), src_(std::move(src)), tgt_(std::move(tgt)), comp_(std::move(comp)),
      inv_(std::move(inv)), unit_(std::move(unit)) {
    if (objects_ < 0) throw StructuralError("negative object count");
    const size_t arrows = src_.size();
    if (tgt_.size() != arrows || inv_.size() != arrows)
        throw StructuralError("src/tgt/inv tables differ in length");
    if (comp_.size() != arrows * arrows) throw StructuralError("composition table is not arrows x arrows");
    if (unit_.size() != sz(objects_)) throw StructuralError("unit table length differs from object count");
    const int na = static_cast<int>(arrows);
    check_range(src_, objects_, "src");
    check_range(tgt_, objects_, "tgt");
    check_range(inv_, na, "inv");
    check_range(unit_, na, "unit");
    check_range(comp_, na, "comp", true);

    t_fibers_.assign(sz(objects_), {});
    s_fibers_.assign(sz(objects_), {});
    homs_.assign(sz(objects_) * sz(objects_), {});
    t_index_.assign(arrows, 0);
    s_index_.assign(arrows, 0);
    hom_index_.assign(arrows, 0);
    for (int g = 0; g < na; ++g) {
        auto& tf = t_fibers_[sz(tgt_[sz(g)])];
        t_index_[sz(g)] = static_cast<int>(tf.size());
        tf.push_back(g);
        auto& sf = s_fibers_[sz(src_[sz(g)])];
        s_index_[sz(g)] = static_cast<int>(sf.size());
        sf.push_back(g);
        auto& hf = homs_[sz(tgt_[sz(g)]) * sz(objects_) + sz(src_[sz(g)])];
        hom_index_[sz(g)] = static_cast<int>(hf.size());
        hf.push_back(g);
    }
}

int Groupoid::compose(int g, int h) const {
    if (src(g) != tgt(h))
        throw PreconditionError("arrows " + std::to_string(g) + " and " + std::to_string(h) +
                                " are not composable");
    int gh = comp(g, h);
    if (gh == kUndefined)
        throw StructuralError("composition table missing entry for " + std::to_string(g) + "," +
                              std::to_string(h));
    return gh;
}

Report validate_groupoid(const Groupoid& G) {
    const int na = G.num_arrows();
    for (int m = 0; m < G.num_objects(); ++m) {
        int u = G.unit(m);
        if (G.src(u) != m || G.tgt(u) != m) return Report::fail("unit has wrong source/target", {m, u});
    }
    for (int g = 0; g < na; ++g)
        for (int h = 0; h < na; ++h) {
            bool composable = G.src(g) == G.tgt(h);
            int gh = G.comp(g, h);
            if (composable && gh == kUndefined)
                return Report::fail("composition undefined on a composable pair", {g, h});
            if (!composable && gh != kUndefined)
                return Report::fail("composition defined on a non-composable pair", {g, h});
            if (composable && (G.tgt(gh) != G.tgt(g) || G.src(gh) != G.src(h)))
                return Report::fail("composite has wrong source/target", {g, h, gh});
        }
    for (int g = 0; g < na; ++g) {
        if (G.comp(G.unit(G.tgt(g)), g) != g || G.comp(g, G.unit(G.src(g))) != g)
            return Report::fail("unit is not a two-sided identity", {g});
        int gi = G.inv(g);
        if (G.src(gi) != G.tgt(g) || G.tgt(gi) != G.src(g))
            return Report::fail("inverse has wrong source/target", {g, gi});
        if (G.comp(g, gi) != G.unit(G.tgt(g)) || G.comp(gi, g) != G.unit(G.src(g)))
            return Report::fail("inverse is not two-sided", {g, gi});
    }
    // associativity: for g,h composable and k with tgt(k) = src(h)
    for (int g = 0; g < na; ++g)
        for (int h : G.t_fiber(G.src(g))) {
            int gh = G.comp(g, h);
            for (int k : G.t_fiber(G.src(h))) {
                if (G.comp(gh, k) != G.comp(g, G.comp(h, k)))
                    return Report::fail("composition is not associative", {g, h, k});
            }
        }
    return Report::pass();
}

Groupoid make_pair(int n) {
    if (n < 1) throw StructuralError("pair groupoid needs a nonempty base");
    // arrow (a,b): target a, source b, id a*n+b
    const int na = n * n;
    std::vector<int> src(sz(na)), tgt(sz(na)), inv(sz(na)), unit(sz(n));
    std::vector<int> comp(sz(na) * sz(na), kUndefined);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int id = a * n + b;
            tgt[sz(id)] = a;
            src[sz(id)] = b;
            inv[sz(id)] = b * n + a;
            for (int c = 0; c < n; ++c) comp[sz(id) * sz(na) + sz(b * n + c)] = a * n + c;
        }
    for (int a = 0; a < n; ++a) unit[sz(a)] = a * n + a;
    return Groupoid(n, std::move(src), std::move(tgt), std::move(comp), std::move(inv), std::move(unit));
}

Groupoid make_action(const FiniteGroup& H, int points, const std::vector<std::vector<int>>& act) {
    if (points < 1) throw StructuralError("action groupoid needs a nonempty set");
    if (static_cast<int>(act.size()) != H.order) throw StructuralError("action table needs one row per group element");
    for (const auto& row : act) {
        if (static_cast<int>(row.size()) != points) throw StructuralError("action row has wrong length");
        for (int y : row)
            if (y < 0 || y >= points) throw StructuralError("action value out of range");
    }
    auto a = [&](int h, int x) { return act[sz(h)][sz(x)]; };
    for (int x = 0; x < points; ++x)
        if (a(H.identity, x) != x)
            throw ValidationError("identity does not fix point " + std::to_string(x));
    for (int h1 = 0; h1 < H.order; ++h1)
        for (int h2 = 0; h2 < H.order; ++h2)
            for (int x = 0; x < points; ++x)
                if (a(H(h1, h2), x) != a(h1, a(h2, x)))
                    throw ValidationError("not an action: (h1 h2).x != h1.(h2.x) for h1=" + std::to_string(h1) +
                                          " h2=" + std::to_string(h2) + " x=" + std::to_string(x));

    const int na = H.order * points;
    std::vector<int> src(sz(na)), tgt(sz(na)), inv(sz(na)), unit(sz(points));
    std::vector<int> comp(sz(na) * sz(na), kUndefined);
    for (int h = 0; h < H.order; ++h)
        for (int x = 0; x < points; ++x) {
            int id = h * points + x;
            src[sz(id)] = x;
            tgt[sz(id)] = a(h, x);
            inv[sz(id)] = H.inv[sz(h)] * points + a(h, x);
        }
    // (h', h.x)(h, x) = (h'h, x)
    for (int h = 0; h < H.order; ++h)
        for (int x = 0; x < points; ++x)
            for (int h2 = 0; h2 < H.order; ++h2) {
                int first = h * points + x;
                int second = h2 * points + a(h, x);
                comp[sz(second) * sz(na) + sz(first)] = H(h2, h) * points + x;
            }
    for (int x = 0; x < points; ++x) unit[sz(x)] = H.identity * points + x;
    return Groupoid(points, std::move(src), std::move(tgt), std::move(comp), std::move(inv), std::move(unit));
}

Groupoid group_as_groupoid(const FiniteGroup& H) {
    std::vector<std::vector<int>> act(sz(H.order), std::vector<int>{0});
    return make_action(H, 1, act);
}

std::vector<std::vector<int>> trivial_bundle_action(int base_points, const FiniteGroup& H) {
    const int n = base_points * H.order;
    std::vector<std::vector<int>> act(sz(n), std::vector<int>(sz(H.order)));
    for (int m = 0; m < base_points; ++m)
        for (int h = 0; h < H.order; ++h)
            for (int k = 0; k < H.order; ++k) act[sz(m * H.order + h)][sz(k)] = m * H.order + H(h, k);
    return act;
}

Groupoid make_gauge(int points, const FiniteGroup& H, const std::vector<std::vector<int>>& act) {
    if (points < 1) throw StructuralError("gauge groupoid needs a nonempty total space");
    if (static_cast<int>(act.size()) != points) throw StructuralError("action table needs one row per point");
    for (const auto& row : act) {
        if (static_cast<int>(row.size()) != H.order) throw StructuralError("action row has wrong length");
        for (int y : row)
            if (y < 0 || y >= points) throw StructuralError("action value out of range");
    }
    auto a = [&](int p, int h) { return act[sz(p)][sz(h)]; };
    for (int p = 0; p < points; ++p) {
        if (a(p, H.identity) != p) throw ValidationError("identity moves point " + std::to_string(p));
        for (int h1 = 0; h1 < H.order; ++h1)
            for (int h2 = 0; h2 < H.order; ++h2)
                if (a(p, H(h1, h2)) != a(a(p, h1), h2))
                    throw ValidationError("not a right action at point " + std::to_string(p));
        for (int h = 0; h < H.order; ++h)
            if (h != H.identity && a(p, h) == p)
                throw ValidationError("action is not free: element " + std::to_string(h) + " fixes point " +
                                      std::to_string(p));
    }
    // orbits of P ordered by minimal element
    std::vector<int> orbit_of(sz(points), -1), orbit_min;
    for (int p = 0; p < points; ++p) {
        if (orbit_of[sz(p)] >= 0) continue;
        int o = static_cast<int>(orbit_min.size());
        orbit_min.push_back(p);
        for (int h = 0; h < H.order; ++h) orbit_of[sz(a(p, h))] = o;
    }
    const int M = static_cast<int>(orbit_min.size());
    // element h with q_min . h = q
    auto shift = [&](int q) {
        int base = orbit_min[sz(orbit_of[sz(q)])];
        for (int h = 0; h < H.order; ++h)
            if (a(base, h) == q) return h;
        throw ValidationError("orbit bookkeeping failed");
    };
    // canonical id of [p, q]: [p h^{-1}, q_min] where q = q_min h
    auto canon = [&](int p, int q) {
        int h = shift(q);
        return a(p, H.inv[sz(h)]) * M + orbit_of[sz(q)];
    };
    const int na = points * M;
    std::vector<int> src(sz(na)), tgt(sz(na)), inv(sz(na)), unit(sz(M));
    std::vector<int> comp(sz(na) * sz(na), kUndefined);
    for (int p = 0; p < points; ++p)
        for (int o = 0; o < M; ++o) {
            int id = p * M + o;
            src[sz(id)] = o;
            tgt[sz(id)] = orbit_of[sz(p)];
            inv[sz(id)] = canon(orbit_min[sz(o)], p);
        }
    // [p, q][q', r] with q' = q h: [q', r] = [q, r h^{-1}], product [p, r h^{-1}]
    for (int g = 0; g < na; ++g)
        for (int k = 0; k < na; ++k) {
            if (src[sz(g)] != tgt[sz(k)]) continue;
            int p = g / M, q = orbit_min[sz(g % M)];
            int q2 = k / M, r = orbit_min[sz(k % M)];
            int h = -1;
            for (int x = 0; x < H.order; ++x)
                if (a(q, x) == q2) h = x;
            comp[sz(g) * sz(na) + sz(k)] = canon(p, a(r, H.inv[sz(h)]));
        }
    for (int o = 0; o < M; ++o) unit[sz(o)] = orbit_min[sz(o)] * M + o;
    return Groupoid(M, std::move(src), std::move(tgt), std::move(comp), std::move(inv), std::move(unit));
}

Groupoid make_bundle_of_groups(const std::vector<FiniteGroup>& fibers) {
    if (fibers.empty()) throw StructuralError("bundle of groups needs a nonempty base");
    std::vector<int> offset;
    int na = 0;
    for (const auto& f : fibers) {
        offset.push_back(na);
        na += f.order;
    }
    const int M = static_cast<int>(fibers.size());
    std::vector<int> src(sz(na)), tgt(sz(na)), inv(sz(na)), unit(sz(M));
    std::vector<int> comp(sz(na) * sz(na), kUndefined);
    for (int m = 0; m < M; ++m) {
        const auto& H = fibers[sz(m)];
        const int o = offset[sz(m)];
        for (int x = 0; x < H.order; ++x) {
            src[sz(o + x)] = m;
            tgt[sz(o + x)] = m;
            inv[sz(o + x)] = o + H.inv[sz(x)];
            for (int y = 0; y < H.order; ++y) comp[sz(o + x) * sz(na) + sz(o + y)] = o + H(x, y);
        }
        unit[sz(m)] = o + H.identity;
    }
    return Groupoid(M, std::move(src), std::move(tgt), std::move(comp), std::move(inv), std::move(unit));
}

namespace {

/// Full subgroupoid on the given arrows (closed under the structure maps).
Subgroupoid sub_on(const Groupoid& G, std::vector<int> arrows, std::vector<int> objects) {
    std::vector<int> local_obj(sz(G.num_objects()), -1), local_arr(sz(G.num_arrows()), -1);
    for (size_t i = 0; i < objects.size(); ++i) local_obj[sz(objects[i])] = static_cast<int>(i);
    for (size_t i = 0; i < arrows.size(); ++i) local_arr[sz(arrows[i])] = static_cast<int>(i);
    const size_t na = arrows.size();
    std::vector<int> src(na), tgt(na), inv(na), unit(objects.size());
    std::vector<int> comp(na * na, kUndefined);
    for (size_t i = 0; i < na; ++i) {
        int g = arrows[i];
        src[i] = local_obj[sz(G.src(g))];
        tgt[i] = local_obj[sz(G.tgt(g))];
        inv[i] = local_arr[sz(G.inv(g))];
        for (size_t j = 0; j < na; ++j) {
            int gh = G.comp(g, arrows[j]);
            if (gh != kUndefined) comp[i * na + j] = local_arr[sz(gh)];
        }
    }
    for (size_t i = 0; i < objects.size(); ++i) unit[i] = local_arr[sz(G.unit(objects[i]))];
    Groupoid local(static_cast<int>(objects.size()), std::move(src), std::move(tgt), std::move(comp),
                   std::move(inv), std::move(unit));
    return Subgroupoid{std::move(local), std::move(arrows), std::move(objects)};
}

}  // namespace

Subgroupoid isotropy(const Groupoid& G) {
    std::vector<int> arrows, objects(sz(G.num_objects()));
    std::iota(objects.begin(), objects.end(), 0);
    for (int g = 0; g < G.num_arrows(); ++g)
        if (G.src(g) == G.tgt(g)) arrows.push_back(g);
    return sub_on(G, std::move(arrows), std::move(objects));
}

Subgroupoid isotropy_group(const Groupoid& G, int m) {
    if (m < 0 || m >= G.num_objects()) throw StructuralError("object out of range");
    return sub_on(G, G.hom(m, m), {m});
}

FiniteGroup isotropy_as_group(const Groupoid& G, int m) {
    const auto& arrows = G.hom(m, m);
    std::vector<std::vector<int>> table(arrows.size(), std::vector<int>(arrows.size()));
    for (size_t i = 0; i < arrows.size(); ++i)
        for (size_t j = 0; j < arrows.size(); ++j)
            table[i][j] = G.hom_index(G.comp(arrows[i], arrows[j]));
    return FiniteGroup::from_table(std::move(table), "G_" + std::to_string(m));
}

Groupoid orbit_relation(const Groupoid& G) {
    std::set<std::pair<int, int>> pairs;
    for (int g = 0; g < G.num_arrows(); ++g) pairs.emplace(G.tgt(g), G.src(g));
    std::vector<std::pair<int, int>> list(pairs.begin(), pairs.end());
    std::map<std::pair<int, int>, int> id;
    for (size_t i = 0; i < list.size(); ++i) id[list[i]] = static_cast<int>(i);
    const size_t na = list.size();
    std::vector<int> src(na), tgt(na), inv(na), unit(sz(G.num_objects()));
    std::vector<int> comp(na * na, kUndefined);
    for (size_t i = 0; i < na; ++i) {
        auto [n, m] = list[i];
        tgt[i] = n;
        src[i] = m;
        inv[i] = id.at({m, n});
        for (size_t j = 0; j < na; ++j)
            if (list[j].first == m) comp[i * na + j] = id.at({n, list[j].second});
    }
    for (int m = 0; m < G.num_objects(); ++m) unit[sz(m)] = id.at({m, m});
    return Groupoid(G.num_objects(), std::move(src), std::move(tgt), std::move(comp), std::move(inv),
                    std::move(unit));
}

int relation_arrow(const Groupoid& R, int n, int m) {
    const auto& h = R.hom(n, m);
    return h.empty() ? kUndefined : h.front();
}

std::vector<std::vector<int>> orbits(const Groupoid& G) {
    std::vector<int> parent(sz(G.num_objects()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[sz(x)] != x) x = parent[sz(x)] = parent[sz(parent[sz(x)])];
        return x;
    };
    for (int g = 0; g < G.num_arrows(); ++g) {
        int a = find(G.src(g)), b = find(G.tgt(g));
        if (a != b) parent[sz(std::max(a, b))] = std::min(a, b);
    }
    std::map<int, std::vector<int>> classes;
    for (int m = 0; m < G.num_objects(); ++m) classes[find(m)].push_back(m);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : classes) out.push_back(std::move(members));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> orbit_index(const Groupoid& G) {
    std::vector<int> idx(sz(G.num_objects()), -1);
    auto cls = orbits(G);
    for (size_t i = 0; i < cls.size(); ++i)
        for (int m : cls[i]) idx[sz(m)] = static_cast<int>(i);
    return idx;
}

Subgroupoid restrict_to_objects(const Groupoid& G, const std::vector<int>& objects) {
    std::vector<bool> in(sz(G.num_objects()), false);
    for (int m : objects) in[sz(m)] = true;
    std::vector<int> arrows;
    for (int g = 0; g < G.num_arrows(); ++g)
        if (in[sz(G.src(g))] && in[sz(G.tgt(g))]) arrows.push_back(g);
    std::vector<int> objs = objects;
    std::sort(objs.begin(), objs.end());
    return sub_on(G, std::move(arrows), std::move(objs));
}

std::vector<int> generating_arrows(const Groupoid& G) {
    std::vector<int> gens;
    for (const auto& orbit : orbits(G)) {
        const int base = orbit.front();
        for (int x : orbit)
            if (x != base) gens.push_back(G.hom(x, base).front());
        const auto& iso = G.hom(base, base);
        FiniteGroup K = isotropy_as_group(G, base);
        std::vector<int> kgens;
        auto span = generated_subgroup(K, kgens);
        for (int k = 0; k < K.order && static_cast<int>(span.size()) < K.order; ++k)
            if (!std::binary_search(span.begin(), span.end(), k)) {
                kgens.push_back(k);
                span = generated_subgroup(K, kgens);
            }
        for (int k : kgens) gens.push_back(iso[sz(k)]);
    }
    std::sort(gens.begin(), gens.end());
    return gens;
}

HaarSystem counting_haar(const Groupoid& G) {
    return HaarSystem{std::vector<double>(sz(G.num_arrows()), 1.0)};
}

HaarSystem source_haar(const Groupoid& G, const std::vector<double>& per_object) {
    if (static_cast<int>(per_object.size()) != G.num_objects())
        throw StructuralError("need one weight per object");
    HaarSystem w;
    for (int g = 0; g < G.num_arrows(); ++g) w.weights.push_back(per_object[sz(G.src(g))]);
    return w;
}

Report validate_haar(const Groupoid& G, const HaarSystem& w, double tol) {
    if (static_cast<int>(w.weights.size()) != G.num_arrows())
        throw StructuralError("Haar system needs one weight per arrow");
    for (int g = 0; g < G.num_arrows(); ++g)
        if (!(w.weights[sz(g)] > 0.0))
            throw ValidationError("Haar weight of arrow " + std::to_string(g) + " is not positive");
    // For g' in G_m^n and f = δ_x with t(x) = n:
    //   LHS = sum_{g in t^{-1}(m)} δ_x(g' g) w(g), RHS = w(x).
    double worst = 0.0;
    for (int gp = 0; gp < G.num_arrows(); ++gp) {
        const int m = G.src(gp), n = G.tgt(gp);
        for (int x : G.t_fiber(n)) {
            double lhs = 0.0;
            for (int g : G.t_fiber(m))
                if (G.comp(gp, g) == x) lhs += w.weights[sz(g)];
            double rhs = w.weights[sz(x)];
            double err = std::abs(lhs - rhs);
            worst = std::max(worst, err);
            if (err > tol * std::max(1.0, std::abs(rhs)))
                return Report::fail("left invariance fails", {gp, x}, err);
        }
    }
    return Report::pass(worst);
}

bool is_orbit_constant(const Groupoid& G, const HaarSystem& w, double tol) {
    auto idx = orbit_index(G);
    std::vector<double> first(orbits(G).size(), -1.0);
    for (int g = 0; g < G.num_arrows(); ++g) {
        double& f = first[sz(idx[sz(G.src(g))])];
        if (f < 0) f = w.weights[sz(g)];
        else if (std::abs(f - w.weights[sz(g)]) > tol * std::max(1.0, f)) return false;
    }
    return true;
}

}  // namespace groupoidrep
