#include "groupoidrep/morita.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>

namespace groupoidrep {

namespace {

size_t sz(int v) { return static_cast<size_t>(v); }

/// Orbits of N under an action given as a list of "neighbor" functions;
/// orbit ids ordered by least element.
std::vector<int> orbit_ids(int size, const std::function<void(int, std::vector<int>&)>& moves) {
    std::vector<int> id(sz(size), -1);
    int next = 0;
    for (int n = 0; n < size; ++n) {
        if (id[sz(n)] >= 0) continue;
        std::vector<int> stack{n}, nb;
        id[sz(n)] = next;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            nb.clear();
            moves(x, nb);
            for (int y : nb)
                if (id[sz(y)] < 0) {
                    id[sz(y)] = next;
                    stack.push_back(y);
                }
        }
        ++next;
    }
    return id;
}

}  // namespace

Bibundle Bibundle::blank(int size, int left_arrows, int right_arrows) {
    Bibundle b;
    b.size = size;
    b.left_arrows = left_arrows;
    b.right_arrows = right_arrows;
    b.left_anchor.assign(sz(size), 0);
    b.right_anchor.assign(sz(size), 0);
    b.left.assign(sz(left_arrows) * sz(size), kUndefined);
    b.right.assign(sz(size) * sz(right_arrows), kUndefined);
    return b;
}

void check_bibundle_tables(const Groupoid& G, const Groupoid& H, const Bibundle& b) {
    if (b.size < 0) throw StructuralError("negative bibundle size");
    if (b.left_arrows != G.num_arrows() || b.right_arrows != H.num_arrows())
        throw StructuralError("bibundle action tables sized for other groupoids");
    if (b.left_anchor.size() != sz(b.size) || b.right_anchor.size() != sz(b.size))
        throw StructuralError("anchor tables have wrong length");
    if (b.left.size() != sz(b.left_arrows) * sz(b.size) || b.right.size() != sz(b.size) * sz(b.right_arrows))
        throw StructuralError("action tables have wrong size");
    for (int n = 0; n < b.size; ++n) {
        if (b.left_anchor[sz(n)] < 0 || b.left_anchor[sz(n)] >= G.num_objects() || b.right_anchor[sz(n)] < 0 ||
            b.right_anchor[sz(n)] >= H.num_objects())
            throw StructuralError("anchor of element " + std::to_string(n) + " out of range");
    }
    for (int v : b.left)
        if (v != kUndefined && (v < 0 || v >= b.size)) throw StructuralError("left action value out of range");
    for (int v : b.right)
        if (v != kUndefined && (v < 0 || v >= b.size)) throw StructuralError("right action value out of range");
}

BibundleReport validate_bibundle(const Groupoid& G, const Groupoid& H, const Bibundle& b) {
    check_bibundle_tables(G, H, b);
    BibundleReport r;
    auto fail = [&](std::string what, std::vector<int> witness) {
        r.ok = false;
        r.what = std::move(what);
        r.witness = std::move(witness);
        r.classification = "not a bibundle";
        return r;
    };
    const auto& JG = b.left_anchor;
    const auto& JH = b.right_anchor;
    for (int n = 0; n < b.size; ++n) {
        for (int g = 0; g < G.num_arrows(); ++g) {
            int gn = b.act_left(g, n);
            bool dom = G.src(g) == JG[sz(n)];
            if (dom != (gn != kUndefined)) return fail("left action domain is not s(g) = J_G(n)", {g, n});
            if (!dom) continue;
            if (JG[sz(gn)] != G.tgt(g)) return fail("J_G(g.n) != t(g)", {g, n});
            if (JH[sz(gn)] != JH[sz(n)]) return fail("J_H(g.n) != J_H(n)", {g, n});
        }
        if (b.act_left(G.unit(JG[sz(n)]), n) != n) return fail("unit does not act trivially on the left", {n});
        for (int h = 0; h < H.num_arrows(); ++h) {
            int nh = b.act_right(n, h);
            bool dom = H.tgt(h) == JH[sz(n)];
            if (dom != (nh != kUndefined)) return fail("right action domain is not t(h) = J_H(n)", {n, h});
            if (!dom) continue;
            if (JH[sz(nh)] != H.src(h)) return fail("J_H(n.h) != s(h)", {n, h});
            if (JG[sz(nh)] != JG[sz(n)]) return fail("J_G(n.h) != J_G(n)", {n, h});
        }
        if (b.act_right(n, H.unit(JH[sz(n)])) != n) return fail("unit does not act trivially on the right", {n});
    }
    for (int n = 0; n < b.size; ++n) {
        for (int g = 0; g < G.num_arrows(); ++g) {
            int gn = b.act_left(g, n);
            if (gn == kUndefined) continue;
            for (int g2 : G.s_fiber(G.tgt(g)))
                if (b.act_left(G.comp(g2, g), n) != b.act_left(g2, gn))
                    return fail("left action is not associative", {g2, g, n});
            for (int h : H.t_fiber(JH[sz(n)]))
                if (b.act_right(gn, h) != b.act_left(g, b.act_right(n, h)))
                    return fail("actions do not commute", {g, n, h});
        }
        for (int h = 0; h < H.num_arrows(); ++h) {
            int nh = b.act_right(n, h);
            if (nh == kUndefined) continue;
            for (int h2 : H.t_fiber(H.src(h)))
                if (b.act_right(n, H.comp(h, h2)) != b.act_right(nh, h2))
                    return fail("right action is not associative", {n, h, h2});
        }
    }

    // freeness
    r.left_free = true;
    for (int n = 0; n < b.size && r.left_free; ++n)
        for (int g : G.s_fiber(JG[sz(n)]))
            if (g != G.unit(JG[sz(n)]) && b.act_left(g, n) == n) {
                r.left_free = false;
                r.witness = {g, n};
            }
    r.right_free = true;
    for (int n = 0; n < b.size && r.right_free; ++n)
        for (int h : H.t_fiber(JH[sz(n)]))
            if (h != H.unit(JH[sz(n)]) && b.act_right(n, h) == n) {
                r.right_free = false;
                if (r.witness.empty()) r.witness = {n, h};
            }

    // G\N -> H_0 and N/H -> G_0
    auto left_orbits = orbit_ids(b.size, [&](int x, std::vector<int>& out) {
        for (int g : G.s_fiber(JG[sz(x)])) out.push_back(b.act_left(g, x));
    });
    auto right_orbits = orbit_ids(b.size, [&](int x, std::vector<int>& out) {
        for (int h : H.t_fiber(JH[sz(x)])) out.push_back(b.act_right(x, h));
    });
    auto quotient = [&](const std::vector<int>& orbit, const std::vector<int>& anchor, int objects,
                        std::vector<int>& cert) {
        int count = orbit.empty() ? 0 : *std::max_element(orbit.begin(), orbit.end()) + 1;
        cert.assign(sz(count), -1);
        std::vector<int> hits(sz(objects), 0);
        for (int n = 0; n < b.size; ++n) {
            int& c = cert[sz(orbit[sz(n)])];
            if (c < 0) {
                c = anchor[sz(n)];
                ++hits[sz(c)];
            }
        }
        bool injective = std::all_of(hits.begin(), hits.end(), [](int x) { return x <= 1; });
        bool onto = std::all_of(hits.begin(), hits.end(), [](int x) { return x >= 1; });
        return std::make_pair(injective, onto);
    };
    auto [l_inj, l_onto] = quotient(left_orbits, JH, H.num_objects(), r.left_quotient);
    auto [r_inj, r_onto] = quotient(right_orbits, JG, G.num_objects(), r.right_quotient);
    r.left_principal = r.left_free && l_inj && l_onto;
    r.right_principal = r.right_free && r_inj && r_onto;
    r.morita = r.left_principal && r.right_principal;
    if (r.morita) r.classification = "Morita equivalence";
    else if (r.right_principal) r.classification = "generalized morphism (right principal)";
    else if (r.left_principal) r.classification = "left principal";
    else {
        r.classification = "bibundle (not principal)";
        if (!r.left_free) r.what = "left action is not free";
        else if (!r.right_free) r.what = "right action is not free";
        else r.what = "anchor quotients are not bijective";
    }
    return r;
}

Bibundle unit_bibundle(const Groupoid& G) {
    const int n = G.num_arrows();
    Bibundle b = Bibundle::blank(n, n, n);
    for (int x = 0; x < n; ++x) {
        b.left_anchor[sz(x)] = G.tgt(x);
        b.right_anchor[sz(x)] = G.src(x);
    }
    for (int g = 0; g < n; ++g)
        for (int x = 0; x < n; ++x) {
            int gx = G.comp(g, x);
            if (gx != kUndefined) b.left[sz(g) * sz(n) + sz(x)] = gx;
            int xg = G.comp(x, g);
            if (xg != kUndefined) b.right[sz(x) * sz(n) + sz(g)] = xg;
        }
    return b;
}

Bibundle invert_bibundle(const Groupoid& G, const Groupoid& H, const Bibundle& b) {
    check_bibundle_tables(G, H, b);
    Bibundle r = Bibundle::blank(b.size, H.num_arrows(), G.num_arrows());
    r.left_anchor = b.right_anchor;
    r.right_anchor = b.left_anchor;
    for (int n = 0; n < b.size; ++n) {
        for (int h = 0; h < H.num_arrows(); ++h) {
            int v = b.act_right(n, H.inv(h));
            if (v != kUndefined) r.left[sz(h) * sz(b.size) + sz(n)] = v;
        }
        for (int g = 0; g < G.num_arrows(); ++g) {
            int v = b.act_left(G.inv(g), n);
            if (v != kUndefined) r.right[sz(n) * sz(G.num_arrows()) + sz(g)] = v;
        }
    }
    return r;
}

Bibundle compose_bibundles(const Groupoid& G, const Groupoid& H, const Groupoid& K, const Bibundle& first,
                           const Bibundle& second) {
    check_bibundle_tables(G, H, first);
    check_bibundle_tables(H, K, second);
    std::vector<std::pair<int, int>> pairs;
    std::map<std::pair<int, int>, int> pair_id;
    for (int a = 0; a < first.size; ++a)
        for (int c = 0; c < second.size; ++c)
            if (first.right_anchor[sz(a)] == second.left_anchor[sz(c)]) {
                pair_id[{a, c}] = static_cast<int>(pairs.size());
                pairs.emplace_back(a, c);
            }
    // quotient by the diagonal H-action
    auto cls = orbit_ids(static_cast<int>(pairs.size()), [&](int p, std::vector<int>& out) {
        auto [a, c] = pairs[sz(p)];
        for (int h : H.t_fiber(first.right_anchor[sz(a)]))
            out.push_back(pair_id.at({first.act_right(a, h), second.act_left(H.inv(h), c)}));
    });
    const int classes = cls.empty() ? 0 : *std::max_element(cls.begin(), cls.end()) + 1;
    std::vector<int> rep(sz(classes), -1);
    for (int p = 0; p < static_cast<int>(pairs.size()); ++p)
        if (rep[sz(cls[sz(p)])] < 0) rep[sz(cls[sz(p)])] = p;

    Bibundle r = Bibundle::blank(classes, G.num_arrows(), K.num_arrows());
    for (int c = 0; c < classes; ++c) {
        auto [a, x] = pairs[sz(rep[sz(c)])];
        r.left_anchor[sz(c)] = first.left_anchor[sz(a)];
        r.right_anchor[sz(c)] = second.right_anchor[sz(x)];
        for (int g = 0; g < G.num_arrows(); ++g) {
            int ga = first.act_left(g, a);
            if (ga != kUndefined) r.left[sz(g) * sz(classes) + sz(c)] = cls[sz(pair_id.at({ga, x}))];
        }
        for (int k = 0; k < K.num_arrows(); ++k) {
            int xk = second.act_right(x, k);
            if (xk != kUndefined) r.right[sz(c) * sz(K.num_arrows()) + sz(k)] = cls[sz(pair_id.at({a, xk}))];
        }
    }
    return r;
}

std::optional<std::vector<int>> find_bibundle_isomorphism(const Groupoid& G, const Groupoid& H,
                                                          const Bibundle& a, const Bibundle& b) {
    check_bibundle_tables(G, H, a);
    check_bibundle_tables(G, H, b);
    if (a.size != b.size) return std::nullopt;
    const int n = a.size;
    std::vector<int> phi(sz(n), -1), used(sz(n), 0);

    // assign x -> y and propagate along both actions; returns false on conflict
    std::function<bool(int, int, std::vector<int>&)> assign = [&](int x, int y, std::vector<int>& trail) {
        std::vector<std::pair<int, int>> todo{{x, y}};
        while (!todo.empty()) {
            auto [u, v] = todo.back();
            todo.pop_back();
            if (phi[sz(u)] >= 0) {
                if (phi[sz(u)] != v) return false;
                continue;
            }
            if (used[sz(v)] || a.left_anchor[sz(u)] != b.left_anchor[sz(v)] ||
                a.right_anchor[sz(u)] != b.right_anchor[sz(v)])
                return false;
            phi[sz(u)] = v;
            used[sz(v)] = 1;
            trail.push_back(u);
            for (int g : G.s_fiber(a.left_anchor[sz(u)])) todo.emplace_back(a.act_left(g, u), b.act_left(g, v));
            for (int h : H.t_fiber(a.right_anchor[sz(u)])) todo.emplace_back(a.act_right(u, h), b.act_right(v, h));
        }
        return true;
    };
    std::function<bool()> search = [&]() {
        int x = -1;
        for (int i = 0; i < n; ++i)
            if (phi[sz(i)] < 0) {
                x = i;
                break;
            }
        if (x < 0) return true;
        for (int y = 0; y < n; ++y) {
            if (used[sz(y)]) continue;
            std::vector<int> trail;
            if (assign(x, y, trail) && search()) return true;
            for (int u : trail) {
                used[sz(phi[sz(u)])] = 0;
                phi[sz(u)] = -1;
            }
        }
        return false;
    };
    if (search()) return phi;
    return std::nullopt;
}

PrincipalBundle principal_bundle(int points, const FiniteGroup& h, const std::vector<std::vector<int>>& act) {
    PrincipalBundle out{make_gauge(points, h, act), group_as_groupoid(h), {}};
    std::vector<int> orbit_of(sz(points), -1), orbit_min;
    for (int p = 0; p < points; ++p) {
        if (orbit_of[sz(p)] >= 0) continue;
        int o = static_cast<int>(orbit_min.size());
        orbit_min.push_back(p);
        for (int k = 0; k < h.order; ++k) orbit_of[sz(act[sz(p)][sz(k)])] = o;
    }
    const int M = static_cast<int>(orbit_min.size());
    const Groupoid& G = out.gauge;
    Bibundle b = Bibundle::blank(points, G.num_arrows(), h.order);
    for (int r = 0; r < points; ++r) {
        b.left_anchor[sz(r)] = orbit_of[sz(r)];
        b.right_anchor[sz(r)] = 0;
        for (int k = 0; k < h.order; ++k) b.right[sz(r) * sz(h.order) + sz(k)] = act[sz(r)][sz(k)];
    }
    // [p, q_min] . r with r = q_min . k gives p . k
    for (int g = 0; g < G.num_arrows(); ++g) {
        int p = g / M, o = g % M;
        for (int k = 0; k < h.order; ++k) {
            int r = act[sz(orbit_min[sz(o)])][sz(k)];
            b.left[sz(g) * sz(points) + sz(r)] = act[sz(p)][sz(k)];
        }
    }
    out.bibundle = std::move(b);
    return out;
}

Representation induce_rep(const Groupoid& G, const Groupoid& H, const Bibundle& b, const Representation& rho) {
    check_bibundle_tables(G, H, b);
    check_shapes(G, rho);
    const auto& JG = b.left_anchor;
    const auto& JH = b.right_anchor;
    // representative of each J_H fiber and the transport arrow tau(n) with tau(n).rep = n
    std::vector<int> rep_of(sz(H.num_objects()), -1);
    for (int n = 0; n < b.size; ++n)
        if (rep_of[sz(JH[sz(n)])] < 0) rep_of[sz(JH[sz(n)])] = n;
    std::vector<int> tau(sz(b.size), -1);
    for (int y = 0; y < H.num_objects(); ++y) {
        int r = rep_of[sz(y)];
        if (r < 0) continue;
        for (int g : G.s_fiber(JG[sz(r)])) {
            int x = b.act_left(g, r);
            if (tau[sz(x)] >= 0)
                throw PreconditionError("left action is not free at element " + std::to_string(r));
            tau[sz(x)] = g;
        }
    }
    for (int n = 0; n < b.size; ++n)
        if (tau[sz(n)] < 0)
            throw PreconditionError("J_H fiber of element " + std::to_string(n) + " is not a single G-orbit");

    Representation out;
    out.field.conjugate = rho.field.conjugate;
    for (int y = 0; y < H.num_objects(); ++y)
        out.field.dims.push_back(rep_of[sz(y)] < 0 ? 0 : rho.dim(JG[sz(rep_of[sz(y)])]));
    for (int k = 0; k < H.num_arrows(); ++k) {
        int from = rep_of[sz(H.src(k))];
        if (from < 0) {
            out.mats.push_back(Matrix(out.field.dim(H.tgt(k)), 0));
            continue;
        }
        int moved = b.act_right(from, H.inv(k));
        // moved = gamma . n_{t(k)}, pi'(k) = pi(gamma^{-1})
        out.mats.push_back(rho(G.inv(tau[sz(moved)])));
    }
    out.unitary = rho.unitary;
    return out;
}

EquivalenceReport equivalence_check(const Groupoid& G, const Groupoid& H, const Bibundle& b,
                                    const std::vector<Representation>& samples, std::uint64_t seed) {
    auto v = validate_bibundle(G, H, b);
    if (!v.morita) throw PreconditionError("bibundle is not a Morita equivalence: " + v.classification);
    Bibundle back = invert_bibundle(G, H, b);
    EquivalenceReport r;
    std::vector<Representation> images;
    for (size_t i = 0; i < samples.size(); ++i) {
        Representation theta = induce_rep(G, H, b, samples[i]);
        Representation again = induce_rep(H, G, back, theta);
        bool iso = is_isomorphic(G, again, samples[i], Prng::derive(seed, i)).isomorphic;
        r.round_trip.push_back(iso);
        if (!iso) {
            r.ok = false;
            if (r.what.empty()) r.what = "round trip of sample " + std::to_string(i) + " is not isomorphic";
        }
        bool kept = !is_M_irreducible(G, samples[i]) || is_M_irreducible(H, theta);
        r.irreducible_kept.push_back(kept);
        if (!kept) {
            r.ok = false;
            if (r.what.empty()) r.what = "sample " + std::to_string(i) + " loses M-irreducibility";
        }
        images.push_back(std::move(theta));
    }
    const size_t n = samples.size();
    r.hom_g.assign(n, std::vector<int>(n, 0));
    r.hom_h.assign(n, std::vector<int>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            r.hom_g[i][j] = static_cast<int>(intertwiner_basis(G, samples[i], samples[j]).size());
            r.hom_h[i][j] = static_cast<int>(intertwiner_basis(H, images[i], images[j]).size());
            if (r.hom_g[i][j] != r.hom_h[i][j]) {
                r.ok = false;
                if (r.what.empty())
                    r.what = "intertwiner dimension changes for samples " + std::to_string(i) + "," + std::to_string(j);
            }
        }
    return r;
}

}  // namespace groupoidrep
