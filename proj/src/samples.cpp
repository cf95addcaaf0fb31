#include "groupoidrep/samples.hpp"

#include <algorithm>

namespace groupoidrep {

namespace {

size_t sz(int v) { return static_cast<size_t>(v); }

Representation random_sum(const Groupoid& G, const PWSet& pw, Prng& rng, int max_copies) {
    if (pw.members.empty()) throw PreconditionError("empty PW-set");
    std::vector<int> copies(pw.members.size());
    int total = 0;
    for (auto& c : copies) total += (c = rng.below(max_copies + 1));
    if (total == 0) copies[sz(rng.below(static_cast<int>(copies.size())))] = 1;
    Representation r;
    r.field.dims.assign(sz(G.num_objects()), 0);
    r.mats.assign(sz(G.num_arrows()), Matrix(0, 0));
    r.unitary = true;
    for (size_t p = 0; p < copies.size(); ++p)
        for (int c = 0; c < copies[p]; ++c) r = dsum_rep(r, pw.members[p].rep);
    return r;
}

}  // namespace

std::vector<FiniteGroup> small_groups() {
    std::vector<FiniteGroup> out;
    for (int n = 1; n <= 8; ++n) out.push_back(cyclic_group(n));
    out.push_back(symmetric_group(3));
    out.push_back(dihedral_group(4));
    out.push_back(quaternion_group());
    out.push_back(direct_product(cyclic_group(2), cyclic_group(2)));
    out.push_back(direct_product(cyclic_group(2), cyclic_group(4)));
    out.push_back(direct_product(direct_product(cyclic_group(2), cyclic_group(2)), cyclic_group(2)));
    return out;
}

std::vector<std::vector<int>> coset_action(const FiniteGroup& h, const std::vector<int>& subgroup) {
    // coset of a = {a k}; label by least element
    std::vector<int> label(sz(h.order), -1);
    std::vector<int> reps;
    for (int a = 0; a < h.order; ++a) {
        if (label[sz(a)] >= 0) continue;
        int id = static_cast<int>(reps.size());
        reps.push_back(a);
        for (int k : subgroup) label[sz(h(a, k))] = id;
    }
    std::vector<std::vector<int>> act(sz(h.order), std::vector<int>(reps.size()));
    for (int g = 0; g < h.order; ++g)
        for (size_t c = 0; c < reps.size(); ++c) act[sz(g)][c] = label[sz(h(g, reps[c]))];
    return act;
}

Groupoid random_action_groupoid(Prng& rng, int max_points) {
    static const std::vector<FiniteGroup> groups = small_groups();
    const FiniteGroup& h = groups[sz(rng.below(static_cast<int>(groups.size())))];
    auto subs = all_subgroups(h);
    std::vector<std::vector<int>> act(sz(h.order));
    int points = 0;
    const int target = 1 + rng.below(max_points);
    for (int attempt = 0; attempt < 20 && points < target; ++attempt) {
        const auto& k = subs[sz(rng.below(static_cast<int>(subs.size())))];
        int index = h.order / static_cast<int>(k.size());
        if (points + index > max_points) continue;
        auto part = coset_action(h, k);
        for (int g = 0; g < h.order; ++g)
            for (int x : part[sz(g)]) act[sz(g)].push_back(points + x);
        points += index;
    }
    if (points == 0) {
        for (int g = 0; g < h.order; ++g) act[sz(g)].push_back(0);
        points = 1;
    }
    return make_action(h, points, act);
}

Representation random_unitary_rep(const Groupoid& G, const PWSet& pw, Prng& rng, int max_copies) {
    Representation r = random_sum(G, pw, rng, max_copies);
    FieldMorphism u;
    for (int m = 0; m < G.num_objects(); ++m) u.mats.push_back(random_unitary(rng, r.dim(m)));
    Representation out = conjugate_by(G, r, u);
    out.unitary = true;
    return out;
}

Representation random_skewed_rep(const Groupoid& G, const PWSet& pw, Prng& rng, int max_copies) {
    Representation r = random_sum(G, pw, rng, max_copies);
    FieldMorphism a;
    for (int m = 0; m < G.num_objects(); ++m) {
        const int d = r.dim(m);
        a.mats.push_back(Matrix::Identity(d, d) * 2.0 + random_complex(rng, d, d) * 0.5);
    }
    return conjugate_by(G, r, a);
}

}  // namespace groupoidrep
