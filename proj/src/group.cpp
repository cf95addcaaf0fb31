#include "groupoidrep/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace groupoidrep {

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table, std::string name) {
    FiniteGroup h;
    h.order = static_cast<int>(table.size());
    h.name = std::move(name);
    if (h.order == 0) throw StructuralError("group table is empty");
    h.mul.reserve(static_cast<size_t>(h.order * h.order));
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != h.order)
            throw StructuralError("group table is not square");
        for (int v : row) {
            if (v < 0 || v >= h.order) throw StructuralError("group table entry out of range");
            h.mul.push_back(v);
        }
    }
    h.identity = -1;
    for (int e = 0; e < h.order && h.identity < 0; ++e) {
        bool ok = true;
        for (int a = 0; a < h.order && ok; ++a) ok = h(e, a) == a && h(a, e) == a;
        if (ok) h.identity = e;
    }
    if (h.identity < 0) throw ValidationError("group table has no identity");
    h.inv.assign(static_cast<size_t>(h.order), -1);
    for (int a = 0; a < h.order; ++a)
        for (int b = 0; b < h.order; ++b)
            if (h(a, b) == h.identity && h(b, a) == h.identity) h.inv[static_cast<size_t>(a)] = b;
    for (int a = 0; a < h.order; ++a)
        if (h.inv[static_cast<size_t>(a)] < 0)
            throw ValidationError("element " + std::to_string(a) + " has no inverse");
    Report r = validate_group(h);
    if (!r.ok) throw ValidationError(r.what);
    return h;
}

Report validate_group(const FiniteGroup& h) {
    const int n = h.order;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (h(h(a, b), c) != h(a, h(b, c)))
                    return Report::fail("group multiplication is not associative", {a, b, c});
    for (int a = 0; a < n; ++a) {
        if (h(h.identity, a) != a || h(a, h.identity) != a)
            return Report::fail("identity law fails", {a});
        int ai = h.inv[static_cast<size_t>(a)];
        if (h(a, ai) != h.identity || h(ai, a) != h.identity)
            return Report::fail("inverse law fails", {a});
    }
    return Report::pass();
}

FiniteGroup cyclic_group(int n) {
    if (n < 1) throw StructuralError("cyclic group order must be positive");
    std::vector<std::vector<int>> t(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[static_cast<size_t>(a)][static_cast<size_t>(b)] = (a + b) % n;
    return FiniteGroup::from_table(std::move(t), "Z" + std::to_string(n));
}

namespace {

FiniteGroup from_permutations(const std::vector<std::vector<int>>& perms, std::string name) {
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
    const size_t n = perms.size();
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            // (a b)(i) = a(b(i))
            std::vector<int> c(perms[a].size());
            for (size_t i = 0; i < c.size(); ++i)
                c[i] = perms[a][static_cast<size_t>(perms[b][i])];
            t[a][b] = index.at(c);
        }
    return FiniteGroup::from_table(std::move(t), std::move(name));
}

}  // namespace

FiniteGroup symmetric_group(int n) {
    if (n < 1) throw StructuralError("symmetric group degree must be positive");
    std::vector<int> p(static_cast<size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> perms;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return from_permutations(perms, "S" + std::to_string(n));
}

FiniteGroup dihedral_group(int n) {
    if (n < 1) throw StructuralError("dihedral group parameter must be positive");
    if (n == 1) return cyclic_group(2);
    if (n == 2) return direct_product(cyclic_group(2), cyclic_group(2));
    // symmetries of the n-gon as vertex permutations
    std::vector<std::vector<int>> perms;
    for (int k = 0; k < n; ++k) {
        std::vector<int> rot(static_cast<size_t>(n)), ref(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            rot[static_cast<size_t>(i)] = (i + k) % n;
            ref[static_cast<size_t>(i)] = ((k - i) % n + n) % n;
        }
        perms.push_back(rot);
        perms.push_back(ref);
    }
    std::sort(perms.begin(), perms.end());
    return from_permutations(perms, "D" + std::to_string(n));
}

FiniteGroup quaternion_group() {
    // elements ±1, ±i, ±j, ±k encoded as sign*unit, unit in {1,i,j,k}
    // id = 2*unit + (sign < 0)
    static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int unit_sign[4][4] = {
        {1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            int ua = a / 2, ub = b / 2;
            int sign = (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1) * unit_sign[ua][ub];
            t[static_cast<size_t>(a)][static_cast<size_t>(b)] = 2 * unit_mul[ua][ub] + (sign < 0 ? 1 : 0);
        }
    return FiniteGroup::from_table(std::move(t), "Q8");
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const int n = a.order * b.order;
    std::vector<std::vector<int>> t(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            t[static_cast<size_t>(x)][static_cast<size_t>(y)] =
                a(x / b.order, y / b.order) * b.order + b(x % b.order, y % b.order);
    return FiniteGroup::from_table(std::move(t), a.name + "x" + b.name);
}

std::vector<int> generated_subgroup(const FiniteGroup& h, const std::vector<int>& gens) {
    std::set<int> seen{h.identity};
    std::queue<int> todo;
    todo.push(h.identity);
    while (!todo.empty()) {
        int x = todo.front();
        todo.pop();
        for (int g : gens) {
            int y = h(x, g);
            if (seen.insert(y).second) todo.push(y);
        }
    }
    return {seen.begin(), seen.end()};
}

std::vector<std::vector<int>> all_subgroups(const FiniteGroup& h) {
    std::set<std::vector<int>> found;
    std::vector<std::vector<int>> frontier{generated_subgroup(h, {})};
    found.insert(frontier.front());
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& sub : frontier)
            for (int g = 0; g < h.order; ++g) {
                if (std::binary_search(sub.begin(), sub.end(), g)) continue;
                std::vector<int> gens = sub;
                gens.push_back(g);
                auto bigger = generated_subgroup(h, gens);
                if (found.insert(bigger).second) next.push_back(std::move(bigger));
            }
        frontier = std::move(next);
    }
    return {found.begin(), found.end()};
}

std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b) {
    if (a.order != b.order) return std::nullopt;
    std::vector<int> gens;
    auto span = generated_subgroup(a, gens);
    for (int g = 0; g < a.order && static_cast<int>(span.size()) < a.order; ++g)
        if (!std::binary_search(span.begin(), span.end(), g)) {
            gens.push_back(g);
            span = generated_subgroup(a, gens);
        }

    // phi is determined by generator images; enumerate them
    std::vector<int> images(gens.size(), 0);
    auto extend = [&]() -> std::optional<std::vector<int>> {
        std::vector<int> phi(static_cast<size_t>(a.order), -1);
        phi[static_cast<size_t>(a.identity)] = b.identity;
        std::queue<int> todo;
        todo.push(a.identity);
        while (!todo.empty()) {
            int x = todo.front();
            todo.pop();
            for (size_t k = 0; k < gens.size(); ++k) {
                int y = a(x, gens[k]);
                int py = b(phi[static_cast<size_t>(x)], images[k]);
                if (phi[static_cast<size_t>(y)] < 0) {
                    phi[static_cast<size_t>(y)] = py;
                    todo.push(y);
                } else if (phi[static_cast<size_t>(y)] != py) {
                    return std::nullopt;
                }
            }
        }
        std::vector<bool> hit(static_cast<size_t>(b.order), false);
        for (int v : phi) {
            if (v < 0 || hit[static_cast<size_t>(v)]) return std::nullopt;
            hit[static_cast<size_t>(v)] = true;
        }
        for (int x = 0; x < a.order; ++x)
            for (int y = 0; y < a.order; ++y)
                if (phi[static_cast<size_t>(a(x, y))] != b(phi[static_cast<size_t>(x)], phi[static_cast<size_t>(y)]))
                    return std::nullopt;
        return phi;
    };
    while (true) {
        if (auto phi = extend()) return phi;
        size_t k = 0;
        while (k < images.size() && ++images[k] == b.order) images[k++] = 0;
        if (k == images.size()) return std::nullopt;
    }
}

}  // namespace groupoidrep
