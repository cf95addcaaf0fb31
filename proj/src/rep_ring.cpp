#include "groupoidrep/rep_ring.hpp"

#include "groupoidrep/parallel.hpp"

#include <string>

namespace groupoidrep {

namespace {

size_t sz(int v) { return static_cast<size_t>(v); }

Representation zero_rep(const Groupoid& G) {
    Representation r;
    r.field.dims.assign(sz(G.num_objects()), 0);
    for (int g = 0; g < G.num_arrows(); ++g) r.mats.push_back(Matrix(0, 0));
    r.unitary = true;
    return r;
}

}  // namespace

RepRing::RepRing(Groupoid G, HaarSystem w, std::uint64_t seed)
    : G_(std::move(G)), w_(std::move(w)), seed_(seed), pw_(compute_pw_set(G_, w_, seed)) {
    irreps_.resize(sz(G_.num_objects()));
    parallel_for(G_.num_objects(), [&](int m) {
        irreps_[sz(m)] = group_irreps(isotropy_as_group(G_, m), Prng::derive(seed_ ^ 0x7e57, sz(m)));
    });
    constants_.resize(sz(rank()) * sz(rank()));
}

std::vector<std::string> RepRing::labels() const {
    std::vector<std::string> out;
    int prev_orbit = -1, k = 0;
    for (const auto& m : pw_.members) {
        if (m.orbit != prev_orbit) k = 0;
        prev_orbit = m.orbit;
        out.push_back("orbit " + std::to_string(m.orbit) + ", irrep " + std::to_string(k++) + " (dim " +
                      std::to_string(m.rep.dim(m.base)) + ")");
    }
    return out;
}

void RepRing::check(const RepRingElement& a) const {
    if (static_cast<int>(a.coeffs.size()) != rank())
        throw StructuralError("ring element has " + std::to_string(a.coeffs.size()) + " coordinates, rank is " +
                              std::to_string(rank()));
}

RepRingElement RepRing::zero() const { return {std::vector<long long>(sz(rank()), 0)}; }

RepRingElement RepRing::unit_class(int i) const {
    RepRingElement e = zero();
    e.coeffs.at(sz(i)) = 1;
    return e;
}

RepRingElement RepRing::one() const { return classify(trivial_rep(G_)); }

RepRingElement RepRing::classify(const Representation& rho) const {
    check_shapes(G_, rho);
    RepRingElement e = zero();
    for (int i = 0; i < rank(); ++i)
        e.coeffs[sz(i)] = static_cast<long long>(intertwiner_basis(G_, basis(i), rho).size());
    for (int m = 0; m < G_.num_objects(); ++m) {
        long long total = 0;
        for (int i = 0; i < rank(); ++i) total += e.coeffs[sz(i)] * basis(i).dim(m);
        if (total != rho.dim(m))
            throw NumericalError("multiplicities account for dimension " + std::to_string(total) + " of " +
                                 std::to_string(rho.dim(m)) + " at object " + std::to_string(m));
    }
    return e;
}

RepRingElement RepRing::add(const RepRingElement& a, const RepRingElement& b) const {
    check(a);
    check(b);
    RepRingElement r = a;
    for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
    return r;
}

RepRingElement RepRing::subtract(const RepRingElement& a, const RepRingElement& b) const {
    check(a);
    check(b);
    RepRingElement r = a;
    for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] -= b.coeffs[i];
    return r;
}

const RepRingElement& RepRing::structure_constant(int i, int j) const {
    if (i < 0 || j < 0 || i >= rank() || j >= rank()) throw StructuralError("basis index out of range");
    const size_t slot = sz(i) * sz(rank()) + sz(j);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (constants_[slot]) return *constants_[slot];
    }
    auto value = std::make_unique<RepRingElement>(classify(tensor_rep(basis(i), basis(j))));
    std::lock_guard<std::mutex> lock(mutex_);
    if (!constants_[slot]) constants_[slot] = std::move(value);
    return *constants_[slot];
}

void RepRing::compute_all_structure_constants() const {
    const int r = rank();
    parallel_for(r * r, [&](int p) { structure_constant(p / r, p % r); });
}

RepRingElement RepRing::multiply(const RepRingElement& a, const RepRingElement& b) const {
    check(a);
    check(b);
    RepRingElement r = zero();
    for (int i = 0; i < rank(); ++i) {
        if (a.coeffs[sz(i)] == 0) continue;
        for (int j = 0; j < rank(); ++j) {
            if (b.coeffs[sz(j)] == 0) continue;
            const auto& c = structure_constant(i, j);
            for (int k = 0; k < rank(); ++k) r.coeffs[sz(k)] += a.coeffs[sz(i)] * b.coeffs[sz(j)] * c.coeffs[sz(k)];
        }
    }
    return r;
}

std::vector<std::vector<int>> RepRing::restriction_map(int m) const {
    if (m < 0 || m >= G_.num_objects()) throw StructuralError("object out of range");
    Subgroupoid iso = isotropy_group(G_, m);
    const auto& irr = isotropy_irreps(m);
    std::vector<std::vector<int>> res(irr.size(), std::vector<int>(sz(rank()), 0));
    for (int i = 0; i < rank(); ++i) {
        if (basis(i).dim(m) == 0) continue;
        Representation local = restrict_rep(iso, basis(i));
        for (size_t k = 0; k < irr.size(); ++k)
            res[k][sz(i)] = static_cast<int>(intertwiner_basis(iso.groupoid, irr[k], local).size());
    }
    return res;
}

Representation RepRing::realize(const RepRingElement& a) const {
    check(a);
    Representation r = zero_rep(G_);
    for (int i = 0; i < rank(); ++i) {
        if (a.coeffs[sz(i)] < 0) throw PreconditionError("only non-negative elements are realized");
        for (long long c = 0; c < a.coeffs[sz(i)]; ++c) r = dsum_rep(r, basis(i));
    }
    return r;
}

DominanceReport dominance_report(const RepRing& ring) {
    const Groupoid& G = ring.groupoid();
    DominanceReport r;
    for (int m = 0; m < G.num_objects(); ++m) {
        auto res = ring.restriction_map(m);
        const int rows = static_cast<int>(res.size());
        auto column = [&](int i) {
            std::vector<int> c;
            for (int k = 0; k < rows; ++k) c.push_back(res[sz(k)][sz(i)]);
            return c;
        };
        auto independent = [&](const std::vector<int>& cols) {
            Matrix A = Matrix::Zero(rows, static_cast<int>(cols.size()));
            for (size_t j = 0; j < cols.size(); ++j)
                for (int k = 0; k < rows; ++k) A(k, static_cast<int>(j)) = res[sz(k)][sz(cols[j])];
            return groupoidrep::rank(A) == static_cast<int>(cols.size());
        };
        std::vector<int> supported, all;
        for (int i = 0; i < ring.rank(); ++i) {
            all.push_back(i);
            if (ring.basis(i).dim(m) > 0) supported.push_back(i);
        }
        ObjectDominance d;
        d.object = m;
        d.injective = independent(supported);
        d.surjective = true;
        for (int k = 0; k < rows; ++k) {
            bool hit = false;
            for (int i : supported) {
                auto c = column(i);
                bool unit = c[sz(k)] == 1;
                for (int l = 0; l < rows && unit; ++l)
                    if (l != k && c[sz(l)] != 0) unit = false;
                if (unit) hit = true;
            }
            if (!hit) d.surjective = false;
        }
        if (!d.bijective()) r.all_bijective = false;
        r.objects.push_back(d);
        r.globally_injective.push_back(independent(all));
    }
    return r;
}

Representation pull_back_relation_rep(const Groupoid& G, const Representation& relation_rep) {
    Groupoid R = orbit_relation(G);
    check_shapes(R, relation_rep);
    Representation r;
    r.field = relation_rep.field;
    for (int g = 0; g < G.num_arrows(); ++g) r.mats.push_back(relation_rep(relation_arrow(R, G.tgt(g), G.src(g))));
    r.unitary = relation_rep.unitary;
    return r;
}

RepRingElement rg_module_action(const RepRing& ring, const Representation& relation_rep, const RepRingElement& a) {
    Representation pulled = pull_back_relation_rep(ring.groupoid(), relation_rep);
    RepRingElement pos = ring.zero(), neg = ring.zero();
    for (size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] > 0) pos.coeffs[i] = a.coeffs[i];
        else neg.coeffs[i] = -a.coeffs[i];
    }
    auto act = [&](const RepRingElement& e) { return ring.classify(tensor_rep(pulled, ring.realize(e))); };
    return ring.subtract(act(pos), act(neg));
}

}  // namespace groupoidrep
