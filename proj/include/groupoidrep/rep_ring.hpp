#pragma once

// The representation ring over the basis of M-irreducible classes (one per
// orbit and isotropy irreducible), restriction maps and dominance.

#include "groupoidrep/peter_weyl.hpp"

#include <memory>
#include <mutex>

namespace groupoidrep {

/// Integer coordinates over a RepRing basis; negative entries are formal
/// differences.
struct RepRingElement {
    std::vector<long long> coeffs;

    bool operator==(const RepRingElement&) const = default;
};

class RepRing {
public:
    RepRing(Groupoid G, HaarSystem w, std::uint64_t seed = 0);

    const Groupoid& groupoid() const { return G_; }
    const HaarSystem& haar() const { return w_; }
    const PWSet& pw() const { return pw_; }
    int rank() const { return static_cast<int>(pw_.members.size()); }
    const Representation& basis(int i) const { return pw_.members[static_cast<size_t>(i)].rep; }
    /// "orbit o, irrep k (dim d)"
    std::vector<std::string> labels() const;

    RepRingElement zero() const;
    RepRingElement unit_class(int i) const;
    /// Class of the trivial representation.
    RepRingElement one() const;

    /// Multiplicities dim Hom(b_i, rho). Requires a unitary rho.
    RepRingElement classify(const Representation& rho) const;

    RepRingElement add(const RepRingElement& a, const RepRingElement& b) const;
    RepRingElement subtract(const RepRingElement& a, const RepRingElement& b) const;
    RepRingElement multiply(const RepRingElement& a, const RepRingElement& b) const;

    /// classify(b_i ⊗ b_j), computed on first use and memoized.
    const RepRingElement& structure_constant(int i, int j) const;
    /// Fills the whole table, basis pairs in parallel.
    void compute_all_structure_constants() const;

    /// Irreducibles of G_m^m, found independently of the basis by splitting
    /// the isotropy group's regular representation.
    const std::vector<Representation>& isotropy_irreps(int m) const { return irreps_[static_cast<size_t>(m)]; }

    /// Row k, column i: multiplicity of isotropy_irreps(m)[k] in the
    /// restriction of b_i to G_m^m.
    std::vector<std::vector<int>> restriction_map(int m) const;

    /// Representation realizing a non-negative element.
    Representation realize(const RepRingElement& a) const;

private:
    void check(const RepRingElement& a) const;

    Groupoid G_;
    HaarSystem w_;
    std::uint64_t seed_;
    PWSet pw_;
    std::vector<std::vector<Representation>> irreps_;
    mutable std::mutex mutex_;
    mutable std::vector<std::unique_ptr<RepRingElement>> constants_;
};

struct ObjectDominance {
    int object = 0;
    bool injective = false;   // on classes supported at the object
    bool surjective = false;
    bool bijective() const { return injective && surjective; }
};

struct DominanceReport {
    std::vector<ObjectDominance> objects;
    /// Res_m on all classes at once is injective only with a single orbit.
    std::vector<bool> globally_injective;
    bool all_bijective = true;
};

DominanceReport dominance_report(const RepRing& ring);

/// Pulls an R_G-representation back along (t, s), tensors with a
/// realization of a and classifies.
RepRingElement rg_module_action(const RepRing& ring, const Representation& relation_rep, const RepRingElement& a);

/// pi_G(g) = pi_R(t(g), s(g)).
Representation pull_back_relation_rep(const Groupoid& G, const Representation& relation_rep);

}  // namespace groupoidrep
