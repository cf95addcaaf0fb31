#pragma once

// PW-sets, matrix-coefficient orthogonality and span, and the map
// Psi : ⊕_π conj(H^π) ⊗ H^π -> L^2(I(G)).

#include "groupoidrep/morita.hpp"

namespace groupoidrep {

struct PWMember {
    Representation rep;         // representation of G, zero off its orbit
    int orbit = 0;
    int base = 0;               // least object of the orbit
    std::vector<cplx> character; // on isotropy_as_group(G, base)
};

/// Per object: dimensions of the members there and the check that their
/// isotropy restrictions are pairwise distinct irreducibles with
/// sum d^2 = |G_m^m|.
struct PWCertificate {
    int object = 0;
    int isotropy_order = 0;
    std::vector<int> dims;
    int sum_squares = 0;
    bool irreducible = true;
    bool distinct = true;
    bool bijective() const { return irreducible && distinct && sum_squares == isotropy_order; }
};

struct PWSet {
    std::vector<PWMember> members;
    std::vector<PWCertificate> certificates;

    std::vector<Representation> reps() const;
    bool complete() const;
};

/// Irreducible representations of K (as group_as_groupoid(K)), split out
/// of the regular representation, one per class, ordered by dimension then
/// lexicographically by character.
std::vector<Representation> group_irreps(const FiniteGroup& K, std::uint64_t seed = 0);

/// Per orbit: irreducibles of the base isotropy group (split out of its
/// regular representation, ordered by dimension then character), induced
/// along t^{-1}(base).
PWSet compute_pw_set(const Groupoid& G, const HaarSystem& w, std::uint64_t seed = 0);

/// The K-G bibundle t^{-1}(m) with K = G_m^m acting by composition on the
/// left; element i is t_fiber(m)[i].
Bibundle base_point_bibundle(const Groupoid& G, int m);

struct FiberRank {
    int n = 0, m = 0;
    int rank = 0;
    int expected = 0;  // |G_m^n|
};

struct CoefficientReport {
    bool ok = true;
    std::string what;
    std::vector<int> witness;          // (n, m) of the first failure
    double gram_offblock_max = 0.0;
    std::vector<FiberRank> ranks;
    int total_rank = 0;
    int expected_total = 0;
};

/// Gram matrices of the coefficients g -> pi(g)_{ij} on each G_m^n; the
/// entries between different members must vanish.
CoefficientReport pw_orthogonality(const PWSet& pw, const Groupoid& G, const HaarSystem& w, double tol = kRepTol);

/// The same coefficients span all functions on every G_m^n.
CoefficientReport pw_completeness(const PWSet& pw, const Groupoid& G, const HaarSystem& w, double tol = kRepTol);

struct DimensionIdentity {
    int object = 0;
    int sum_squares = 0;
    int isotropy_order = 0;
};

struct PsiReport {
    bool ok = true;
    std::string what;
    FieldMorphism psi;                  // fiber m: |G_m^m| x sum_π d_π(m)^2
    Representation source;              // ⊕_π conj(π) ⊗ π
    Representation target;              // conjugation_rep
    bool bijective = true;
    std::vector<double> abs_det;
    double equivariance_residual = 0.0;
    std::vector<DimensionIdentity> dimension_identity;
    /// normalizer[m][p]: common column norm of member p's block at m.
    std::vector<std::vector<double>> normalizer;
    double normalized_unitarity_residual = 0.0;
};

/// Column (π, i, j) at m, index i*d + j inside π's block, is
/// k -> pi(k)_{ij} in the basis δ_k / sqrt(w(k)). Throws PreconditionError
/// unless every certificate is bijective.
PsiReport pw_isomorphism(const PWSet& pw, const Groupoid& G, const HaarSystem& w, double tol = kRepTol);

}  // namespace groupoidrep
