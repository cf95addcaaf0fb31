#pragma once

// Global bisections of a finite groupoid, the group they form, and the
// correspondence between representations of G and local, C(M)-linear
// unitary actions of Bis(G) on sections.

#include "groupoidrep/representation.hpp"

namespace groupoidrep {

/// sigma[m] is an arrow with target m; s∘sigma must be a bijection.
struct Bisection {
    std::vector<int> sigma;

    bool operator==(const Bisection&) const = default;
    auto operator<=>(const Bisection&) const = default;
};

/// s∘sigma as a list, or nullopt when it is not a bijection or some
/// sigma[m] has the wrong target.
std::optional<std::vector<int>> base_map(const Groupoid& G, const Bisection& b);

/// (σ1·σ2)(m) = σ1(m) σ2(s(σ1(m))).
Bisection multiply(const Groupoid& G, const Bisection& a, const Bisection& b);
/// σ^{-1}(m) = σ(σ̃^{-1}(m))^{-1}.
Bisection invert(const Groupoid& G, const Bisection& b);
Bisection identity_bisection(const Groupoid& G);

inline constexpr double kBisectionCutoff = 1e6;

struct BisectionGroup {
    std::vector<Bisection> elements;  // lexicographic in the arrow ids
    FiniteGroup group;                // table indexed like `elements`
    Report axioms;

    int index_of(const Bisection& b) const;
};

/// All bisections by backtracking with an injectivity prune. Throws
/// PreconditionError when prod_m |t^{-1}(m)| exceeds kBisectionCutoff.
BisectionGroup enumerate_bisections(const Groupoid& G, double cutoff = kBisectionCutoff);

struct BisectionalReport {
    bool bisectional = true;
    int witness = -1;                  // arrow lying on no bisection
    std::vector<Bisection> extension;  // extension[g] passes through g
    /// The openness condition has no content over a finite discrete base.
    bool openness_automatic = true;
};

/// Per arrow g, extends t(g) -> g to a bisection by augmenting-path
/// matching of the remaining objects.
BisectionalReport is_bisectional(const Groupoid& G);

/// A linear action of a list of bisections on ⊕_m H_m: ops[i] acts for
/// elements[i].
struct BisectionAction {
    HilbertField field;
    std::vector<Matrix> ops;
};

/// (π̃(σ)ξ)(m) = π(σ(m)) ξ(σ̃(m)).
BisectionAction induced_bisection_rep(const Groupoid& G, const BisectionGroup& bis, const Representation& rho);

struct BisectionActionReport {
    bool ok = true;
    std::string what;
    std::vector<int> witness;
    double unitarity_residual = 0.0;     // <Uξ,Uη>(m) vs <ξ,η>(σ̃(m))
    double linearity_residual = 0.0;     // U P_x vs P_{σ̃^{-1}(x)} U
    double locality_residual = 0.0;      // σ(m) = 1_m forces (Uξ)(m) = ξ(m)
    double homomorphism_residual = 0.0;
};

BisectionActionReport check_bisection_action(const Groupoid& G, const BisectionGroup& bis,
                                             const BisectionAction& action, double tol = kRepTol);

/// pi(g) is the (t(g), s(g)) block of π̃(σ) for any σ through g; every
/// such σ must agree. Throws PreconditionError on linearity or locality
/// failures, ValidationError when extensions disagree.
Representation groupoid_rep_from_bis_rep(const Groupoid& G, const BisectionGroup& bis,
                                         const BisectionAction& action, double tol = kRepTol);

struct BisectionRoundTrip {
    bool ok = true;
    double rep_residual = 0.0;     // rho -> π̃ -> rho
    double action_residual = 0.0;  // π̃ -> rho -> π̃
};

BisectionRoundTrip bisection_roundtrip(const Groupoid& G, const BisectionGroup& bis, const Representation& rho,
                                       double tol = kRepTol);

}  // namespace groupoidrep
