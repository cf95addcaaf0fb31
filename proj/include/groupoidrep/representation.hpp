#pragma once

// Representations of a finite groupoid on finite-dimensional Hilbert
// fields: construction, validation, intertwiners, unitarization and the
// commutant-based splitting into M-irreducible summands.

#include "groupoidrep/field.hpp"
#include "groupoidrep/groupoid.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace groupoidrep {

inline constexpr double kRepTol = 1e-9;

/// pi(g) : H_{s(g)} -> H_{t(g)} for every arrow g. The groupoid is passed
/// alongside; a representation only records the arrow count it was built for.
struct Representation {
    HilbertField field;
    std::vector<Matrix> mats;
    bool unitary = false;

    int dim(int m) const { return field.dim(m); }
    const Matrix& operator()(int g) const { return mats[static_cast<size_t>(g)]; }
};

/// Throws StructuralError unless every matrix has shape dims(t) x dims(s).
void check_shapes(const Groupoid& G, const Representation& rho);

/// Units, multiplicativity, inverses, and unitarity when flagged, checked
/// on every arrow and composable pair. `residual` is the largest defect.
Report validate_rep(const Groupoid& G, const Representation& rho, double tol = kRepTol);

/// Largest singular value of each pi(g).
std::vector<double> operator_norms(const Representation& rho);

Representation trivial_rep(const Groupoid& G);

/// Left regular representation on L^2 of the t-fibers, written in the
/// orthonormal basis δ_x / sqrt(w(x)).
Representation left_regular(const Groupoid& G, const HaarSystem& w);

/// Right regular representation (pi_R(g) f)(g') = f(g' g) on L^2 of the
/// s-fibers, s-fiber measure w(g^{-1}).
Representation right_regular(const Groupoid& G, const HaarSystem& w);

/// (pi_LR(g) f)(h) = f(g^{-1} h g) on L^2 of the isotropy fibers G_m^m,
/// basis δ_k / sqrt(w(k)). Unitary when w is constant along orbits.
Representation conjugation_rep(const Groupoid& G, const HaarSystem& w);

/// Restriction to G_m^m, as a representation of isotropy_group(G, m).
Representation restrict_isotropy(const Groupoid& G, const Representation& rho, int m);

Representation dsum_rep(const Representation& a, const Representation& b);
Representation tensor_rep(const Representation& a, const Representation& b);
Representation conj_rep(const Representation& a);

/// Restrict along a subgroupoid embedding.
Representation restrict_rep(const Subgroupoid& sub, const Representation& rho);

/// rho restricted to the given objects: fibers elsewhere become zero.
Representation cut_to_objects(const Groupoid& G, const Representation& rho, const std::vector<int>& objects);

/// Phi_{t(g)} pi1(g) Phi_{s(g)}^{-1}; Phi must be invertible fiberwise.
Representation conjugate_by(const Groupoid& G, const Representation& rho, const FieldMorphism& phi);

/// Same field, Phi^* pi(g) Phi for a co-isometric/isometric family.
Representation compress(const Groupoid& G, const Representation& rho, const FieldMorphism& isometry);

/// g -> <ξ(t(g)), pi(g) η(s(g))>.
std::vector<cplx> matrix_coefficient(const Groupoid& G, const Representation& rho, const Section& xi,
                                     const Section& eta);

/// A function on the orbit relation R_G, indexed by its arrows (n, m).
struct RelationFunction {
    std::vector<std::pair<int, int>> pairs;
    std::vector<cplx> values;

    cplx at(int n, int m) const;
    double sup_norm() const;
};

/// (n, m) -> sum_{g in G_m^n} conj(f1(g)) f2(g) w(g).
RelationFunction l2_pairing(const Groupoid& G, const HaarSystem& w, const std::vector<cplx>& f1,
                            const std::vector<cplx>& f2);

/// Basis of Hom_G(rho1, rho2), orthonormal for sum_m tr(A_m^* B_m).
std::vector<FieldMorphism> intertwiner_basis(const Groupoid& G, const Representation& a,
                                             const Representation& b, double tol = kRankTol);

/// Max over arrows of ||Phi_t pi1(g) - pi2(g) Phi_s||.
double intertwining_residual(const Groupoid& G, const Representation& a, const Representation& b,
                             const FieldMorphism& phi);

struct IsoResult {
    bool isomorphic = false;
    std::optional<FieldMorphism> witness;
};

/// Searches Hom(rho1, rho2) for an invertible element via seeded random
/// combinations, testing invertibility fiberwise.
IsoResult is_isomorphic(const Groupoid& G, const Representation& a, const Representation& b,
                        std::uint64_t seed = 0x5eed);

struct UnitarizeResult {
    Representation rep;       // unitary
    FieldMorphism iso;        // rep(g) iso_{s(g)} = iso_{t(g)} input(g)
    std::vector<Matrix> gram; // averaged inner product per object
};

/// Averages the inner product over the s-fibers with a cutoff normalizing
/// each fiber's total mass to one, then conjugates by the Cholesky factor.
UnitarizeResult unitarize(const Groupoid& G, const HaarSystem& w, const Representation& rho);

struct Summand {
    Representation rep;
    FieldMorphism embedding;  // isometric, intertwines rep into the input
};

struct DecomposeOptions {
    double cluster_tol = 1e-7;
    int max_redraws = 5;
};

/// Splits a unitary representation into M-irreducible summands supported
/// on single orbits. Deterministic for fixed (input, seed).
std::vector<Summand> decompose(const Groupoid& G, const Representation& rho, std::uint64_t seed,
                               DecomposeOptions options = {});

bool is_M_irreducible(const Groupoid& G, const Representation& rho);

/// Intertwiner acts as lambda(m) * identity on every fiber.
std::optional<std::vector<cplx>> pointwise_scalar(const FieldMorphism& phi, double tol = kRepTol);

struct SchurReport {
    bool ok = true;
    std::string what;
    int end_dim = 0;
    int hom_dim = 0;
    std::vector<std::vector<cplx>> lambdas;  // one function on objects per End basis element
};

/// Schur's lemma checks for M-irreducible inputs: self-intertwiners of a
/// are pointwise scalar; fiber maps of a -> b intertwiners are invertible
/// or zero. Throws PreconditionError if an input is not M-irreducible.
SchurReport schur_check(const Groupoid& G, const Representation& a, const Representation& b, double tol = kRepTol);

/// ||pi(g)pi(h)|| <= ||pi(g)|| ||pi(h)|| and ||pi(g)^* pi(g)|| = ||pi(g)||^2.
Report fell_norm_check(const Groupoid& G, const Representation& rho, double tol = kRepTol);

}  // namespace groupoidrep
