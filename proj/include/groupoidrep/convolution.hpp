#pragma once

// The convolution category: functions on arrows graded by (t(g), s(g)),
// convolution, involution, fiberwise L^1 norms, and the passage between
// representations of G and non-degenerate representations of the category.

#include "groupoidrep/representation.hpp"

namespace groupoidrep {

/// One value per arrow; the grading is read off the arrows.
struct ConvElement {
    std::vector<cplx> values;

    cplx operator()(int g) const { return values[static_cast<size_t>(g)]; }
};

ConvElement zero_element(const Groupoid& G);
ConvElement delta(const Groupoid& G, int g);
/// Gaussian values on every arrow.
ConvElement random_element(const Groupoid& G, Prng& rng);
/// Gaussian values on G_m^n only.
ConvElement random_fiber_element(const Groupoid& G, int n, int m, Prng& rng);
double max_abs_diff(const ConvElement& a, const ConvElement& b);

/// (f * f')(g) = sum over h with s(h) = s(g) of f(g h^{-1}) f'(h) w(h).
ConvElement convolve(const ConvElement& f, const ConvElement& f2, const Groupoid& G, const HaarSystem& w);

/// f*(g) = conj f(g^{-1}).
ConvElement involution(const ConvElement& f, const Groupoid& G);

/// (n, m) -> sum_{g in G_m^n} |f(g)| w(g); the sup is sup_norm().
RelationFunction l1_norm(const ConvElement& f, const Groupoid& G, const HaarSystem& w);

/// ||f*f'||(n,k) <= sum_m ||f||(n,m) ||f'||(m,k) on every (n,k).
Report submultiplicativity_check(const ConvElement& f, const ConvElement& f2, const Groupoid& G,
                                 const HaarSystem& w, double tol = 1e-10);

/// A representation of the category, determined by its values on the
/// spanning set: atoms[g] = L(δ_g) : H_{s(g)} -> H_{t(g)}.
struct CategoryRep {
    HilbertField field;
    std::vector<Matrix> atoms;
};

/// L(f) on each grade (n, m); blocks are indexed n * |M| + m.
struct GradedOperator {
    int objects = 0;
    std::vector<Matrix> blocks;

    const Matrix& block(int n, int m) const { return blocks[static_cast<size_t>(n * objects + m)]; }
};

/// L_rho(δ_g) = w(g) pi(g). Throws PreconditionError unless rho is flagged
/// unitary, StructuralError on shape mismatch.
CategoryRep integrate_rep(const Groupoid& G, const HaarSystem& w, const Representation& rho);

/// L(f)(n, m) = sum_{g in G_m^n} f(g) L(δ_g).
GradedOperator apply(const Groupoid& G, const CategoryRep& L, const ConvElement& f);

/// Multiplicativity w(h) L(δ_{gh}) = L(δ_g) L(δ_h), *-compatibility
/// L(δ_{g^{-1}}) = L(δ_g)^*, and non-degeneracy (the L(δ_g) with t(g) = m
/// jointly span H_m, rank tolerance 1e-10). The witness names the arrows or
/// the deficient object.
Report check_category_rep(const Groupoid& G, const HaarSystem& w, const CategoryRep& L, double tol = 1e-10);

/// pi(g) = L(δ_g) / w(g): δ_g / w(g) is already an exact Dirac family.
/// Throws PreconditionError carrying check_category_rep's message.
Representation extract_rep(const Groupoid& G, const HaarSystem& w, const CategoryRep& L, double tol = 1e-10);

struct RoundTripReport {
    bool ok = true;
    std::string what;
    double extract_residual = 0.0;    // max |extract(integrate(rho))(g) - rho(g)|
    double integrate_residual = 0.0;  // max |integrate(extract(L))(δ_g) - L(δ_g)|
    double homomorphism_residual = 0.0;
    double star_residual = 0.0;
    bool orbit_constant = true;       // required for the category laws to hold
};

/// Both round trips for L = integrate(rho), plus the residuals of the
/// homomorphism and *-laws of L. Throws PreconditionError for non-unitary rho.
RoundTripReport bijection_roundtrip(const Groupoid& G, const HaarSystem& w, const Representation& rho,
                                    double tol = 1e-10);

/// max over (n,m) of ||L(f)(n,m)||_op - ||f||(n,m); non-positive when the
/// integrated representation is bounded by the L^1 norm.
double norm_bound_excess(const Groupoid& G, const HaarSystem& w, const CategoryRep& L, const ConvElement& f);

/// max |L(f * f') - L(f) L(f')| and max |L(f*) - L(f)^*| over all grades.
std::pair<double, double> category_residuals(const Groupoid& G, const HaarSystem& w, const CategoryRep& L,
                                             const ConvElement& f, const ConvElement& f2);

}  // namespace groupoidrep
