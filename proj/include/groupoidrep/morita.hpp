#pragma once

// Bibundles between finite groupoids and the induction functor they define
// on representations.

#include "groupoidrep/representation.hpp"

#include <optional>

namespace groupoidrep {

/// A G-H bibundle: a finite set N with anchors J_G : N -> G_0 and
/// J_H : N -> H_0, a left G-action defined when s(g) = J_G(n) and a right
/// H-action defined when t(h) = J_H(n). Action tables are dense with
/// kUndefined outside their domains.
struct Bibundle {
    int size = 0;
    std::vector<int> left_anchor;   // J_G
    std::vector<int> right_anchor;  // J_H
    int left_arrows = 0;            // |G|
    int right_arrows = 0;           // |H|
    std::vector<int> left;          // left[g * size + n] = g.n
    std::vector<int> right;         // right[n * |H| + h] = n.h

    int act_left(int g, int n) const { return left[static_cast<size_t>(g * size + n)]; }
    int act_right(int n, int h) const { return right[static_cast<size_t>(n * right_arrows + h)]; }

    /// Empty bibundle with undefined actions, ready to be filled.
    static Bibundle blank(int size, int left_arrows, int right_arrows);
};

struct BibundleReport {
    bool ok = true;                 // a bibundle at all
    std::string what;
    std::vector<int> witness;
    bool left_free = false;         // g.n = n only for units
    bool left_principal = false;    // left free, each J_H fiber one G-orbit, J_H onto
    bool right_free = false;
    bool right_principal = false;   // right free, each J_G fiber one H-orbit, J_G onto
    bool morita = false;
    std::string classification;
    /// Certificates: G-orbit of n -> J_H(n) and H-orbit of n -> J_G(n),
    /// indexed by orbit (orbits ordered by minimal element).
    std::vector<int> left_quotient;
    std::vector<int> right_quotient;
};

/// Throws StructuralError on malformed tables.
void check_bibundle_tables(const Groupoid& G, const Groupoid& H, const Bibundle& b);

/// Action axioms, commutation, anchor compatibility, then principality
/// on both sides.
BibundleReport validate_bibundle(const Groupoid& G, const Groupoid& H, const Bibundle& b);

/// G itself with left and right multiplication.
Bibundle unit_bibundle(const Groupoid& G);

/// The H-G bibundle with h.n = n.h^{-1} and n.g = g^{-1}.n.
Bibundle invert_bibundle(const Groupoid& G, const Groupoid& H, const Bibundle& b);

/// (N1 x_{H_0} N2)/H with (n1, n2) ~ (n1.h, h^{-1}.n2); classes are
/// numbered by their least pair.
Bibundle compose_bibundles(const Groupoid& G, const Groupoid& H, const Groupoid& K, const Bibundle& first,
                           const Bibundle& second);

/// Equivariant, anchor-preserving bijection N1 -> N2, if any. Exhaustive:
/// backtracking where each choice is propagated along both actions.
std::optional<std::vector<int>> find_bibundle_isomorphism(const Groupoid& G, const Groupoid& H,
                                                          const Bibundle& a, const Bibundle& b);

/// Gauge groupoid of a free right H-action on P together with P as a
/// (gauge)-H bibundle.
struct PrincipalBundle {
    Groupoid gauge;
    Groupoid group;
    Bibundle bibundle;
};
PrincipalBundle principal_bundle(int points, const FiniteGroup& h, const std::vector<std::vector<int>>& act);

/// Theta_N(rho) for a representation of G. The fiber at y in H_0 is
/// H_{J_G(n_y)} with n_y the least element of J_H^{-1}(y) (zero when the
/// fiber is empty); pi'(k) = pi(gamma)^{-1} where n_{s(k)}.k^{-1} = gamma.n_{t(k)}.
/// Requires a free left action whose J_H fibers are single orbits
/// (PreconditionError otherwise).
Representation induce_rep(const Groupoid& G, const Groupoid& H, const Bibundle& b, const Representation& rho);

struct EquivalenceReport {
    bool ok = true;
    std::vector<bool> round_trip;            // Theta_{N^-1} Theta_N rho ≅ rho
    std::vector<bool> irreducible_kept;      // M-irreducible in, M-irreducible out
    std::vector<std::vector<int>> hom_g;    // dim Hom_G(rho_i, rho_j)
    std::vector<std::vector<int>> hom_h;     // dim Hom_H(Theta rho_i, Theta rho_j)
    std::string what;
};

/// Round trips through N and N^{-1}, preservation of M-irreducibility and
/// of intertwiner dimensions on the sample. Throws PreconditionError unless
/// the bibundle is a Morita equivalence.
EquivalenceReport equivalence_check(const Groupoid& G, const Groupoid& H, const Bibundle& b,
                                    const std::vector<Representation>& samples, std::uint64_t seed = 0);

}  // namespace groupoidrep
