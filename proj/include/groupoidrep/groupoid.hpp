#pragma once

// Finite groupoids as dense tables, their standard constructions, orbits,
// isotropy, and left Haar systems given by positive arrow weights.

#include "groupoidrep/errors.hpp"
#include "groupoidrep/group.hpp"

#include <utility>
#include <vector>

namespace groupoidrep {

inline constexpr int kUndefined = -1;

class Groupoid {
public:
    Groupoid() = default;

    /// Takes ownership of the tables. Only index ranges are checked here
    /// (StructuralError); the algebraic axioms are left to validate_groupoid.
    /// `comp` is dense, arrows x arrows, kUndefined where not composable.
    Groupoid(int objects, std::vector<int> src, std::vector<int> tgt, std::vector<int> comp,
             std::vector<int> inv, std::vector<int> unit);

    int num_objects() const { return objects_; }
    int num_arrows() const { return static_cast<int>(src_.size()); }

    int src(int g) const { return src_[static_cast<size_t>(g)]; }
    int tgt(int g) const { return tgt_[static_cast<size_t>(g)]; }
    int inv(int g) const { return inv_[static_cast<size_t>(g)]; }
    int unit(int m) const { return unit_[static_cast<size_t>(m)]; }

    /// g h, or kUndefined.
    int comp(int g, int h) const {
        return comp_[static_cast<size_t>(g) * static_cast<size_t>(num_arrows()) + static_cast<size_t>(h)];
    }
    /// g h; throws PreconditionError when src(g) != tgt(h).
    int compose(int g, int h) const;

    /// t^{-1}(m), ascending ids.
    const std::vector<int>& t_fiber(int m) const { return t_fibers_[static_cast<size_t>(m)]; }
    /// s^{-1}(m), ascending ids.
    const std::vector<int>& s_fiber(int m) const { return s_fibers_[static_cast<size_t>(m)]; }
    /// G_m^n = {g : s(g) = m, t(g) = n}, ascending ids.
    const std::vector<int>& hom(int n, int m) const {
        return homs_[static_cast<size_t>(n) * static_cast<size_t>(objects_) + static_cast<size_t>(m)];
    }

    /// Position of g inside t_fiber(tgt(g)) / s_fiber(src(g)) / hom(tgt(g), src(g)).
    int t_index(int g) const { return t_index_[static_cast<size_t>(g)]; }
    int s_index(int g) const { return s_index_[static_cast<size_t>(g)]; }
    int hom_index(int g) const { return hom_index_[static_cast<size_t>(g)]; }

    const std::vector<int>& src_table() const { return src_; }
    const std::vector<int>& tgt_table() const { return tgt_; }
    const std::vector<int>& comp_table() const { return comp_; }
    const std::vector<int>& inv_table() const { return inv_; }
    const std::vector<int>& unit_table() const { return unit_; }

private:
    int objects_ = 0;
    std::vector<int> src_, tgt_, comp_, inv_, unit_;
    std::vector<std::vector<int>> t_fibers_, s_fibers_, homs_;
    std::vector<int> t_index_, s_index_, hom_index_;
};

/// Checks every groupoid axiom exhaustively; the witness lists the arrows
/// (or object) of the first violation.
Report validate_groupoid(const Groupoid& g);

Groupoid make_pair(int n);

/// Action groupoid H ⋉ X. `act[h][x]` is h·x. Arrow (h,x) has id h*|X|+x,
/// source x and target h·x. Throws ValidationError if act is not an action.
Groupoid make_action(const FiniteGroup& h, int points, const std::vector<std::vector<int>>& act);

/// One-object groupoid with arrow ids equal to group element ids.
Groupoid group_as_groupoid(const FiniteGroup& h);

/// Gauge groupoid P ×_H P for a free right action `act[p][h]` = p·h.
/// Objects are the orbits of P ordered by their minimal element. Arrow
/// [p,q] is stored with q the minimal element of its orbit and has id
/// p * |M| + orbit(q). Throws ValidationError for non-free or non-actions.
Groupoid make_gauge(int points, const FiniteGroup& h, const std::vector<std::vector<int>>& act);

/// Trivial principal bundle M × H: points (m,h) have id m*|H|+h, right
/// multiplication on the H factor.
std::vector<std::vector<int>> trivial_bundle_action(int base_points, const FiniteGroup& h);

/// Bundle of groups; fiber arrows are laid out consecutively by object.
Groupoid make_bundle_of_groups(const std::vector<FiniteGroup>& fibers);

/// Subgroupoid together with the ids its arrows/objects carry in the
/// ambient groupoid.
struct Subgroupoid {
    Groupoid groupoid;
    std::vector<int> arrows;   // local arrow -> ambient arrow
    std::vector<int> objects;  // local object -> ambient object
};

/// I(G): all arrows with s = t, same object set.
Subgroupoid isotropy(const Groupoid& g);

/// G_m^m as a one-object groupoid.
Subgroupoid isotropy_group(const Groupoid& g, int m);

/// G_m^m as a FiniteGroup; element k corresponds to hom(m,m)[k].
FiniteGroup isotropy_as_group(const Groupoid& g, int m);

/// R_G with arrows the distinct pairs (t(g), s(g)) in lexicographic order.
Groupoid orbit_relation(const Groupoid& g);

/// Arrow id of (n,m) in orbit_relation(g), or kUndefined.
int relation_arrow(const Groupoid& relation, int n, int m);

/// Orbit partition; classes sorted by minimal object, objects ascending.
std::vector<std::vector<int>> orbits(const Groupoid& g);

/// orbit_of[m] = index into orbits(g).
std::vector<int> orbit_index(const Groupoid& g);

/// Full subgroupoid on one orbit's objects.
Subgroupoid restrict_to_objects(const Groupoid& g, const std::vector<int>& objects);

/// Small generating set: for each orbit a spanning tree of arrows from
/// its base point plus generators of the base isotropy group. Intertwining
/// and homomorphism conditions need only be checked on these.
std::vector<int> generating_arrows(const Groupoid& g);

// ---------------------------------------------------------------------------
// Haar systems

/// lambda^m({g}) = weights[g] for t(g) = m.
struct HaarSystem {
    std::vector<double> weights;
};

inline constexpr double kHaarTol = 1e-12;

HaarSystem counting_haar(const Groupoid& g);

/// Weights w(g) = c(s(g)); these are exactly the left invariant ones.
HaarSystem source_haar(const Groupoid& g, const std::vector<double>& per_object);

/// Positivity and the left invariance identity, tested against every delta
/// function f = δ_x. A failure reports the witness (g', x).
/// Throws StructuralError if the weight count is wrong and ValidationError
/// on a non-positive weight.
Report validate_haar(const Groupoid& g, const HaarSystem& w, double tol = kHaarTol);

/// Weight constant on each orbit (both left and right invariant); the
/// convolution category multiplies exactly under this condition.
bool is_orbit_constant(const Groupoid& g, const HaarSystem& w, double tol = kHaarTol);

}  // namespace groupoidrep
