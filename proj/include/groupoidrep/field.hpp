#pragma once

// Finite-dimensional fields of Hilbert spaces over a finite object set.
// Over a discrete base every family of vectors is a continuous section, so
// a field is just a dimension function; the topological statements are
// exercised on SampledSpace, a finite metric sample of a base space.

#include "groupoidrep/errors.hpp"
#include "groupoidrep/linalg.hpp"

#include <functional>
#include <vector>

namespace groupoidrep {

struct HilbertField {
    std::vector<int> dims;
    /// Set on conjugate fields. The coordinates are unchanged; operators on
    /// a conjugate field carry entrywise-conjugated matrices.
    bool conjugate = false;

    int num_objects() const { return static_cast<int>(dims.size()); }
    int dim(int m) const { return dims[static_cast<size_t>(m)]; }
    int total_dim() const;
    /// Offset of fiber m inside the concatenation ⊕_m H_m.
    int offset(int m) const;
    std::vector<int> support() const;

    bool operator==(const HilbertField&) const = default;
};

struct Section {
    std::vector<Vector> vectors;
};

/// Psi_m : H1_m -> H2_m for every object m.
struct FieldMorphism {
    std::vector<Matrix> mats;
};

inline constexpr double kGramTol = 1e-9;

/// Throws StructuralError on negative dimensions.
void check_field(const HilbertField& f);
/// Throws StructuralError unless vector lengths match the dims.
void check_section(const HilbertField& f, const Section& s);
/// Throws StructuralError unless every matrix is dims_to(m) x dims_from(m).
void check_morphism(const HilbertField& from, const HilbertField& to, const FieldMorphism& phi);

HilbertField direct_sum(const HilbertField& a, const HilbertField& b);
HilbertField tensor(const HilbertField& a, const HilbertField& b);
HilbertField conjugate(const HilbertField& f);

/// dims'(n) = dims(J(n)).
HilbertField pullback(const HilbertField& f, const std::vector<int>& map);

Section zero_section(const HilbertField& f);
FieldMorphism identity_morphism(const HilbertField& f);
FieldMorphism compose(const FieldMorphism& second, const FieldMorphism& first);
FieldMorphism adjoint(const FieldMorphism& phi);
Section apply(const FieldMorphism& phi, const Section& s);

/// Pointwise <ξ(m), η(m)>, conjugate-linear in the first slot.
std::vector<cplx> pointwise_inner(const Section& xi, const Section& eta);

/// Finite metric sample of a base space at resolution epsilon.
struct SampledSpace {
    Eigen::MatrixXd dist;
    double resolution = 0.0;

    int num_points() const { return static_cast<int>(dist.rows()); }
    /// Points m' != m with dist(m, m') <= resolution.
    std::vector<int> neighbors(int m) const;
};

/// Symmetry, zero diagonal, nonnegativity, triangle inequality (1e-9).
/// Throws ValidationError on failure.
void validate_space(const SampledSpace& space, double tol = 1e-9);

/// Sample of an interval: points at the given positions with |x - y| metric.
SampledSpace line_space(const std::vector<double>& positions, double resolution);

struct GramTrivialization {
    std::vector<int> chosen;                 // indices of the sections used
    std::vector<double> gram_det;            // per point of the base
    std::vector<int> region;                 // points where gram_det > tol
    std::vector<Matrix> frames;              // orthonormal frame per region point
};

/// Picks dims(base) sections that are independent at the base point
/// (greedily, in order) and returns the set where they stay independent,
/// with the Gram-Schmidt frame there. Throws NumericalError if the sections
/// do not span H_base.
GramTrivialization gram_trivialization(const HilbertField& f, const std::vector<Section>& sections,
                                       int base, double tol = kGramTol);

struct LscReport {
    bool ok = true;
    std::vector<int> violators;
    std::vector<int> witnesses;  // a neighbor of each violator with smaller dim
};

/// Sampled lower semicontinuity of the dimension: a point fails when its
/// dimension exceeds that of every sample within the resolution, i.e. when
/// no sampled approach supports its value.
LscReport check_dim_lsc(const HilbertField& f, const SampledSpace& space);

struct ContinuityReport {
    bool ok = true;
    double worst_excess = 0.0;
    std::vector<std::pair<int, int>> violations;
};

/// | ||ξ(m)|| - ||ξ(m')|| | <= modulus(dist(m, m')) for all pairs within
/// the resolution.
ContinuityReport check_norm_continuity(const HilbertField& f, const SampledSpace& space, const Section& xi,
                                       const std::function<double(double)>& modulus, double tol = 1e-12);

/// h in U(eps, ξ, V): m in V and ||h - ξ(m)|| < eps (strict).
bool neighborhood_member(const HilbertField& f, int m, const Vector& h, double eps, const Section& xi,
                         const std::vector<int>& region);

}  // namespace groupoidrep
