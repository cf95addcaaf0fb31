#include "groupoidrep/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace groupoidrep {

namespace {
size_t sz(int v) { return static_cast<size_t>(v); }

void same_base(const HilbertField& a, const HilbertField& b) {
    if (a.num_objects() != b.num_objects()) throw StructuralError("fields live over different bases");
}
}  // namespace

int HilbertField::total_dim() const { return std::accumulate(dims.begin(), dims.end(), 0); }

int HilbertField::offset(int m) const {
    return std::accumulate(dims.begin(), dims.begin() + m, 0);
}

std::vector<int> HilbertField::support() const {
    std::vector<int> s;
    for (int m = 0; m < num_objects(); ++m)
        if (dims[sz(m)] > 0) s.push_back(m);
    return s;
}

void check_field(const HilbertField& f) {
    for (int d : f.dims)
        if (d < 0) throw StructuralError("negative fiber dimension");
}

void check_section(const HilbertField& f, const Section& s) {
    if (static_cast<int>(s.vectors.size()) != f.num_objects())
        throw StructuralError("section has wrong number of fibers");
    for (int m = 0; m < f.num_objects(); ++m)
        if (s.vectors[sz(m)].size() != f.dim(m))
            throw StructuralError("section vector at object " + std::to_string(m) + " has wrong length");
}

void check_morphism(const HilbertField& from, const HilbertField& to, const FieldMorphism& phi) {
    same_base(from, to);
    if (static_cast<int>(phi.mats.size()) != from.num_objects())
        throw StructuralError("morphism has wrong number of fibers");
    for (int m = 0; m < from.num_objects(); ++m)
        if (phi.mats[sz(m)].rows() != to.dim(m) || phi.mats[sz(m)].cols() != from.dim(m))
            throw StructuralError("morphism matrix at object " + std::to_string(m) + " has wrong shape");
}

HilbertField direct_sum(const HilbertField& a, const HilbertField& b) {
    same_base(a, b);
    HilbertField out;
    for (int m = 0; m < a.num_objects(); ++m) out.dims.push_back(a.dim(m) + b.dim(m));
    out.conjugate = a.conjugate && b.conjugate;
    return out;
}

HilbertField tensor(const HilbertField& a, const HilbertField& b) {
    same_base(a, b);
    HilbertField out;
    for (int m = 0; m < a.num_objects(); ++m) out.dims.push_back(a.dim(m) * b.dim(m));
    out.conjugate = a.conjugate && b.conjugate;
    return out;
}

HilbertField conjugate(const HilbertField& f) {
    HilbertField out = f;
    out.conjugate = !f.conjugate;
    return out;
}

HilbertField pullback(const HilbertField& f, const std::vector<int>& map) {
    HilbertField out;
    out.conjugate = f.conjugate;
    for (int m : map) {
        if (m < 0 || m >= f.num_objects()) throw StructuralError("pullback map leaves the base");
        out.dims.push_back(f.dim(m));
    }
    return out;
}

Section zero_section(const HilbertField& f) {
    Section s;
    for (int d : f.dims) s.vectors.push_back(Vector::Zero(d));
    return s;
}

FieldMorphism identity_morphism(const HilbertField& f) {
    FieldMorphism phi;
    for (int d : f.dims) phi.mats.push_back(Matrix::Identity(d, d));
    return phi;
}

FieldMorphism compose(const FieldMorphism& second, const FieldMorphism& first) {
    if (second.mats.size() != first.mats.size()) throw StructuralError("morphisms over different bases");
    FieldMorphism out;
    for (size_t m = 0; m < first.mats.size(); ++m) {
        if (second.mats[m].cols() != first.mats[m].rows())
            throw StructuralError("morphism shapes do not compose");
        out.mats.push_back(second.mats[m] * first.mats[m]);
    }
    return out;
}

FieldMorphism adjoint(const FieldMorphism& phi) {
    FieldMorphism out;
    for (const auto& a : phi.mats) out.mats.push_back(a.adjoint());
    return out;
}

Section apply(const FieldMorphism& phi, const Section& s) {
    if (phi.mats.size() != s.vectors.size()) throw StructuralError("section and morphism over different bases");
    Section out;
    for (size_t m = 0; m < s.vectors.size(); ++m) {
        if (phi.mats[m].cols() != s.vectors[m].size()) throw StructuralError("section does not fit morphism");
        out.vectors.push_back(phi.mats[m] * s.vectors[m]);
    }
    return out;
}

std::vector<cplx> pointwise_inner(const Section& xi, const Section& eta) {
    if (xi.vectors.size() != eta.vectors.size()) throw StructuralError("sections over different bases");
    std::vector<cplx> out;
    for (size_t m = 0; m < xi.vectors.size(); ++m) {
        if (xi.vectors[m].size() != eta.vectors[m].size()) throw StructuralError("section lengths differ");
        out.push_back(xi.vectors[m].dot(eta.vectors[m]));
    }
    return out;
}

std::vector<int> SampledSpace::neighbors(int m) const {
    std::vector<int> out;
    for (int k = 0; k < num_points(); ++k)
        if (k != m && dist(m, k) <= resolution) out.push_back(k);
    return out;
}

void validate_space(const SampledSpace& s, double tol) {
    const int n = s.num_points();
    if (s.dist.cols() != n) throw StructuralError("distance matrix is not square");
    if (!(s.resolution > 0.0)) throw ValidationError("resolution must be positive");
    for (int i = 0; i < n; ++i) {
        if (std::abs(s.dist(i, i)) > tol) throw ValidationError("distance matrix has nonzero diagonal");
        for (int j = 0; j < n; ++j) {
            if (s.dist(i, j) < -tol) throw ValidationError("negative distance");
            if (std::abs(s.dist(i, j) - s.dist(j, i)) > tol) throw ValidationError("distance is not symmetric");
            for (int k = 0; k < n; ++k)
                if (s.dist(i, k) > s.dist(i, j) + s.dist(j, k) + tol)
                    throw ValidationError("triangle inequality fails at (" + std::to_string(i) + "," +
                                          std::to_string(j) + "," + std::to_string(k) + ")");
        }
    }
}

SampledSpace line_space(const std::vector<double>& positions, double resolution) {
    const auto n = static_cast<Eigen::Index>(positions.size());
    SampledSpace s;
    s.resolution = resolution;
    s.dist.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            s.dist(i, j) = std::abs(positions[sz(static_cast<int>(i))] - positions[sz(static_cast<int>(j))]);
    return s;
}

GramTrivialization gram_trivialization(const HilbertField& f, const std::vector<Section>& sections, int base,
                                       double tol) {
    if (base < 0 || base >= f.num_objects()) throw StructuralError("base point out of range");
    for (const auto& s : sections) check_section(f, s);
    const int k = f.dim(base);
    GramTrivialization out;

    // greedy choice of sections independent at the base point
    Matrix chosen_at_base(k, 0);
    for (size_t i = 0; i < sections.size() && static_cast<int>(out.chosen.size()) < k; ++i) {
        Matrix trial(k, chosen_at_base.cols() + 1);
        trial << chosen_at_base, sections[i].vectors[sz(base)];
        if (rank(trial, tol) == trial.cols()) {
            chosen_at_base = trial;
            out.chosen.push_back(static_cast<int>(i));
        }
    }
    if (static_cast<int>(out.chosen.size()) < k)
        throw NumericalError("sections span only a " + std::to_string(out.chosen.size()) +
                             "-dimensional subspace of the fiber at object " + std::to_string(base));

    for (int p = 0; p < f.num_objects(); ++p) {
        Matrix frame(f.dim(p), k);
        for (int j = 0; j < k; ++j) frame.col(j) = sections[sz(out.chosen[sz(j)])].vectors[sz(p)];
        Matrix gram = frame.adjoint() * frame;
        double det = k == 0 ? 1.0 : std::abs(gram.determinant());
        out.gram_det.push_back(det);
        if (det > tol) {
            out.region.push_back(p);
            // Gram-Schmidt through the Cholesky factor: frame * L^{-*}
            Eigen::LLT<Matrix> llt(gram);
            Matrix on = llt.matrixU().solve<Eigen::OnTheRight>(frame);
            out.frames.push_back(on);
        }
    }
    return out;
}

LscReport check_dim_lsc(const HilbertField& f, const SampledSpace& space) {
    if (space.num_points() != f.num_objects()) throw StructuralError("field and sample have different sizes");
    LscReport out;
    for (int m = 0; m < f.num_objects(); ++m) {
        auto nb = space.neighbors(m);
        if (nb.empty()) continue;
        bool supported = std::any_of(nb.begin(), nb.end(), [&](int k) { return f.dim(k) >= f.dim(m); });
        if (!supported) {
            out.ok = false;
            out.violators.push_back(m);
            out.witnesses.push_back(*std::min_element(nb.begin(), nb.end(), [&](int a, int b) {
                return space.dist(m, a) < space.dist(m, b);
            }));
        }
    }
    return out;
}

ContinuityReport check_norm_continuity(const HilbertField& f, const SampledSpace& space, const Section& xi,
                                       const std::function<double(double)>& modulus, double tol) {
    check_section(f, xi);
    if (space.num_points() != f.num_objects()) throw StructuralError("field and sample have different sizes");
    ContinuityReport out;
    for (int m = 0; m < f.num_objects(); ++m)
        for (int k : space.neighbors(m)) {
            if (k < m) continue;
            double jump = std::abs(xi.vectors[sz(m)].norm() - xi.vectors[sz(k)].norm());
            double excess = jump - modulus(space.dist(m, k));
            out.worst_excess = std::max(out.worst_excess, excess);
            if (excess > tol) {
                out.ok = false;
                out.violations.emplace_back(m, k);
            }
        }
    return out;
}

bool neighborhood_member(const HilbertField& f, int m, const Vector& h, double eps, const Section& xi,
                         const std::vector<int>& region) {
    check_section(f, xi);
    if (m < 0 || m >= f.num_objects()) throw StructuralError("object out of range");
    if (h.size() != f.dim(m)) throw StructuralError("vector does not lie in the fiber");
    if (std::find(region.begin(), region.end(), m) == region.end()) return false;
    return (h - xi.vectors[sz(m)]).norm() < eps;
}

}  // namespace groupoidrep
