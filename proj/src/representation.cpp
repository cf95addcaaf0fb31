#include "groupoidrep/representation.hpp"

#include "groupoidrep/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace groupoidrep {

namespace {

size_t sz(int v) { return static_cast<size_t>(v); }

double op_norm(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

bool fiber_invertible(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    if (a.size() == 0) return true;
    Eigen::JacobiSVD<Matrix> svd(a);
    const auto& s = svd.singularValues();
    return s(s.size() - 1) > tol * std::max(1.0, s(0));
}

void same_groupoid(const Representation& a, const Representation& b) {
    if (a.mats.size() != b.mats.size() || a.field.num_objects() != b.field.num_objects())
        throw StructuralError("representations of different groupoids");
}

}  // namespace

void check_shapes(const Groupoid& G, const Representation& rho) {
    check_field(rho.field);
    if (rho.field.num_objects() != G.num_objects()) throw StructuralError("field has wrong number of objects");
    if (static_cast<int>(rho.mats.size()) != G.num_arrows())
        throw StructuralError("representation needs one matrix per arrow");
    for (int g = 0; g < G.num_arrows(); ++g) {
        const Matrix& a = rho(g);
        if (a.rows() != rho.dim(G.tgt(g)) || a.cols() != rho.dim(G.src(g)))
            throw StructuralError("matrix of arrow " + std::to_string(g) + " has shape " +
                                  std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ", expected " +
                                  std::to_string(rho.dim(G.tgt(g))) + "x" + std::to_string(rho.dim(G.src(g))));
    }
}

Report validate_rep(const Groupoid& G, const Representation& rho, double tol) {
    check_shapes(G, rho);
    Report first = Report::pass();
    double worst = 0.0;
    auto note = [&](double err, const char* what, std::vector<int> witness) {
        worst = std::max(worst, err);
        if (err > tol && first.ok) first = Report::fail(what, std::move(witness));
    };
    for (int m = 0; m < G.num_objects(); ++m) {
        const int d = rho.dim(m);
        note(max_abs(rho(G.unit(m)) - Matrix::Identity(d, d)), "unit does not act as identity", {G.unit(m)});
    }
    for (int g = 0; g < G.num_arrows(); ++g)
        for (int h : G.t_fiber(G.src(g)))
            note(max_abs(rho(G.comp(g, h)) - rho(g) * rho(h)), "pi(gh) != pi(g) pi(h)", {g, h});
    for (int g = 0; g < G.num_arrows(); ++g) {
        const int d = rho.dim(G.src(g));
        note(max_abs(rho(G.inv(g)) * rho(g) - Matrix::Identity(d, d)), "pi(g^-1) is not the inverse of pi(g)",
             {g, G.inv(g)});
    }
    if (rho.unitary)
        for (int g = 0; g < G.num_arrows(); ++g) note(unitarity_residual(rho(g)), "pi(g) is not unitary", {g});
    first.residual = worst;
    return first;
}

std::vector<double> operator_norms(const Representation& rho) {
    std::vector<double> out;
    for (const auto& a : rho.mats) out.push_back(op_norm(a));
    return out;
}

Representation trivial_rep(const Groupoid& G) {
    Representation r;
    r.field.dims.assign(sz(G.num_objects()), 1);
    r.mats.assign(sz(G.num_arrows()), Matrix::Ones(1, 1));
    r.unitary = true;
    return r;
}

Representation left_regular(const Groupoid& G, const HaarSystem& w) {
    Representation r;
    for (int m = 0; m < G.num_objects(); ++m) r.field.dims.push_back(static_cast<int>(G.t_fiber(m).size()));
    for (int g = 0; g < G.num_arrows(); ++g) {
        const int m = G.src(g), n = G.tgt(g);
        Matrix a = Matrix::Zero(r.dim(n), r.dim(m));
        // pi_L(g) δ_x = δ_{gx}
        for (int x : G.t_fiber(m)) {
            int gx = G.comp(g, x);
            a(G.t_index(gx), G.t_index(x)) = std::sqrt(w.weights[sz(gx)] / w.weights[sz(x)]);
        }
        r.mats.push_back(std::move(a));
    }
    r.unitary = true;
    return r;
}

Representation right_regular(const Groupoid& G, const HaarSystem& w) {
    Representation r;
    for (int m = 0; m < G.num_objects(); ++m) r.field.dims.push_back(static_cast<int>(G.s_fiber(m).size()));
    for (int g = 0; g < G.num_arrows(); ++g) {
        const int m = G.src(g), n = G.tgt(g);
        Matrix a = Matrix::Zero(r.dim(n), r.dim(m));
        // pi_R(g) δ_x = δ_{x g^{-1}}, x in s^{-1}(m)
        for (int x : G.s_fiber(m)) {
            int y = G.comp(x, G.inv(g));
            a(G.s_index(y), G.s_index(x)) = std::sqrt(w.weights[sz(G.inv(y))] / w.weights[sz(G.inv(x))]);
        }
        r.mats.push_back(std::move(a));
    }
    r.unitary = true;
    return r;
}

Representation conjugation_rep(const Groupoid& G, const HaarSystem& w) {
    Representation r;
    for (int m = 0; m < G.num_objects(); ++m) r.field.dims.push_back(static_cast<int>(G.hom(m, m).size()));
    bool unitary = true;
    for (int g = 0; g < G.num_arrows(); ++g) {
        const int m = G.src(g), n = G.tgt(g);
        Matrix a = Matrix::Zero(r.dim(n), r.dim(m));
        for (int k : G.hom(m, m)) {
            int c = G.comp(G.comp(g, k), G.inv(g));
            double factor = std::sqrt(w.weights[sz(c)] / w.weights[sz(k)]);
            if (std::abs(factor - 1.0) > kHaarTol) unitary = false;
            a(G.hom_index(c), G.hom_index(k)) = factor;
        }
        r.mats.push_back(std::move(a));
    }
    r.unitary = unitary;
    return r;
}

Representation restrict_rep(const Subgroupoid& sub, const Representation& rho) {
    Representation r;
    for (int m : sub.objects) r.field.dims.push_back(rho.dim(m));
    r.field.conjugate = rho.field.conjugate;
    for (int g : sub.arrows) r.mats.push_back(rho(g));
    r.unitary = rho.unitary;
    return r;
}

Representation restrict_isotropy(const Groupoid& G, const Representation& rho, int m) {
    return restrict_rep(isotropy_group(G, m), rho);
}

Representation dsum_rep(const Representation& a, const Representation& b) {
    same_groupoid(a, b);
    Representation r;
    r.field = direct_sum(a.field, b.field);
    for (size_t g = 0; g < a.mats.size(); ++g) {
        const Matrix &x = a.mats[g], &y = b.mats[g];
        Matrix z = Matrix::Zero(x.rows() + y.rows(), x.cols() + y.cols());
        z.topLeftCorner(x.rows(), x.cols()) = x;
        z.bottomRightCorner(y.rows(), y.cols()) = y;
        r.mats.push_back(std::move(z));
    }
    r.unitary = a.unitary && b.unitary;
    return r;
}

Representation tensor_rep(const Representation& a, const Representation& b) {
    same_groupoid(a, b);
    Representation r;
    r.field = tensor(a.field, b.field);
    for (size_t g = 0; g < a.mats.size(); ++g) r.mats.push_back(kron(a.mats[g], b.mats[g]));
    r.unitary = a.unitary && b.unitary;
    return r;
}

Representation conj_rep(const Representation& a) {
    Representation r;
    r.field = conjugate(a.field);
    for (const auto& x : a.mats) r.mats.push_back(x.conjugate());
    r.unitary = a.unitary;
    return r;
}

Representation cut_to_objects(const Groupoid& G, const Representation& rho, const std::vector<int>& objects) {
    std::vector<bool> in(sz(G.num_objects()), false);
    for (int m : objects) in[sz(m)] = true;
    Representation r;
    r.field.conjugate = rho.field.conjugate;
    for (int m = 0; m < G.num_objects(); ++m) r.field.dims.push_back(in[sz(m)] ? rho.dim(m) : 0);
    for (int g = 0; g < G.num_arrows(); ++g) {
        if (in[sz(G.src(g))] && in[sz(G.tgt(g))]) r.mats.push_back(rho(g));
        else r.mats.push_back(Matrix(r.dim(G.tgt(g)), r.dim(G.src(g))));
    }
    r.unitary = rho.unitary;
    return r;
}

Representation conjugate_by(const Groupoid& G, const Representation& rho, const FieldMorphism& phi) {
    Representation r;
    std::vector<Matrix> inverse;
    for (int m = 0; m < G.num_objects(); ++m) {
        const Matrix& p = phi.mats[sz(m)];
        if (p.rows() != p.cols() || p.cols() != rho.dim(m))
            throw StructuralError("conjugating morphism is not square on fiber " + std::to_string(m));
        r.field.dims.push_back(static_cast<int>(p.rows()));
        inverse.push_back(p.size() == 0 ? Matrix(0, 0) : Matrix(p.partialPivLu().inverse()));
    }
    r.field.conjugate = rho.field.conjugate;
    for (int g = 0; g < G.num_arrows(); ++g)
        r.mats.push_back(phi.mats[sz(G.tgt(g))] * rho(g) * inverse[sz(G.src(g))]);
    r.unitary = false;
    return r;
}

Representation compress(const Groupoid& G, const Representation& rho, const FieldMorphism& v) {
    check_shapes(G, rho);
    Representation r;
    for (int m = 0; m < G.num_objects(); ++m) {
        if (v.mats[sz(m)].rows() != rho.dim(m)) throw StructuralError("isometry does not land in the field");
        r.field.dims.push_back(static_cast<int>(v.mats[sz(m)].cols()));
    }
    r.field.conjugate = rho.field.conjugate;
    for (int g = 0; g < G.num_arrows(); ++g)
        r.mats.push_back(v.mats[sz(G.tgt(g))].adjoint() * rho(g) * v.mats[sz(G.src(g))]);
    r.unitary = rho.unitary;
    return r;
}

std::vector<cplx> matrix_coefficient(const Groupoid& G, const Representation& rho, const Section& xi,
                                     const Section& eta) {
    check_shapes(G, rho);
    check_section(rho.field, xi);
    check_section(rho.field, eta);
    std::vector<cplx> out;
    for (int g = 0; g < G.num_arrows(); ++g)
        out.push_back(xi.vectors[sz(G.tgt(g))].dot(rho(g) * eta.vectors[sz(G.src(g))]));
    return out;
}

cplx RelationFunction::at(int n, int m) const {
    auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(n, m));
    if (it == pairs.end() || *it != std::make_pair(n, m)) return 0.0;
    return values[static_cast<size_t>(it - pairs.begin())];
}

double RelationFunction::sup_norm() const {
    double s = 0.0;
    for (const auto& v : values) s = std::max(s, std::abs(v));
    return s;
}

RelationFunction l2_pairing(const Groupoid& G, const HaarSystem& w, const std::vector<cplx>& f1,
                            const std::vector<cplx>& f2) {
    if (static_cast<int>(f1.size()) != G.num_arrows() || static_cast<int>(f2.size()) != G.num_arrows())
        throw StructuralError("functions must have one value per arrow");
    RelationFunction out;
    for (int n = 0; n < G.num_objects(); ++n)
        for (int m = 0; m < G.num_objects(); ++m) {
            const auto& arrows = G.hom(n, m);
            if (arrows.empty()) continue;
            cplx s = 0.0;
            for (int g : arrows) s += std::conj(f1[sz(g)]) * f2[sz(g)] * w.weights[sz(g)];
            out.pairs.emplace_back(n, m);
            out.values.push_back(s);
        }
    return out;
}

std::vector<FieldMorphism> intertwiner_basis(const Groupoid& G, const Representation& a,
                                             const Representation& b, double tol) {
    check_shapes(G, a);
    check_shapes(G, b);
    // unknown Phi_m (db(m) x da(m)), column-major, concatenated by object
    std::vector<int> offset(sz(G.num_objects()) + 1, 0);
    for (int m = 0; m < G.num_objects(); ++m) offset[sz(m) + 1] = offset[sz(m)] + b.dim(m) * a.dim(m);
    const int unknowns = offset.back();
    if (unknowns == 0) return {};

    const auto gens = generating_arrows(G);
    int rows = 0;
    for (int g : gens) rows += b.dim(G.tgt(g)) * a.dim(G.src(g));
    Matrix sys = Matrix::Zero(rows, unknowns);
    int row = 0;
    for (int g : gens) {
        const int m = G.src(g), n = G.tgt(g);
        const Matrix &pa = a(g), &pb = b(g);
        const int rn = b.dim(n), cm = a.dim(m);
        // (Phi_n pa - pb Phi_m)(i, j) = 0
        for (int j = 0; j < cm; ++j)
            for (int i = 0; i < rn; ++i, ++row) {
                for (int k = 0; k < a.dim(n); ++k) sys(row, offset[sz(n)] + i + rn * k) += pa(k, j);
                for (int k = 0; k < b.dim(m); ++k) sys(row, offset[sz(m)] + k + b.dim(m) * j) -= pb(i, k);
            }
    }
    Matrix ns = null_space(sys, tol);
    std::vector<FieldMorphism> basis;
    for (Eigen::Index c = 0; c < ns.cols(); ++c) {
        FieldMorphism phi;
        for (int m = 0; m < G.num_objects(); ++m) {
            Matrix block(b.dim(m), a.dim(m));
            for (int j = 0; j < a.dim(m); ++j)
                for (int i = 0; i < b.dim(m); ++i) block(i, j) = ns(offset[sz(m)] + i + b.dim(m) * j, c);
            phi.mats.push_back(std::move(block));
        }
        basis.push_back(std::move(phi));
    }
    return basis;
}

double intertwining_residual(const Groupoid& G, const Representation& a, const Representation& b,
                             const FieldMorphism& phi) {
    double worst = 0.0;
    for (int g = 0; g < G.num_arrows(); ++g)
        worst = std::max(worst, max_abs(phi.mats[sz(G.tgt(g))] * a(g) - b(g) * phi.mats[sz(G.src(g))]));
    return worst;
}

IsoResult is_isomorphic(const Groupoid& G, const Representation& a, const Representation& b,
                        std::uint64_t seed) {
    check_shapes(G, a);
    check_shapes(G, b);
    IsoResult out;
    if (a.field.dims != b.field.dims) return out;
    if (a.field.total_dim() == 0) {
        out.isomorphic = true;
        out.witness = identity_morphism(a.field);
        return out;
    }
    auto basis = intertwiner_basis(G, a, b);
    if (basis.empty()) return out;
    Prng rng(seed);
    for (int attempt = 0; attempt < 3; ++attempt) {
        FieldMorphism t;
        for (int m = 0; m < G.num_objects(); ++m) t.mats.push_back(Matrix::Zero(b.dim(m), a.dim(m)));
        for (const auto& bphi : basis) {
            cplx z = rng.complex_normal();
            for (int m = 0; m < G.num_objects(); ++m) t.mats[sz(m)] += z * bphi.mats[sz(m)];
        }
        bool ok = true;
        for (int m = 0; m < G.num_objects() && ok; ++m) ok = fiber_invertible(t.mats[sz(m)], 1e-8);
        if (ok) {
            out.isomorphic = true;
            out.witness = std::move(t);
            return out;
        }
    }
    return out;
}

UnitarizeResult unitarize(const Groupoid& G, const HaarSystem& w, const Representation& rho) {
    check_shapes(G, rho);
    // cutoff c(n) = 1 / lambda^n(t^{-1}(n)), so sum_{g in s^{-1}(m)} c(t(g)) w(g^{-1}) = 1
    std::vector<double> cutoff;
    for (int n = 0; n < G.num_objects(); ++n) {
        double mass = 0.0;
        for (int x : G.t_fiber(n)) mass += w.weights[sz(x)];
        cutoff.push_back(1.0 / mass);
    }
    UnitarizeResult out;
    for (int m = 0; m < G.num_objects(); ++m) {
        const int d = rho.dim(m);
        Matrix gram = Matrix::Zero(d, d);
        for (int g : G.s_fiber(m))
            gram += cutoff[sz(G.tgt(g))] * w.weights[sz(G.inv(g))] * (rho(g).adjoint() * rho(g));
        gram = (0.5 * (gram + gram.adjoint())).eval();
        Matrix c(d, d);
        if (d > 0) {
            Eigen::LLT<Matrix> llt(gram);
            if (llt.info() != Eigen::Success)
                throw NumericalError("averaged Gram matrix is singular at object " + std::to_string(m));
            c = llt.matrixU();
        }
        out.gram.push_back(std::move(gram));
        out.iso.mats.push_back(std::move(c));
    }
    out.rep = conjugate_by(G, rho, out.iso);
    out.rep.unitary = true;
    return out;
}

namespace {

FieldMorphism inclusion(const Groupoid& G, const Representation& rho, const std::vector<int>& objects) {
    std::vector<bool> in(sz(G.num_objects()), false);
    for (int m : objects) in[sz(m)] = true;
    FieldMorphism phi;
    for (int m = 0; m < G.num_objects(); ++m) {
        const int d = rho.dim(m);
        phi.mats.push_back(in[sz(m)] ? Matrix(Matrix::Identity(d, d)) : Matrix(d, 0));
    }
    return phi;
}

std::vector<Summand> split_block(const Groupoid& G, const Representation& rho, Prng& rng,
                                 const DecomposeOptions& opt) {
    auto basis = intertwiner_basis(G, rho, rho);
    if (basis.size() <= 1) return {Summand{rho, identity_morphism(rho.field)}};

    const auto support = rho.field.support();
    const double ambiguous_gap = 1e3 * opt.cluster_tol;
    for (int attempt = 0; attempt < opt.max_redraws; ++attempt) {
        std::vector<Matrix> herm;
        for (int m = 0; m < G.num_objects(); ++m) herm.push_back(Matrix::Zero(rho.dim(m), rho.dim(m)));
        for (const auto& b : basis) {
            cplx z = rng.complex_normal();
            for (int m : support) herm[sz(m)] += z * b.mats[sz(m)];
        }
        for (int m : support) herm[sz(m)] = (herm[sz(m)] + herm[sz(m)].adjoint()).eval();

        std::vector<HermitianEigen> eig(sz(G.num_objects()));
        for (int m : support) eig[sz(m)] = jacobi_eigh(herm[sz(m)]);
        const auto& ref = eig[sz(support.front())];
        auto clusters = cluster_sorted(ref.values, opt.cluster_tol);
        if (clusters.size() < 2) continue;
        bool ambiguous = false;
        for (size_t c = 1; c < clusters.size(); ++c) {
            double gap = ref.values(clusters[c].first) - ref.values(clusters[c - 1].second - 1);
            if (gap <= ambiguous_gap) ambiguous = true;
        }
        if (ambiguous) continue;
        std::vector<double> centers;
        for (auto [lo, hi] : clusters) centers.push_back(ref.values.segment(lo, hi - lo).mean());

        // assign eigenvectors of every fiber to the reference clusters
        std::vector<FieldMorphism> pieces(clusters.size());
        for (auto& p : pieces)
            for (int m = 0; m < G.num_objects(); ++m) p.mats.push_back(Matrix(rho.dim(m), 0));
        for (int m : support) {
            const auto& e = eig[sz(m)];
            std::vector<std::vector<Eigen::Index>> cols(clusters.size());
            for (Eigen::Index k = 0; k < e.values.size(); ++k) {
                size_t best = 0;
                for (size_t c = 1; c < centers.size(); ++c)
                    if (std::abs(e.values(k) - centers[c]) < std::abs(e.values(k) - centers[best])) best = c;
                if (std::abs(e.values(k) - centers[best]) > ambiguous_gap) ambiguous = true;
                cols[best].push_back(k);
            }
            for (size_t c = 0; c < clusters.size(); ++c) {
                Matrix v(rho.dim(m), static_cast<Eigen::Index>(cols[c].size()));
                for (size_t j = 0; j < cols[c].size(); ++j) v.col(static_cast<Eigen::Index>(j)) = e.vectors.col(cols[c][j]);
                pieces[c].mats[sz(m)] = std::move(v);
            }
        }
        if (ambiguous) continue;

        std::vector<Summand> out;
        for (const auto& v : pieces) {
            Representation sub = compress(G, rho, v);
            for (auto& s : split_block(G, sub, rng, opt))
                out.push_back(Summand{std::move(s.rep), compose(v, s.embedding)});
        }
        return out;
    }
    throw NumericalError("commutant splitting failed to separate eigenvalue clusters after " +
                         std::to_string(opt.max_redraws) + " draws");
}

}  // namespace

std::vector<Summand> decompose(const Groupoid& G, const Representation& rho, std::uint64_t seed,
                               DecomposeOptions options) {
    check_shapes(G, rho);
    for (int g = 0; g < G.num_arrows(); ++g)
        if (unitarity_residual(rho(g)) > kRepTol)
            throw PreconditionError("decompose needs a unitary representation (arrow " + std::to_string(g) + ")");

    std::vector<std::vector<int>> blocks;
    for (const auto& orbit : orbits(G)) {
        bool supported = std::any_of(orbit.begin(), orbit.end(), [&](int m) { return rho.dim(m) > 0; });
        if (supported) blocks.push_back(orbit);
    }
    std::vector<std::vector<Summand>> per_block(blocks.size());
    parallel_for(static_cast<int>(blocks.size()), [&](int i) {
        Prng rng(Prng::derive(seed, static_cast<std::uint64_t>(i)));
        Representation part = cut_to_objects(G, rho, blocks[sz(i)]);
        part.unitary = true;
        FieldMorphism inc = inclusion(G, rho, blocks[sz(i)]);
        for (auto& s : split_block(G, part, rng, options))
            per_block[sz(i)].push_back(Summand{std::move(s.rep), compose(inc, s.embedding)});
    });
    std::vector<Summand> out;
    for (auto& v : per_block)
        for (auto& s : v) out.push_back(std::move(s));
    return out;
}

bool is_M_irreducible(const Groupoid& G, const Representation& rho) {
    check_shapes(G, rho);
    auto support = rho.field.support();
    if (support.empty()) return false;
    for (int m : support) {
        Subgroupoid iso = isotropy_group(G, m);
        Representation r = restrict_rep(iso, rho);
        if (intertwiner_basis(iso.groupoid, r, r).size() != 1) return false;
    }
    return true;
}

std::optional<std::vector<cplx>> pointwise_scalar(const FieldMorphism& phi, double tol) {
    std::vector<cplx> lambda;
    for (const auto& a : phi.mats) {
        if (a.rows() != a.cols()) return std::nullopt;
        if (a.size() == 0) {
            lambda.push_back(0.0);
            continue;
        }
        cplx l = a.trace() / static_cast<double>(a.rows());
        if (max_abs(a - l * Matrix::Identity(a.rows(), a.cols())) > tol) return std::nullopt;
        lambda.push_back(l);
    }
    return lambda;
}

SchurReport schur_check(const Groupoid& G, const Representation& a, const Representation& b, double tol) {
    if (!is_M_irreducible(G, a)) throw PreconditionError("first representation is not M-irreducible");
    if (!is_M_irreducible(G, b)) throw PreconditionError("second representation is not M-irreducible");
    SchurReport out;
    auto end = intertwiner_basis(G, a, a);
    out.end_dim = static_cast<int>(end.size());
    for (const auto& phi : end) {
        auto l = pointwise_scalar(phi, tol);
        if (!l) {
            out.ok = false;
            out.what = "self-intertwiner is not pointwise scalar";
            return out;
        }
        out.lambdas.push_back(*l);
    }
    auto hom = intertwiner_basis(G, a, b);
    out.hom_dim = static_cast<int>(hom.size());
    std::vector<FieldMorphism> probes = hom;
    if (hom.size() > 1) {
        Prng rng(0x5c5c);
        FieldMorphism mix;
        for (int m = 0; m < G.num_objects(); ++m) mix.mats.push_back(Matrix::Zero(b.dim(m), a.dim(m)));
        for (const auto& phi : hom) {
            cplx z = rng.complex_normal();
            for (int m = 0; m < G.num_objects(); ++m) mix.mats[sz(m)] += z * phi.mats[sz(m)];
        }
        probes.push_back(std::move(mix));
    }
    for (const auto& phi : probes)
        for (int m = 0; m < G.num_objects(); ++m) {
            const Matrix& f = phi.mats[sz(m)];
            if (f.size() == 0 || max_abs(f) <= tol) continue;
            if (!fiber_invertible(f, tol)) {
                out.ok = false;
                out.what = "intertwiner fiber at object " + std::to_string(m) + " is neither zero nor invertible";
                return out;
            }
        }
    return out;
}

Report fell_norm_check(const Groupoid& G, const Representation& rho, double tol) {
    check_shapes(G, rho);
    auto norms = operator_norms(rho);
    double worst = 0.0;
    for (int g = 0; g < G.num_arrows(); ++g) {
        double n = norms[sz(g)];
        double cstar = std::abs(op_norm(rho(g).adjoint() * rho(g)) - n * n);
        worst = std::max(worst, cstar);
        if (cstar > tol * std::max(1.0, n * n)) return Report::fail("||pi(g)^* pi(g)|| != ||pi(g)||^2", {g}, cstar);
        for (int h : G.t_fiber(G.src(g))) {
            double excess = op_norm(rho(g) * rho(h)) - n * norms[sz(h)];
            worst = std::max(worst, excess);
            if (excess > tol * std::max(1.0, n * norms[sz(h)]))
                return Report::fail("||pi(g) pi(h)|| exceeds ||pi(g)|| ||pi(h)||", {g, h}, excess);
        }
    }
    return Report::pass(std::max(0.0, worst));
}

}  // namespace groupoidrep
