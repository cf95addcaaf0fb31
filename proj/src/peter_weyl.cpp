#include "groupoidrep/peter_weyl.hpp"

#include "groupoidrep/parallel.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <string>

namespace groupoidrep {

namespace {

size_t sz(int v) { return static_cast<size_t>(v); }

constexpr double kCharTol = 1e-9;

bool character_less(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (std::abs(a[i].real() - b[i].real()) > kCharTol) return a[i].real() < b[i].real();
        if (std::abs(a[i].imag() - b[i].imag()) > kCharTol) return a[i].imag() < b[i].imag();
    }
    return a.size() < b.size();
}

std::string fiber_name(int n, int m) { return "(" + std::to_string(n) + "," + std::to_string(m) + ")"; }

/// Coefficient functions g -> pi(g)_{ij} of every member, in member order,
/// (i, j) row-major. owner[f] is the member index.
struct Coefficients {
    std::vector<std::vector<cplx>> funcs;
    std::vector<int> owner;
};

Coefficients coefficients(const PWSet& pw, const Groupoid& G) {
    Coefficients c;
    auto orbit_of = orbit_index(G);
    for (size_t p = 0; p < pw.members.size(); ++p) {
        const auto& mem = pw.members[p];
        const int d = mem.rep.dim(mem.base);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                std::vector<cplx> f(sz(G.num_arrows()), 0.0);
                for (int g = 0; g < G.num_arrows(); ++g)
                    if (orbit_of[sz(G.src(g))] == mem.orbit) f[sz(g)] = mem.rep(g)(i, j);
                c.funcs.push_back(std::move(f));
                c.owner.push_back(static_cast<int>(p));
            }
    }
    return c;
}

CoefficientReport coefficient_report(const PWSet& pw, const Groupoid& G, const HaarSystem& w) {
    CoefficientReport r;
    Coefficients c = coefficients(pw, G);
    const int F = static_cast<int>(c.funcs.size());
    // Gram through the L^2 pairing on R_G
    std::vector<RelationFunction> gram(sz(F) * sz(F));
    parallel_for(F, [&](int a) {
        for (int b = 0; b < F; ++b) gram[sz(a) * sz(F) + sz(b)] = l2_pairing(G, w, c.funcs[sz(a)], c.funcs[sz(b)]);
    });
    for (int a = 0; a < F; ++a)
        for (int b = 0; b < F; ++b) {
            if (c.owner[sz(a)] == c.owner[sz(b)]) continue;
            for (const auto& v : gram[sz(a) * sz(F) + sz(b)].values)
                r.gram_offblock_max = std::max(r.gram_offblock_max, std::abs(v));
        }
    for (int n = 0; n < G.num_objects(); ++n)
        for (int m = 0; m < G.num_objects(); ++m) {
            const auto& arrows = G.hom(n, m);
            if (arrows.empty()) continue;
            Matrix A(F, static_cast<int>(arrows.size()));
            for (int a = 0; a < F; ++a)
                for (size_t k = 0; k < arrows.size(); ++k)
                    A(a, static_cast<int>(k)) = c.funcs[sz(a)][sz(arrows[k])] * std::sqrt(w.weights[sz(arrows[k])]);
            FiberRank fr{n, m, rank(A), static_cast<int>(arrows.size())};
            r.total_rank += fr.rank;
            r.expected_total += fr.expected;
            r.ranks.push_back(fr);
        }
    return r;
}

}  // namespace

std::vector<Representation> PWSet::reps() const {
    std::vector<Representation> out;
    for (const auto& m : members) out.push_back(m.rep);
    return out;
}

bool PWSet::complete() const {
    return std::all_of(certificates.begin(), certificates.end(), [](const PWCertificate& c) { return c.bijective(); });
}

Bibundle base_point_bibundle(const Groupoid& G, int m) {
    const auto& N = G.t_fiber(m);
    const auto& K = G.hom(m, m);
    const int size = static_cast<int>(N.size());
    Bibundle b = Bibundle::blank(size, static_cast<int>(K.size()), G.num_arrows());
    for (int n = 0; n < size; ++n) {
        b.left_anchor[sz(n)] = 0;
        b.right_anchor[sz(n)] = G.src(N[sz(n)]);
        for (size_t k = 0; k < K.size(); ++k)
            b.left[k * sz(size) + sz(n)] = G.t_index(G.comp(K[k], N[sz(n)]));
        for (int g : G.t_fiber(G.src(N[sz(n)])))
            b.right[sz(n) * sz(G.num_arrows()) + sz(g)] = G.t_index(G.comp(N[sz(n)], g));
    }
    return b;
}

std::vector<Representation> group_irreps(const FiniteGroup& K, std::uint64_t seed) {
    Groupoid KG = group_as_groupoid(K);
    auto parts = decompose(KG, left_regular(KG, counting_haar(KG)), seed);
    std::vector<Representation> irreps;
    for (size_t i = 0; i < parts.size(); ++i) {
        bool seen = false;
        for (const auto& r : irreps)
            if (r.dim(0) == parts[i].rep.dim(0) &&
                is_isomorphic(KG, r, parts[i].rep, Prng::derive(seed ^ 0x9e37, i)).isomorphic) {
                seen = true;
                break;
            }
        if (!seen) irreps.push_back(parts[i].rep);
    }
    std::vector<std::vector<cplx>> chars;
    for (const auto& r : irreps) {
        std::vector<cplx> chi;
        for (int k = 0; k < K.order; ++k) chi.push_back(r(k).trace());
        chars.push_back(std::move(chi));
    }
    std::vector<size_t> order(irreps.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (irreps[a].dim(0) != irreps[b].dim(0)) return irreps[a].dim(0) < irreps[b].dim(0);
        return character_less(chars[a], chars[b]);
    });
    std::vector<Representation> out;
    for (size_t i : order) out.push_back(std::move(irreps[i]));
    return out;
}

PWSet compute_pw_set(const Groupoid& G, const HaarSystem& w, std::uint64_t seed) {
    if (static_cast<int>(w.weights.size()) != G.num_arrows()) throw StructuralError("Haar weight count mismatch");
    PWSet pw;
    auto orbs = orbits(G);
    std::vector<std::vector<PWMember>> per_orbit(orbs.size());
    parallel_for(static_cast<int>(orbs.size()), [&](int o) {
        const int base = orbs[sz(o)].front();
        FiniteGroup K = isotropy_as_group(G, base);
        Groupoid KG = group_as_groupoid(K);
        auto irreps = group_irreps(K, Prng::derive(seed, sz(o)));
        Bibundle b = base_point_bibundle(G, base);
        for (const auto& irr : irreps) {
            PWMember mem;
            mem.rep = induce_rep(KG, G, b, irr);
            mem.rep.unitary = true;
            mem.orbit = o;
            mem.base = base;
            for (int k = 0; k < K.order; ++k) mem.character.push_back(irr(k).trace());
            per_orbit[sz(o)].push_back(std::move(mem));
        }
    });
    for (auto& v : per_orbit)
        for (auto& m : v) pw.members.push_back(std::move(m));

    pw.certificates.resize(sz(G.num_objects()));
    parallel_for(G.num_objects(), [&](int m) {
        PWCertificate& c = pw.certificates[sz(m)];
        c.object = m;
        c.isotropy_order = static_cast<int>(G.hom(m, m).size());
        Subgroupoid iso = isotropy_group(G, m);
        std::vector<Representation> local;
        for (const auto& mem : pw.members) {
            if (mem.rep.dim(m) == 0) continue;
            c.dims.push_back(mem.rep.dim(m));
            c.sum_squares += mem.rep.dim(m) * mem.rep.dim(m);
            local.push_back(restrict_rep(iso, mem.rep));
        }
        for (size_t i = 0; i < local.size(); ++i) {
            if (intertwiner_basis(iso.groupoid, local[i], local[i]).size() != 1) c.irreducible = false;
            for (size_t j = 0; j < i; ++j)
                if (!intertwiner_basis(iso.groupoid, local[i], local[j]).empty()) c.distinct = false;
        }
    });
    return pw;
}

CoefficientReport pw_orthogonality(const PWSet& pw, const Groupoid& G, const HaarSystem& w, double tol) {
    CoefficientReport r = coefficient_report(pw, G, w);
    if (r.gram_offblock_max >= tol) {
        r.ok = false;
        r.what = "coefficients of distinct members are not orthogonal";
    }
    return r;
}

CoefficientReport pw_completeness(const PWSet& pw, const Groupoid& G, const HaarSystem& w, double tol) {
    CoefficientReport r = coefficient_report(pw, G, w);
    for (const auto& fr : r.ranks)
        if (fr.rank != fr.expected) {
            r.ok = false;
            r.what = "coefficients span rank " + std::to_string(fr.rank) + " of " + std::to_string(fr.expected) +
                     " on fiber " + fiber_name(fr.n, fr.m);
            r.witness = {fr.n, fr.m};
            break;
        }
    if (r.ok && r.gram_offblock_max >= tol) {
        r.ok = false;
        r.what = "coefficient Gram is not block diagonal";
    }
    if (r.ok && r.total_rank != r.expected_total) {
        r.ok = false;
        r.what = "total coefficient rank differs from the arrow count";
    }
    return r;
}

PsiReport pw_isomorphism(const PWSet& pw, const Groupoid& G, const HaarSystem& w, double tol) {
    for (const auto& c : pw.certificates)
        if (!c.bijective())
            throw PreconditionError("restriction to the isotropy group at object " + std::to_string(c.object) +
                                    " is not bijective on the PW-set");
    PsiReport r;
    const int M = G.num_objects();
    const size_t P = pw.members.size();

    for (int m = 0; m < M; ++m) {
        int d2 = 0;
        for (const auto& mem : pw.members) d2 += mem.rep.dim(m) * mem.rep.dim(m);
        r.source.field.dims.push_back(d2);
        r.dimension_identity.push_back({m, d2, static_cast<int>(G.hom(m, m).size())});
    }
    r.source.unitary = true;
    r.target = conjugation_rep(G, w);

    r.psi.mats.resize(sz(M));
    r.abs_det.assign(sz(M), 0.0);
    r.normalizer.assign(sz(M), std::vector<double>(P, 0.0));
    std::vector<double> unit_res(sz(M), 0.0);
    std::vector<int> full(sz(M), 1);
    parallel_for(M, [&](int m) {
        const auto& K = G.hom(m, m);
        Matrix psi = Matrix::Zero(static_cast<int>(K.size()), r.source.dim(m));
        int col = 0;
        for (size_t p = 0; p < P; ++p) {
            const auto& rep = pw.members[p].rep;
            const int d = rep.dim(m);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j, ++col)
                    for (int k : K) psi(G.hom_index(k), col) = rep(k)(i, j) * std::sqrt(w.weights[sz(k)]);
            if (d > 0) r.normalizer[sz(m)][p] = psi.col(col - d * d).norm();
        }
        Matrix normalized = psi;
        for (int j = 0; j < normalized.cols(); ++j) {
            double nrm = normalized.col(j).norm();
            if (nrm > 0) normalized.col(j) /= nrm;
        }
        unit_res[sz(m)] = normalized.size() ? unitarity_residual(normalized) : 0.0;
        if (psi.rows() != psi.cols() || rank(psi) != psi.rows()) full[sz(m)] = 0;
        else r.abs_det[sz(m)] = psi.rows() ? std::abs(psi.fullPivLu().determinant()) : 1.0;
        r.psi.mats[sz(m)] = std::move(psi);
    });
    for (int m = 0; m < M; ++m) {
        r.normalized_unitarity_residual = std::max(r.normalized_unitarity_residual, unit_res[sz(m)]);
        if (!full[sz(m)]) r.bijective = false;
    }

    for (int g = 0; g < G.num_arrows(); ++g) {
        const int s = G.src(g), t = G.tgt(g);
        Matrix blk = Matrix::Zero(r.source.dim(t), r.source.dim(s));
        int row = 0, col = 0;
        for (const auto& mem : pw.members) {
            Matrix k = kron(mem.rep(g).conjugate(), mem.rep(g));
            blk.block(row, col, k.rows(), k.cols()) = k;
            row += static_cast<int>(k.rows());
            col += static_cast<int>(k.cols());
        }
        r.source.mats.push_back(blk);
        Matrix defect = r.psi.mats[sz(t)] * blk - r.target(g) * r.psi.mats[sz(s)];
        r.equivariance_residual = std::max(r.equivariance_residual, defect.size() ? max_abs(defect) : 0.0);
    }

    for (const auto& di : r.dimension_identity)
        if (di.sum_squares != di.isotropy_order) {
            r.ok = false;
            r.what = "dimension identity fails at object " + std::to_string(di.object);
        }
    if (!r.bijective) {
        r.ok = false;
        if (r.what.empty()) r.what = "Psi is not bijective";
    }
    if (r.equivariance_residual >= tol) {
        r.ok = false;
        if (r.what.empty()) r.what = "Psi is not equivariant";
    }
    return r;
}

}  // namespace groupoidrep
