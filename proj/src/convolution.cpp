#include "groupoidrep/convolution.hpp"

#include "groupoidrep/parallel.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace groupoidrep {

namespace {

size_t sz(int v) { return static_cast<size_t>(v); }

void check_element(const Groupoid& G, const ConvElement& f) {
    if (static_cast<int>(f.values.size()) != G.num_arrows())
        throw StructuralError("convolution element has " + std::to_string(f.values.size()) + " values for " +
                              std::to_string(G.num_arrows()) + " arrows");
}

void check_weights(const Groupoid& G, const HaarSystem& w) {
    if (static_cast<int>(w.weights.size()) != G.num_arrows()) throw StructuralError("Haar weight count mismatch");
}

double op_norm(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

}  // namespace

ConvElement zero_element(const Groupoid& G) { return {std::vector<cplx>(sz(G.num_arrows()), 0.0)}; }

ConvElement delta(const Groupoid& G, int g) {
    ConvElement f = zero_element(G);
    f.values.at(sz(g)) = 1.0;
    return f;
}

ConvElement random_element(const Groupoid& G, Prng& rng) {
    ConvElement f = zero_element(G);
    for (auto& v : f.values) v = rng.complex_normal();
    return f;
}

ConvElement random_fiber_element(const Groupoid& G, int n, int m, Prng& rng) {
    ConvElement f = zero_element(G);
    for (int g : G.hom(n, m)) f.values[sz(g)] = rng.complex_normal();
    return f;
}

double max_abs_diff(const ConvElement& a, const ConvElement& b) {
    double d = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) d = std::max(d, std::abs(a.values[i] - b.values[i]));
    return d;
}

ConvElement convolve(const ConvElement& f, const ConvElement& f2, const Groupoid& G, const HaarSystem& w) {
    check_element(G, f);
    check_element(G, f2);
    check_weights(G, w);
    ConvElement out = zero_element(G);
    parallel_for(G.num_arrows(), [&](int g) {
        cplx s = 0.0;
        for (int h : G.s_fiber(G.src(g))) {
            cplx b = f2(h);
            if (b == 0.0) continue;
            s += f(G.comp(g, G.inv(h))) * b * w.weights[sz(h)];
        }
        out.values[sz(g)] = s;
    });
    return out;
}

ConvElement involution(const ConvElement& f, const Groupoid& G) {
    check_element(G, f);
    ConvElement out = zero_element(G);
    for (int g = 0; g < G.num_arrows(); ++g) out.values[sz(g)] = std::conj(f(G.inv(g)));
    return out;
}

RelationFunction l1_norm(const ConvElement& f, const Groupoid& G, const HaarSystem& w) {
    check_element(G, f);
    check_weights(G, w);
    RelationFunction out;
    for (int n = 0; n < G.num_objects(); ++n)
        for (int m = 0; m < G.num_objects(); ++m) {
            const auto& arrows = G.hom(n, m);
            if (arrows.empty()) continue;
            double s = 0.0;
            for (int g : arrows) s += std::abs(f(g)) * w.weights[sz(g)];
            out.pairs.emplace_back(n, m);
            out.values.emplace_back(s);
        }
    return out;
}

Report submultiplicativity_check(const ConvElement& f, const ConvElement& f2, const Groupoid& G,
                                 const HaarSystem& w, double tol) {
    auto nf = l1_norm(f, G, w);
    auto nf2 = l1_norm(f2, G, w);
    auto nprod = l1_norm(convolve(f, f2, G, w), G, w);
    double worst = 0.0;
    std::vector<int> witness;
    for (size_t i = 0; i < nprod.pairs.size(); ++i) {
        auto [n, k] = nprod.pairs[i];
        double bound = 0.0;
        for (int m = 0; m < G.num_objects(); ++m) bound += nf.at(n, m).real() * nf2.at(m, k).real();
        double excess = nprod.values[i].real() - bound;
        if (excess > worst) {
            worst = excess;
            witness = {n, k};
        }
    }
    if (worst > tol) return Report::fail("L1 norm is not submultiplicative", witness, worst);
    Report r = Report::pass();
    r.residual = worst;
    return r;
}

CategoryRep integrate_rep(const Groupoid& G, const HaarSystem& w, const Representation& rho) {
    check_shapes(G, rho);
    check_weights(G, w);
    if (!rho.unitary) throw PreconditionError("integration requires a unitary representation");
    CategoryRep L;
    L.field = rho.field;
    for (int g = 0; g < G.num_arrows(); ++g) L.atoms.push_back(w.weights[sz(g)] * rho(g));
    return L;
}

GradedOperator apply(const Groupoid& G, const CategoryRep& L, const ConvElement& f) {
    check_element(G, f);
    const int M = G.num_objects();
    GradedOperator out;
    out.objects = M;
    for (int n = 0; n < M; ++n)
        for (int m = 0; m < M; ++m) {
            Matrix b = Matrix::Zero(L.field.dim(n), L.field.dim(m));
            for (int g : G.hom(n, m)) b += f(g) * L.atoms[sz(g)];
            out.blocks.push_back(std::move(b));
        }
    return out;
}

Report check_category_rep(const Groupoid& G, const HaarSystem& w, const CategoryRep& L, double tol) {
    check_weights(G, w);
    if (static_cast<int>(L.atoms.size()) != G.num_arrows()) throw StructuralError("one atom per arrow expected");
    for (int g = 0; g < G.num_arrows(); ++g)
        if (L.atoms[sz(g)].rows() != L.field.dim(G.tgt(g)) || L.atoms[sz(g)].cols() != L.field.dim(G.src(g)))
            throw StructuralError("atom of arrow " + std::to_string(g) + " has the wrong shape");
    double worst = 0.0;
    for (int g = 0; g < G.num_arrows(); ++g)
        for (int h : G.t_fiber(G.src(g))) {
            Matrix d = w.weights[sz(h)] * L.atoms[sz(G.comp(g, h))] - L.atoms[sz(g)] * L.atoms[sz(h)];
            double r = d.size() ? max_abs(d) : 0.0;
            worst = std::max(worst, r);
            if (r > tol) return Report::fail("category representation is not multiplicative", {g, h}, r);
        }
    for (int g = 0; g < G.num_arrows(); ++g) {
        Matrix d = L.atoms[sz(G.inv(g))] - L.atoms[sz(g)].adjoint();
        double r = d.size() ? max_abs(d) : 0.0;
        worst = std::max(worst, r);
        if (r > tol) return Report::fail("category representation is not *-compatible", {g}, r);
    }
    for (int m = 0; m < G.num_objects(); ++m) {
        const int d = L.field.dim(m);
        if (d == 0) continue;
        int cols = 0;
        for (int g : G.t_fiber(m)) cols += static_cast<int>(L.atoms[sz(g)].cols());
        Matrix span(d, cols);
        int c = 0;
        for (int g : G.t_fiber(m)) {
            span.middleCols(c, L.atoms[sz(g)].cols()) = L.atoms[sz(g)];
            c += static_cast<int>(L.atoms[sz(g)].cols());
        }
        if (rank(span, tol) < d)
            return Report::fail("category representation is degenerate at object " + std::to_string(m), {m}, 0.0);
    }
    Report r = Report::pass();
    r.residual = worst;
    return r;
}

Representation extract_rep(const Groupoid& G, const HaarSystem& w, const CategoryRep& L, double tol) {
    Report chk = check_category_rep(G, w, L, tol);
    if (!chk.ok) {
        std::string where;
        for (int x : chk.witness) where += (where.empty() ? " at " : ",") + std::to_string(x);
        throw PreconditionError(chk.what + where);
    }
    Representation rho;
    rho.field = L.field;
    for (int g = 0; g < G.num_arrows(); ++g) rho.mats.push_back(L.atoms[sz(g)] / w.weights[sz(g)]);
    rho.unitary = true;
    return rho;
}

RoundTripReport bijection_roundtrip(const Groupoid& G, const HaarSystem& w, const Representation& rho,
                                    double tol) {
    RoundTripReport r;
    r.orbit_constant = is_orbit_constant(G, w);
    CategoryRep L = integrate_rep(G, w, rho);
    for (int g = 0; g < G.num_arrows(); ++g)
        for (int h : G.t_fiber(G.src(g))) {
            Matrix d = w.weights[sz(h)] * L.atoms[sz(G.comp(g, h))] - L.atoms[sz(g)] * L.atoms[sz(h)];
            if (d.size()) r.homomorphism_residual = std::max(r.homomorphism_residual, max_abs(d));
        }
    for (int g = 0; g < G.num_arrows(); ++g) {
        Matrix d = L.atoms[sz(G.inv(g))] - L.atoms[sz(g)].adjoint();
        if (d.size()) r.star_residual = std::max(r.star_residual, max_abs(d));
    }
    Representation back;
    try {
        back = extract_rep(G, w, L, tol);
    } catch (const PreconditionError& e) {
        r.ok = false;
        r.what = e.what();
        return r;
    }
    for (int g = 0; g < G.num_arrows(); ++g) {
        Matrix d = back(g) - rho(g);
        if (d.size()) r.extract_residual = std::max(r.extract_residual, max_abs(d));
    }
    CategoryRep again = integrate_rep(G, w, back);
    for (int g = 0; g < G.num_arrows(); ++g) {
        Matrix d = again.atoms[sz(g)] - L.atoms[sz(g)];
        if (d.size()) r.integrate_residual = std::max(r.integrate_residual, max_abs(d));
    }
    if (r.extract_residual > tol || r.integrate_residual > tol) {
        r.ok = false;
        r.what = "round trip residual above tolerance";
    }
    return r;
}

double norm_bound_excess(const Groupoid& G, const HaarSystem& w, const CategoryRep& L, const ConvElement& f) {
    auto lf = apply(G, L, f);
    auto nf = l1_norm(f, G, w);
    double worst = -std::numeric_limits<double>::infinity();
    for (auto [n, m] : nf.pairs) worst = std::max(worst, op_norm(lf.block(n, m)) - nf.at(n, m).real());
    return worst;
}

std::pair<double, double> category_residuals(const Groupoid& G, const HaarSystem& w, const CategoryRep& L,
                                             const ConvElement& f, const ConvElement& f2) {
    const int M = G.num_objects();
    auto lf = apply(G, L, f);
    auto lf2 = apply(G, L, f2);
    auto lprod = apply(G, L, convolve(f, f2, G, w));
    auto lstar = apply(G, L, involution(f, G));
    double hom = 0.0, star = 0.0;
    for (int n = 0; n < M; ++n)
        for (int k = 0; k < M; ++k) {
            Matrix expect = Matrix::Zero(L.field.dim(n), L.field.dim(k));
            for (int m = 0; m < M; ++m) expect += lf.block(n, m) * lf2.block(m, k);
            Matrix d = lprod.block(n, k) - expect;
            if (d.size()) hom = std::max(hom, max_abs(d));
            Matrix e = lstar.block(k, n) - lf.block(n, k).adjoint();
            if (e.size()) star = std::max(star, max_abs(e));
        }
    return {hom, star};
}

}  // namespace groupoidrep
