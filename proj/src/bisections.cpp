#include "groupoidrep/bisections.hpp"

#include "groupoidrep/parallel.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <string>

namespace groupoidrep {

namespace {

size_t sz(int v) { return static_cast<size_t>(v); }

void check_length(const Groupoid& G, const Bisection& b) {
    if (static_cast<int>(b.sigma.size()) != G.num_objects())
        throw StructuralError("bisection must assign one arrow per object");
}

std::vector<int> inverse_map(const std::vector<int>& f) {
    std::vector<int> g(f.size());
    for (size_t i = 0; i < f.size(); ++i) g[sz(f[i])] = static_cast<int>(i);
    return g;
}

}  // namespace

std::optional<std::vector<int>> base_map(const Groupoid& G, const Bisection& b) {
    check_length(G, b);
    std::vector<int> f(b.sigma.size());
    std::vector<bool> hit(b.sigma.size(), false);
    for (int m = 0; m < G.num_objects(); ++m) {
        int g = b.sigma[sz(m)];
        if (g < 0 || g >= G.num_arrows() || G.tgt(g) != m) return std::nullopt;
        int x = G.src(g);
        if (hit[sz(x)]) return std::nullopt;
        hit[sz(x)] = true;
        f[sz(m)] = x;
    }
    return f;
}

Bisection multiply(const Groupoid& G, const Bisection& a, const Bisection& b) {
    check_length(G, a);
    check_length(G, b);
    Bisection r;
    for (int m = 0; m < G.num_objects(); ++m) {
        int g = a.sigma[sz(m)];
        r.sigma.push_back(G.compose(g, b.sigma[sz(G.src(g))]));
    }
    return r;
}

Bisection invert(const Groupoid& G, const Bisection& b) {
    auto f = base_map(G, b);
    if (!f) throw ValidationError("not a bisection");
    auto finv = inverse_map(*f);
    Bisection r;
    for (int m = 0; m < G.num_objects(); ++m) r.sigma.push_back(G.inv(b.sigma[sz(finv[sz(m)])]));
    return r;
}

Bisection identity_bisection(const Groupoid& G) {
    Bisection r;
    for (int m = 0; m < G.num_objects(); ++m) r.sigma.push_back(G.unit(m));
    return r;
}

int BisectionGroup::index_of(const Bisection& b) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), b);
    if (it == elements.end() || !(*it == b)) return -1;
    return static_cast<int>(it - elements.begin());
}

BisectionGroup enumerate_bisections(const Groupoid& G, double cutoff) {
    const int M = G.num_objects();
    double candidates = 1.0;
    for (int m = 0; m < M; ++m) candidates *= static_cast<double>(G.t_fiber(m).size());
    if (candidates > cutoff)
        throw PreconditionError("bisection enumeration would scan " + std::to_string(candidates) +
                                " candidate maps, above the cutoff");
    BisectionGroup out;
    if (M == 0) {
        out.elements.push_back({});
        out.group = FiniteGroup::from_table({{0}}, "Bis");
        out.axioms = validate_group(out.group);
        return out;
    }
    const auto& first = G.t_fiber(0);
    std::vector<std::vector<Bisection>> found(first.size());
    parallel_for(static_cast<int>(first.size()), [&](int i) {
        std::vector<int> sigma(sz(M), -1);
        std::vector<bool> used(sz(M), false);
        sigma[0] = first[sz(i)];
        used[sz(G.src(sigma[0]))] = true;
        std::function<void(int)> rec = [&](int m) {
            if (m == M) {
                found[sz(i)].push_back({sigma});
                return;
            }
            for (int g : G.t_fiber(m)) {
                if (used[sz(G.src(g))]) continue;
                used[sz(G.src(g))] = true;
                sigma[sz(m)] = g;
                rec(m + 1);
                used[sz(G.src(g))] = false;
            }
        };
        rec(1);
    });
    for (auto& v : found)
        for (auto& b : v) out.elements.push_back(std::move(b));

    const int n = static_cast<int>(out.elements.size());
    std::vector<std::vector<int>> table(sz(n), std::vector<int>(sz(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int c = out.index_of(multiply(G, out.elements[sz(a)], out.elements[sz(b)]));
            if (c < 0) throw ValidationError("product of bisections is not a bisection");
            table[sz(a)][sz(b)] = c;
        }
    out.group = FiniteGroup::from_table(std::move(table), "Bis");
    out.axioms = validate_group(out.group);
    if (out.axioms.ok) {
        for (int a = 0; a < n; ++a) {
            int expect = out.index_of(invert(G, out.elements[sz(a)]));
            if (expect != out.group.inv[sz(a)]) {
                out.axioms = Report::fail("inverse formula disagrees with the table", {a});
                break;
            }
        }
        if (out.index_of(identity_bisection(G)) != out.group.identity)
            out.axioms = Report::fail("identity is not the unit bisection", {out.group.identity});
    }
    return out;
}

BisectionalReport is_bisectional(const Groupoid& G) {
    const int M = G.num_objects();
    BisectionalReport r;
    for (int g = 0; g < G.num_arrows(); ++g) {
        const int m0 = G.tgt(g), s0 = G.src(g);
        std::vector<int> match_right(sz(M), -1);  // object x -> left object m
        std::vector<bool> seen;
        std::function<bool(int)> augment = [&](int m) {
            for (int x = 0; x < M; ++x) {
                if (x == s0 || seen[sz(x)] || G.hom(m, x).empty()) continue;
                seen[sz(x)] = true;
                if (match_right[sz(x)] < 0 || augment(match_right[sz(x)])) {
                    match_right[sz(x)] = m;
                    return true;
                }
            }
            return false;
        };
        bool perfect = true;
        for (int m = 0; m < M && perfect; ++m) {
            if (m == m0) continue;
            seen.assign(sz(M), false);
            perfect = augment(m);
        }
        if (!perfect) {
            r.bisectional = false;
            if (r.witness < 0) r.witness = g;
            r.extension.push_back({});
            continue;
        }
        Bisection b;
        b.sigma.assign(sz(M), -1);
        b.sigma[sz(m0)] = g;
        for (int x = 0; x < M; ++x)
            if (x != s0) {
                int m = match_right[sz(x)];
                b.sigma[sz(m)] = G.hom(m, x).front();
            }
        r.extension.push_back(std::move(b));
    }
    return r;
}

BisectionAction induced_bisection_rep(const Groupoid& G, const BisectionGroup& bis, const Representation& rho) {
    check_shapes(G, rho);
    if (!rho.unitary) throw PreconditionError("induced bisection action requires a unitary representation");
    BisectionAction a;
    a.field = rho.field;
    const int D = rho.field.total_dim();
    for (const auto& b : bis.elements) {
        Matrix U = Matrix::Zero(D, D);
        for (int m = 0; m < G.num_objects(); ++m) {
            int g = b.sigma[sz(m)];
            const Matrix& p = rho(g);
            U.block(rho.field.offset(m), rho.field.offset(G.src(g)), p.rows(), p.cols()) = p;
        }
        a.ops.push_back(std::move(U));
    }
    return a;
}

BisectionActionReport check_bisection_action(const Groupoid& G, const BisectionGroup& bis,
                                             const BisectionAction& action, double tol) {
    BisectionActionReport r;
    const HilbertField& F = action.field;
    const int D = F.total_dim();
    if (action.ops.size() != bis.elements.size()) throw StructuralError("one operator per bisection expected");
    for (const auto& U : action.ops)
        if (U.rows() != D || U.cols() != D) throw StructuralError("bisection operator has the wrong size");
    auto note = [&](double& slot, double value, const char* what, std::vector<int> witness) {
        slot = std::max(slot, value);
        if (value > tol && r.ok) {
            r.ok = false;
            r.what = what;
            r.witness = std::move(witness);
        }
    };
    for (size_t i = 0; i < bis.elements.size(); ++i) {
        const auto& b = bis.elements[i];
        const Matrix& U = action.ops[i];
        auto f = *base_map(G, b);
        const int idx = static_cast<int>(i);
        for (int m = 0; m < G.num_objects(); ++m) {
            const int x = f[sz(m)];
            // C(M)-linearity: row block m is supported on column block σ̃(m)
            for (int y = 0; y < G.num_objects(); ++y) {
                if (y == x || F.dim(m) == 0 || F.dim(y) == 0) continue;
                note(r.linearity_residual, max_abs(U.block(F.offset(m), F.offset(y), F.dim(m), F.dim(y))),
                     "action is not C(M)-linear", {idx, m, y});
            }
            Matrix blk = U.block(F.offset(m), F.offset(x), F.dim(m), F.dim(x));
            if (blk.size()) {
                if (blk.rows() != blk.cols()) note(r.unitarity_residual, 1.0, "fiber dimensions differ", {idx, m});
                else
                    note(r.unitarity_residual, unitarity_residual(blk), "action is not fiberwise unitary", {idx, m});
            }
            if (b.sigma[sz(m)] == G.unit(m) && F.dim(m) > 0) {
                Matrix row = U.middleRows(F.offset(m), F.dim(m));
                Matrix expect = Matrix::Zero(F.dim(m), D);
                expect.middleCols(F.offset(m), F.dim(m)) = Matrix::Identity(F.dim(m), F.dim(m));
                note(r.locality_residual, max_abs(row - expect), "action is not local", {idx, m});
            }
        }
    }
    const int n = static_cast<int>(bis.elements.size());
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            const Matrix& ab = action.ops[sz(bis.group(a, c))];
            double d = D ? max_abs(ab - action.ops[sz(a)] * action.ops[sz(c)]) : 0.0;
            note(r.homomorphism_residual, d, "action is not a homomorphism", {a, c});
        }
    return r;
}

Representation groupoid_rep_from_bis_rep(const Groupoid& G, const BisectionGroup& bis,
                                         const BisectionAction& action, double tol) {
    auto rep = check_bisection_action(G, bis, action, tol);
    if (rep.linearity_residual > tol) throw PreconditionError("bisection action is not C(M)-linear");
    if (rep.locality_residual > tol) throw PreconditionError("bisection action is not local");
    const HilbertField& F = action.field;
    Representation rho;
    rho.field = F;
    rho.mats.assign(sz(G.num_arrows()), Matrix());
    std::vector<int> chosen(sz(G.num_arrows()), -1);
    for (size_t i = 0; i < bis.elements.size(); ++i) {
        const auto& b = bis.elements[i];
        for (int m = 0; m < G.num_objects(); ++m) {
            int g = b.sigma[sz(m)];
            Matrix blk = action.ops[i].block(F.offset(m), F.offset(G.src(g)), F.dim(m), F.dim(G.src(g)));
            if (chosen[sz(g)] < 0) {
                chosen[sz(g)] = static_cast<int>(i);
                rho.mats[sz(g)] = blk;
            } else if (blk.size() && max_abs(blk - rho.mats[sz(g)]) > tol) {
                throw ValidationError("arrow " + std::to_string(g) + " gets different operators from bisections " +
                                      std::to_string(chosen[sz(g)]) + " and " + std::to_string(i));
            }
        }
    }
    for (int g = 0; g < G.num_arrows(); ++g)
        if (chosen[sz(g)] < 0) throw PreconditionError("arrow " + std::to_string(g) + " lies on no bisection");
    rho.unitary = rep.unitarity_residual <= tol;
    return rho;
}

BisectionRoundTrip bisection_roundtrip(const Groupoid& G, const BisectionGroup& bis, const Representation& rho,
                                       double tol) {
    BisectionRoundTrip r;
    BisectionAction a = induced_bisection_rep(G, bis, rho);
    Representation back = groupoid_rep_from_bis_rep(G, bis, a, tol);
    for (int g = 0; g < G.num_arrows(); ++g)
        if (rho(g).size()) r.rep_residual = std::max(r.rep_residual, max_abs(back(g) - rho(g)));
    BisectionAction again = induced_bisection_rep(G, bis, back);
    for (size_t i = 0; i < a.ops.size(); ++i)
        if (a.ops[i].size()) r.action_residual = std::max(r.action_residual, max_abs(again.ops[i] - a.ops[i]));
    r.ok = r.rep_residual <= tol && r.action_residual <= tol;
    return r;
}

}  // namespace groupoidrep
