#include "fixtures.hpp"
#include "oracles.hpp"

#include "groupoidrep/bisections.hpp"
#include "groupoidrep/peter_weyl.hpp"
#include "groupoidrep/samples.hpp"

#include <doctest.h>

using namespace groupoidrep;

TEST_CASE("enumeration agrees with the full product search") {
    Prng rng(61);
    for (int trial = 0; trial < 15; ++trial) {
        Groupoid g = random_action_groupoid(rng, 4);
        BisectionGroup bis = enumerate_bisections(g);
        auto brute = oracle::bisections(g);
        REQUIRE(bis.elements.size() == brute.size());
        for (size_t i = 0; i < brute.size(); ++i) CHECK(bis.elements[i].sigma == brute[i]);
        CHECK(bis.axioms.ok);
        CHECK(validate_group(bis.group).ok);
    }
}

TEST_CASE("Bis(pair(n)) is the symmetric group") {
    for (int n = 1; n <= 4; ++n) {
        Groupoid g = make_pair(n);
        BisectionGroup bis = enumerate_bisections(g);
        CHECK(find_isomorphism(bis.group, symmetric_group(n)).has_value());
        // the product is composition of the base permutations
        for (size_t a = 0; a < bis.elements.size(); ++a)
            for (size_t b = 0; b < bis.elements.size(); ++b) {
                auto pa = *base_map(g, bis.elements[a]);
                auto pb = *base_map(g, bis.elements[b]);
                auto pab = *base_map(g, bis.elements[static_cast<size_t>(bis.group(static_cast<int>(a), static_cast<int>(b)))]);
                for (int m = 0; m < n; ++m) CHECK(pab[static_cast<size_t>(m)] == pb[static_cast<size_t>(pa[static_cast<size_t>(m)])]);
            }
    }
}

TEST_CASE("Bis of a constant bundle is the pointwise product") {
    FiniteGroup z3 = cyclic_group(3);
    Groupoid g = fixture::bundle(2, z3);
    BisectionGroup bis = enumerate_bisections(g);
    CHECK(bis.elements.size() == 9);
    CHECK(find_isomorphism(bis.group, direct_product(z3, z3)).has_value());

    FiniteGroup s3 = symmetric_group(3);
    Groupoid one = group_as_groupoid(s3);
    CHECK(find_isomorphism(enumerate_bisections(one).group, s3).has_value());
}

TEST_CASE("bisection arithmetic") {
    Groupoid g = fixture::gauge(2, cyclic_group(2)).gauge;
    BisectionGroup bis = enumerate_bisections(g);
    Bisection e = identity_bisection(g);
    for (const auto& s : bis.elements) {
        CHECK(multiply(g, s, invert(g, s)) == e);
        CHECK(multiply(g, e, s) == s);
    }
    CHECK_FALSE(base_map(g, Bisection{{g.unit(0), g.unit(0)}}).has_value());
}

TEST_CASE("cutoff") {
    Groupoid g = fixture::bundle(5, cyclic_group(8));
    CHECK_THROWS_AS(enumerate_bisections(g, 1000.0), PreconditionError);
}

TEST_CASE("bisectional groupoids") {
    CHECK(is_bisectional(make_pair(4)).bisectional);
    CHECK(is_bisectional(fixture::gauge(3, cyclic_group(2)).gauge).bisectional);
    Groupoid mixed = make_bundle_of_groups({cyclic_group(1), cyclic_group(3)});
    auto r = is_bisectional(mixed);
    CHECK(r.bisectional);
    for (int a = 0; a < mixed.num_arrows(); ++a) {
        const auto& ext = r.extension[static_cast<size_t>(a)];
        CHECK(ext.sigma[static_cast<size_t>(mixed.tgt(a))] == a);
        CHECK(base_map(mixed, ext).has_value());
    }
    SUBCASE("orbits of different sizes") {
        FiniteGroup z2 = cyclic_group(2);
        Groupoid act = make_action(z2, 3, {{0, 1, 2}, {1, 0, 2}});
        CHECK(is_bisectional(act).bisectional);
    }
}

TEST_CASE("induced action") {
    SUBCASE("identity acts as the identity") {
        Groupoid g = make_pair(3);
        BisectionGroup bis = enumerate_bisections(g);
        BisectionAction act = induced_bisection_rep(g, bis, trivial_rep(g));
        Matrix op = act.ops[static_cast<size_t>(bis.index_of(identity_bisection(g)))];
        CHECK((op - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("pair(2), trivial rep: the swap exchanges fiber values") {
        Groupoid g = make_pair(2);
        BisectionGroup bis = enumerate_bisections(g);
        BisectionAction act = induced_bisection_rep(g, bis, trivial_rep(g));
        Bisection swap{{0 * 2 + 1, 1 * 2 + 0}};
        Matrix op = act.ops[static_cast<size_t>(bis.index_of(swap))];
        Vector xi(2);
        xi << 3.0, 7.0;
        Vector out = op * xi;
        CHECK(out(0) == cplx(7.0));
        CHECK(out(1) == cplx(3.0));
        CHECK(check_bisection_action(g, bis, act).ok);
    }
    SUBCASE("one-object group: the representation itself") {
        FiniteGroup s3 = symmetric_group(3);
        Groupoid g = group_as_groupoid(s3);
        BisectionGroup bis = enumerate_bisections(g);
        Representation reg = left_regular(g, counting_haar(g));
        BisectionAction act = induced_bisection_rep(g, bis, reg);
        for (size_t i = 0; i < bis.elements.size(); ++i)
            CHECK((act.ops[i] - reg(bis.elements[i].sigma[0])).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("round trips") {
    SUBCASE("pair(2)") {
        Groupoid g = make_pair(2);
        BisectionGroup bis = enumerate_bisections(g);
        for (const Representation& r : {trivial_rep(g), left_regular(g, counting_haar(g))}) {
            auto rt = bisection_roundtrip(g, bis, r);
            CHECK(rt.ok);
            CHECK(rt.rep_residual == 0.0);
            CHECK(rt.action_residual == 0.0);
        }
    }
    SUBCASE("Z/2 bundle over 2 points") {
        Groupoid g = fixture::bundle(2, cyclic_group(2));
        BisectionGroup bis = enumerate_bisections(g);
        auto rt = bisection_roundtrip(g, bis, left_regular(g, counting_haar(g)));
        CHECK(rt.ok);
        CHECK(rt.rep_residual == 0.0);
    }
    SUBCASE("random unitary representations") {
        Prng rng(62);
        for (int trial = 0; trial < 8; ++trial) {
            Groupoid g = random_action_groupoid(rng, 4);
            BisectionGroup bis = enumerate_bisections(g);
            PWSet pw = compute_pw_set(g, counting_haar(g), 1);
            auto rt = bisection_roundtrip(g, bis, random_unitary_rep(g, pw, rng));
            CHECK(rt.ok);
            CHECK(rt.rep_residual < 1e-12);
        }
    }
}

TEST_CASE("non-local actions are rejected") {
    // Z/2 bundle over 2 points; Bis = Z/2 x Z/2. The character
    // (a, b) -> (-1)^(a+b) acting by a scalar on both fibers is a unitary
    // linear action, but the bisection (flip, 1) is the unit at object 1
    // and still multiplies the fiber there by -1.
    FiniteGroup z2 = cyclic_group(2);
    Groupoid g = fixture::bundle(2, z2);
    BisectionGroup bis = enumerate_bisections(g);
    BisectionAction act;
    act.field.dims = {1, 1};
    for (const auto& s : bis.elements) {
        int flips = 0;
        for (int m = 0; m < 2; ++m) flips += s.sigma[static_cast<size_t>(m)] != g.unit(m);
        act.ops.push_back(Matrix::Identity(2, 2) * (flips % 2 ? -1.0 : 1.0));
    }
    auto r = check_bisection_action(g, bis, act);
    CHECK_FALSE(r.ok);
    CHECK(r.locality_residual > 1.0);
    CHECK(r.homomorphism_residual == 0.0);
    CHECK(r.linearity_residual == 0.0);
    CHECK_THROWS_AS(groupoid_rep_from_bis_rep(g, bis, act), PreconditionError);

    SUBCASE("a non-linear action on pair(2) is rejected too") {
        Groupoid p2 = make_pair(2);
        BisectionGroup b2 = enumerate_bisections(p2);
        BisectionAction a2;
        a2.field.dims = {1, 1};
        Matrix h(2, 2);
        h << 1, 1, 1, -1;
        h /= std::sqrt(2.0);
        for (const auto& s : b2.elements) a2.ops.push_back(s == identity_bisection(p2) ? Matrix(Matrix::Identity(2, 2)) : h);
        CHECK_FALSE(check_bisection_action(p2, b2, a2).ok);
        CHECK_THROWS_AS(groupoid_rep_from_bis_rep(p2, b2, a2), PreconditionError);
    }
}
