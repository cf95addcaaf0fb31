#include "fixtures.hpp"
#include "oracles.hpp"

#include "groupoidrep/convolution.hpp"
#include "groupoidrep/samples.hpp"

#include <doctest.h>

using namespace groupoidrep;

TEST_CASE("convolution of deltas") {
    SUBCASE("Z/2") {
        Groupoid g = group_as_groupoid(cyclic_group(2));
        HaarSystem w = counting_haar(g);
        CHECK(max_abs_diff(convolve(delta(g, 1), delta(g, 1), g, w), delta(g, 0)) == 0.0);
    }
    SUBCASE("pair(3)") {
        Groupoid g = make_pair(3);
        HaarSystem w = counting_haar(g);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 3; ++c)
                    CHECK(max_abs_diff(convolve(delta(g, a * 3 + b), delta(g, b * 3 + c), g, w), delta(g, a * 3 + c)) == 0.0);
        CHECK(max_abs_diff(convolve(delta(g, 1), delta(g, 1), g, w), zero_element(g)) == 0.0);
    }
}

TEST_CASE("convolution against the brute-force sum") {
    Prng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Groupoid g = random_action_groupoid(rng);
        // one weight per orbit: the class on which the category laws hold
        auto orb = orbit_index(g);
        std::vector<double> per_orbit(orbits(g).size());
        for (auto& v : per_orbit) v = 0.5 + rng.uniform();
        std::vector<double> c;
        for (int m = 0; m < g.num_objects(); ++m) c.push_back(per_orbit[static_cast<size_t>(orb[static_cast<size_t>(m)])]);
        HaarSystem w = source_haar(g, c);
        CHECK(is_orbit_constant(g, w));
        ConvElement f = random_element(g, rng), f2 = random_element(g, rng), f3 = random_element(g, rng);
        CHECK(max_abs_diff(convolve(f, f2, g, w), oracle::convolve(f, f2, g, w)) < 1e-12);
        ConvElement left = convolve(convolve(f, f2, g, w), f3, g, w);
        ConvElement right = convolve(f, convolve(f2, f3, g, w), g, w);
        CHECK(max_abs_diff(left, right) < 1e-10);
    }
}

TEST_CASE("weights varying along an orbit break associativity") {
    Groupoid g = make_pair(2);
    HaarSystem w = source_haar(g, {1.0, 3.0});
    CHECK(validate_haar(g, w).ok);
    // δ_(0,1) * δ_(1,0) * δ_(0,1): 1 * 3 one way, 3 * 3 the other
    ConvElement a = delta(g, 1), b = delta(g, 2);
    ConvElement left = convolve(convolve(a, b, g, w), a, g, w);
    ConvElement right = convolve(a, convolve(b, a, g, w), g, w);
    CHECK(max_abs_diff(left, oracle::convolve(oracle::convolve(a, b, g, w), a, g, w)) == 0.0);
    CHECK(max_abs_diff(left, right) > 1.0);
}

TEST_CASE("involution") {
    Prng rng(8);
    Groupoid g = fixture::gauge(2, symmetric_group(3)).gauge;
    HaarSystem w = counting_haar(g);
    for (int a = 0; a < g.num_arrows(); ++a) CHECK(max_abs_diff(involution(delta(g, a), g), delta(g, g.inv(a))) == 0.0);
    for (int trial = 0; trial < 5; ++trial) {
        ConvElement f = random_element(g, rng), f2 = random_element(g, rng);
        CHECK(max_abs_diff(involution(involution(f, g), g), f) == 0.0);
        ConvElement lhs = involution(convolve(f, f2, g, w), g);
        ConvElement rhs = convolve(involution(f2, g), involution(f, g), g, w);
        CHECK(max_abs_diff(lhs, rhs) < 1e-10);
    }
}

TEST_CASE("fiberwise L1 norms") {
    Prng rng(9);
    Groupoid g = make_pair(3);
    HaarSystem w = source_haar(g, {1.0, 2.0, 3.0});
    for (int a = 0; a < g.num_arrows(); ++a) {
        auto n = l1_norm(delta(g, a), g, w);
        CHECK(n.at(g.tgt(a), g.src(a)) == cplx(w.weights[static_cast<size_t>(a)]));
    }
    CHECK(l1_norm(zero_element(g), g, w).sup_norm() == 0.0);
    for (int trial = 0; trial < 20; ++trial) {
        Groupoid h = random_action_groupoid(rng);
        HaarSystem wh = counting_haar(h);
        CHECK(submultiplicativity_check(random_element(h, rng), random_element(h, rng), h, wh).ok);
    }
}

TEST_CASE("integrated representations") {
    SUBCASE("units and deltas") {
        Groupoid g = make_pair(2);
        HaarSystem w = counting_haar(g);
        Representation reg = left_regular(g, w);
        CategoryRep L = integrate_rep(g, w, reg);
        for (int m = 0; m < 2; ++m) {
            auto op = apply(g, L, delta(g, g.unit(m)));
            CHECK((op.block(m, m) - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
        }
        for (int a = 0; a < g.num_arrows(); ++a)
            CHECK((apply(g, L, delta(g, a)).block(g.tgt(a), g.src(a)) - reg(a)).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("homomorphism and star laws on random elements") {
        Prng rng(12);
        for (int trial = 0; trial < 10; ++trial) {
            Groupoid g = random_action_groupoid(rng);
            HaarSystem w = counting_haar(g);
            PWSet pw = compute_pw_set(g, w, 1);
            CategoryRep L = integrate_rep(g, w, random_unitary_rep(g, pw, rng));
            CHECK(check_category_rep(g, w, L).ok);
            auto [hom, star] = category_residuals(g, w, L, random_element(g, rng), random_element(g, rng));
            CHECK(hom < 1e-10);
            CHECK(star < 1e-10);
            CHECK(norm_bound_excess(g, w, L, random_element(g, rng)) < 1e-10);
        }
    }
    SUBCASE("non-unitary input is refused") {
        Groupoid g = group_as_groupoid(cyclic_group(2));
        Representation r = fixture::group_rep({Matrix::Identity(2, 2), (Matrix(2, 2) << 1, 1, 0, -1).finished()});
        CHECK_THROWS_AS(integrate_rep(g, counting_haar(g), r), PreconditionError);
    }
}

TEST_CASE("extraction") {
    SUBCASE("trivial representation comes back") {
        Groupoid g = make_pair(3);
        HaarSystem w = counting_haar(g);
        Representation t = extract_rep(g, w, integrate_rep(g, w, trivial_rep(g)));
        CHECK(oracle::max_diff(t, trivial_rep(g)) < 1e-15);
    }
    SUBCASE("regular(Z/3) round trip") {
        Groupoid g = group_as_groupoid(cyclic_group(3));
        HaarSystem w = counting_haar(g);
        auto r = bijection_roundtrip(g, w, left_regular(g, w));
        CHECK(r.ok);
        CHECK(r.extract_residual == 0.0);
        CHECK(r.integrate_residual == 0.0);
    }
    SUBCASE("regular(S3) and random reps on gauge(2, Z/2)") {
        Groupoid s3 = group_as_groupoid(symmetric_group(3));
        HaarSystem ws = counting_haar(s3);
        CHECK(bijection_roundtrip(s3, ws, left_regular(s3, ws)).extract_residual < 1e-12);
        Prng rng(13);
        auto pb = fixture::gauge(2, cyclic_group(2));
        HaarSystem w = counting_haar(pb.gauge);
        PWSet pw = compute_pw_set(pb.gauge, w);
        for (int trial = 0; trial < 5; ++trial) {
            Representation r = unitarize(pb.gauge, w, random_skewed_rep(pb.gauge, pw, rng)).rep;
            auto rt = bijection_roundtrip(pb.gauge, w, r);
            CHECK(rt.ok);
            CHECK(rt.extract_residual < 1e-10);
            CHECK(rt.homomorphism_residual < 1e-10);
        }
    }
    SUBCASE("a zero fiber is degenerate") {
        Groupoid g = make_pair(2);
        HaarSystem w = counting_haar(g);
        CategoryRep L = integrate_rep(g, w, left_regular(g, w));
        for (int a : g.t_fiber(1)) L.atoms[static_cast<size_t>(a)].setZero();
        for (int a : g.s_fiber(1)) L.atoms[static_cast<size_t>(a)].setZero();
        CHECK_FALSE(check_category_rep(g, w, L).ok);
        CHECK_THROWS_AS(extract_rep(g, w, L), PreconditionError);
    }
    SUBCASE("weights off the orbit-constant class break the laws") {
        Groupoid g = make_pair(2);
        HaarSystem w = source_haar(g, {1.0, 3.0});
        auto rt = bijection_roundtrip(g, w, left_regular(g, w));
        CHECK_FALSE(rt.orbit_constant);
    }
}
