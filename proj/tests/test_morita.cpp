#include "fixtures.hpp"
#include "oracles.hpp"

#include "groupoidrep/peter_weyl.hpp"
#include "groupoidrep/samples.hpp"

#include <doctest.h>

using namespace groupoidrep;

TEST_CASE("bibundle validation") {
    SUBCASE("unit bibundles are Morita equivalences") {
        Prng rng(51);
        for (int trial = 0; trial < 5; ++trial) {
            Groupoid g = random_action_groupoid(rng);
            auto r = validate_bibundle(g, g, unit_bibundle(g));
            CHECK(r.ok);
            CHECK(r.morita);
        }
    }
    SUBCASE("principal bundles") {
        for (const auto& h : {cyclic_group(2), cyclic_group(3), symmetric_group(3)}) {
            auto pb = fixture::gauge(2, h);
            auto r = validate_bibundle(pb.gauge, pb.group, pb.bibundle);
            CHECK(r.ok);
            CHECK(r.left_principal);
            CHECK(r.right_principal);
            CHECK(r.morita);
        }
    }
    SUBCASE("non-free left action") {
        Groupoid z2 = group_as_groupoid(cyclic_group(2));
        Groupoid pt = make_pair(1);
        Bibundle b = Bibundle::blank(1, 2, 1);
        b.left_anchor = {0};
        b.right_anchor = {0};
        b.left = {0, 0};
        b.right = {0};
        auto r = validate_bibundle(z2, pt, b);
        CHECK(r.ok);
        CHECK_FALSE(r.left_free);
        CHECK_FALSE(r.left_principal);
        CHECK_FALSE(r.morita);
        CHECK_THROWS_AS(induce_rep(z2, pt, b, trivial_rep(z2)), PreconditionError);
    }
    SUBCASE("broken commutation") {
        auto pb = fixture::gauge(1, cyclic_group(3));
        Bibundle b = pb.bibundle;
        std::swap(b.right[1], b.right[2]);
        CHECK_FALSE(validate_bibundle(pb.gauge, pb.group, b).ok);
    }
}

TEST_CASE("induction") {
    SUBCASE("along the unit bibundle") {
        Prng rng(52);
        for (int trial = 0; trial < 5; ++trial) {
            Groupoid g = random_action_groupoid(rng);
            PWSet pw = compute_pw_set(g, counting_haar(g), 1);
            Representation r = random_unitary_rep(g, pw, rng);
            Representation t = induce_rep(g, g, unit_bibundle(g), r);
            CHECK(validate_rep(g, t).ok);
            CHECK(is_isomorphic(g, r, t).isomorphic);
        }
    }
    SUBCASE("gauge(2, Z/2) to Z/2 and back") {
        auto pb = fixture::gauge(2, cyclic_group(2));
        Bibundle inv = invert_bibundle(pb.gauge, pb.group, pb.bibundle);
        Representation down = induce_rep(pb.gauge, pb.group, pb.bibundle, trivial_rep(pb.gauge));
        CHECK(down.field.dims == std::vector<int>{1});
        CHECK(oracle::max_diff(down, trivial_rep(pb.group)) < 1e-12);

        Representation sign = fixture::cyclic_character(2, 1);
        Representation line = induce_rep(pb.group, pb.gauge, inv, sign);
        CHECK(line.field.dims == std::vector<int>{1, 1});
        CHECK(validate_rep(pb.gauge, line).ok);
        CHECK_FALSE(is_isomorphic(pb.gauge, line, trivial_rep(pb.gauge)).isomorphic);
        // its isotropy restriction at either object is the sign character
        for (int m = 0; m < 2; ++m) {
            Representation res = restrict_isotropy(pb.gauge, line, m);
            Groupoid iso = isotropy_group(pb.gauge, m).groupoid;
            CHECK(is_isomorphic(iso, res, fixture::cyclic_character(2, 1)).isomorphic);
        }
        Representation back = induce_rep(pb.gauge, pb.group, pb.bibundle, line);
        CHECK(is_isomorphic(pb.group, back, sign).isomorphic);
    }
    SUBCASE("induced fibers are the pullback along the left anchor") {
        auto pb = fixture::gauge(3, symmetric_group(3));
        Bibundle inv = invert_bibundle(pb.gauge, pb.group, pb.bibundle);
        Groupoid s3 = pb.group;
        Representation reg = left_regular(s3, counting_haar(s3));
        Representation up = induce_rep(s3, pb.gauge, inv, reg);
        std::vector<int> j(3);
        for (int y = 0; y < 3; ++y) {
            int least = -1;
            for (int n = 0; n < inv.size; ++n)
                if (inv.right_anchor[static_cast<size_t>(n)] == y) {
                    least = n;
                    break;
                }
            j[static_cast<size_t>(y)] = inv.left_anchor[static_cast<size_t>(least)];
        }
        CHECK(up.field.dims == pullback(reg.field, j).dims);
    }
}

TEST_CASE("composition of bibundles") {
    for (const auto& h : {cyclic_group(2), symmetric_group(3)}) {
        auto pb = fixture::gauge(2, h);
        const Groupoid& g = pb.gauge;
        Bibundle inv = invert_bibundle(g, pb.group, pb.bibundle);
        Bibundle loop = compose_bibundles(g, pb.group, g, pb.bibundle, inv);
        CHECK(validate_bibundle(g, g, loop).morita);
        CHECK(find_bibundle_isomorphism(g, g, loop, unit_bibundle(g)).has_value());

        Bibundle left_unit = compose_bibundles(g, g, pb.group, unit_bibundle(g), pb.bibundle);
        CHECK(find_bibundle_isomorphism(g, pb.group, left_unit, pb.bibundle).has_value());

        Bibundle other = compose_bibundles(pb.group, g, pb.group, inv, pb.bibundle);
        CHECK(find_bibundle_isomorphism(pb.group, pb.group, other, unit_bibundle(pb.group)).has_value());
    }
    SUBCASE("isomorphism search says no when sizes differ") {
        auto pb = fixture::gauge(2, cyclic_group(2));
        Bibundle u = unit_bibundle(pb.gauge);
        Bibundle loop = compose_bibundles(pb.gauge, pb.gauge, pb.gauge, u, u);
        CHECK(find_bibundle_isomorphism(pb.gauge, pb.gauge, loop, u).has_value());
        Groupoid p2 = make_pair(2);
        Bibundle pu = unit_bibundle(p2);
        CHECK(find_bibundle_isomorphism(p2, p2, pu, pu).has_value());
    }
}

TEST_CASE("equivalence checks") {
    SUBCASE("gauge(2, Z/2) with PW-set and regular representation") {
        auto pb = fixture::gauge(2, cyclic_group(2));
        HaarSystem w = counting_haar(pb.gauge);
        auto samples = compute_pw_set(pb.gauge, w).reps();
        samples.push_back(left_regular(pb.gauge, w));
        auto r = equivalence_check(pb.gauge, pb.group, pb.bibundle, samples, 3);
        CHECK(r.ok);
        for (bool b : r.round_trip) CHECK(b);
        CHECK(r.hom_g == r.hom_h);
        CHECK(r.irreducible_kept[0]);
        CHECK(r.irreducible_kept[1]);
    }
    SUBCASE("pair(3) to a point") {
        Groupoid p3 = make_pair(3);
        Groupoid pt = make_pair(1);
        Bibundle b = Bibundle::blank(3, 9, 1);
        b.left_anchor = {0, 1, 2};
        b.right_anchor = {0, 0, 0};
        for (int a = 0; a < 9; ++a)
            for (int n = 0; n < 3; ++n)
                if (p3.src(a) == n) b.left[static_cast<size_t>(a * 3 + n)] = p3.tgt(a);
        b.right = {0, 1, 2};
        CHECK(validate_bibundle(p3, pt, b).morita);
        auto r = equivalence_check(p3, pt, b, {trivial_rep(p3)});
        CHECK(r.ok);
    }
    SUBCASE("regular representation multiplicities survive") {
        auto pb = fixture::gauge(2, symmetric_group(3));
        HaarSystem w = counting_haar(pb.gauge);
        Representation reg = left_regular(pb.gauge, w);
        Representation down = induce_rep(pb.gauge, pb.group, pb.bibundle, reg);
        auto a = decompose(pb.gauge, reg, 1);
        auto b = decompose(pb.group, down, 1);
        CHECK(a.size() == b.size());
    }
    SUBCASE("non-Morita bibundles are refused") {
        Groupoid z2 = group_as_groupoid(cyclic_group(2));
        Groupoid pt = make_pair(1);
        Bibundle b = Bibundle::blank(1, 2, 1);
        b.left_anchor = {0};
        b.right_anchor = {0};
        b.left = {0, 0};
        b.right = {0};
        CHECK_THROWS_AS(equivalence_check(z2, pt, b, {trivial_rep(z2)}), PreconditionError);
    }
}
