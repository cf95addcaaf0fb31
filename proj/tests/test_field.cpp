#include "oracles.hpp"

#include "groupoidrep/field.hpp"

#include <doctest.h>

#include <cmath>

using namespace groupoidrep;

namespace {

Section constant_section(const HilbertField& f, std::vector<cplx> entries) {
    Section s;
    for (int m = 0; m < f.num_objects(); ++m) {
        Vector v(f.dim(m));
        for (int i = 0; i < f.dim(m); ++i) v(i) = entries[static_cast<size_t>(i)];
        s.vectors.push_back(v);
    }
    return s;
}

Vector vec(std::initializer_list<cplx> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (cplx x : xs) v(i++) = x;
    return v;
}

}  // namespace

TEST_CASE("field operations") {
    HilbertField a{{1, 2}}, b{{2, 0}}, c{{2, 3}};
    CHECK(direct_sum(a, b).dims == std::vector<int>{3, 2});
    CHECK(tensor(a, c).dims == std::vector<int>{2, 6});
    CHECK(conjugate(conjugate(a)) == a);
    CHECK(conjugate(a).conjugate);
    CHECK(a.total_dim() == 3);
    CHECK(a.offset(1) == 1);
    CHECK(b.support() == std::vector<int>{0});
    CHECK_THROWS_AS(check_field(HilbertField{{1, -1}}), StructuralError);
}

TEST_CASE("pullback") {
    HilbertField f{{1, 3, 2}};
    CHECK(pullback(f, {0, 1, 2}).dims == f.dims);
    CHECK(pullback(f, {1, 1, 1, 1}).dims == std::vector<int>{3, 3, 3, 3});
}

TEST_CASE("morphisms and sections") {
    HilbertField f{{2, 1}};
    FieldMorphism id = identity_morphism(f);
    Section s{{vec({1.0, cplx(0, 2)}), vec({3.0})}};
    Section t = apply(id, s);
    CHECK(t.vectors[0] == s.vectors[0]);
    auto ip = pointwise_inner(s, s);
    CHECK(std::abs(ip[0] - 5.0) < 1e-15);
    CHECK(std::abs(ip[1] - 9.0) < 1e-15);
    FieldMorphism bad{{Matrix::Identity(2, 2)}};
    CHECK_THROWS_AS(check_morphism(f, f, bad), StructuralError);
    CHECK_THROWS_AS(check_section(f, Section{{vec({1.0}), vec({1.0})}}), StructuralError);
}

TEST_CASE("gram trivialization") {
    SUBCASE("constant line field with section 1") {
        HilbertField f{{1, 1, 1, 1, 1}};
        auto tr = gram_trivialization(f, {constant_section(f, {1.0})}, 2);
        CHECK(tr.region == std::vector<int>{0, 1, 2, 3, 4});
    }
    SUBCASE("(2,2,1,2,2) with the second section vanishing in the middle") {
        HilbertField f{{2, 2, 1, 2, 2}};
        Section e1 = constant_section(f, {1.0, 0.0});
        Section e2 = constant_section(f, {0.0, 1.0});
        e2.vectors[2](0) = 0.0;
        // skewed copies so the frames are not already orthonormal
        Section mix = e1;
        for (int m = 0; m < 5; ++m) mix.vectors[static_cast<size_t>(m)] += 2.0 * e2.vectors[static_cast<size_t>(m)];
        auto tr = gram_trivialization(f, {e1, mix}, 0);
        CHECK(tr.region == std::vector<int>{0, 1, 3, 4});
        // det of [[1,1],[1,5]] = 4 off the middle, 0 there
        for (int m : {0, 1, 3, 4}) CHECK(std::abs(tr.gram_det[static_cast<size_t>(m)] - 4.0) < 1e-12);
        CHECK(tr.gram_det[2] < 1e-12);
        for (const auto& fr : tr.frames) CHECK(unitarity_residual(fr) < 1e-12);
    }
    SUBCASE("proportional sections do not span") {
        HilbertField f{{2}};
        Section a{{vec({1.0, 1.0})}}, b{{vec({2.0, 2.0})}};
        CHECK_THROWS_AS(gram_trivialization(f, {a, b}, 0), NumericalError);
    }
}

TEST_CASE("sampled lower semicontinuity") {
    SampledSpace line = line_space({0, 1, 2, 3, 4}, 1.0);
    CHECK(check_dim_lsc(HilbertField{{3, 3, 3, 3, 3}}, line).ok);
    CHECK(check_dim_lsc(HilbertField{{2, 2, 1, 2, 2}}, line).ok);
    LscReport bump = check_dim_lsc(HilbertField{{1, 1, 2, 1, 1}}, line);
    CHECK_FALSE(bump.ok);
    CHECK(bump.violators == std::vector<int>{2});
    REQUIRE(bump.witnesses.size() == 1);
    CHECK((bump.witnesses[0] == 1 || bump.witnesses[0] == 3));
}

TEST_CASE("metric validation") {
    SampledSpace s;
    s.dist = Eigen::MatrixXd::Zero(3, 3);
    s.dist << 0, 1, 5, 1, 0, 1, 5, 1, 0;
    CHECK_THROWS_AS(validate_space(s), ValidationError);
    CHECK_NOTHROW(validate_space(line_space({0, 0.5, 2}, 1)));
}

TEST_CASE("norm continuity") {
    SampledSpace line = line_space({0, 1, 2, 3, 4}, 1.0);
    HilbertField f{{1, 1, 1, 1, 1}};
    auto lipschitz = [](double d) { return d; };
    SUBCASE("constant section, zero modulus") {
        auto r = check_norm_continuity(f, line, constant_section(f, {cplx(0, 1)}), [](double) { return 0.0; });
        CHECK(r.ok);
    }
    SUBCASE("position on the line") {
        Section s;
        for (int m = 0; m < 5; ++m) s.vectors.push_back(vec({static_cast<double>(m)}));
        CHECK(check_norm_continuity(f, line, s, lipschitz).ok);
    }
    SUBCASE("a step fails at the step") {
        Section s;
        for (int m = 0; m < 5; ++m) s.vectors.push_back(vec({m < 3 ? 0.0 : 5.0}));
        auto r = check_norm_continuity(f, line, s, lipschitz);
        CHECK_FALSE(r.ok);
        REQUIRE_FALSE(r.violations.empty());
        auto [a, b] = r.violations[0];
        CHECK(std::min(a, b) == 2);
        CHECK(std::max(a, b) == 3);
        CHECK(std::abs(r.worst_excess - 4.0) < 1e-12);
    }
}

TEST_CASE("basic neighborhoods are strict") {
    HilbertField f{{1, 1, 1}};
    Section xi = constant_section(f, {1.0});
    std::vector<int> region{0, 1};
    CHECK(neighborhood_member(f, 0, vec({1.0}), 0.1, xi, region));
    CHECK_FALSE(neighborhood_member(f, 2, vec({1.0}), 0.1, xi, region));
    CHECK_FALSE(neighborhood_member(f, 1, vec({1.5}), 0.5, xi, region));
    CHECK(neighborhood_member(f, 1, vec({1.5}), 0.5000001, xi, region));
}
