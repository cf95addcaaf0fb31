#include "fixtures.hpp"
#include "oracles.hpp"

#include "groupoidrep/samples.hpp"

#include <doctest.h>

#include <algorithm>

using namespace groupoidrep;

namespace {

Matrix m22(cplx a, cplx b, cplx c, cplx d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

std::vector<int> summand_dims(const std::vector<Summand>& parts) {
    std::vector<int> d;
    for (const auto& s : parts) d.push_back(s.rep.field.total_dim());
    std::sort(d.begin(), d.end());
    return d;
}

/// Embeddings isometric, intertwining, and jointly complete.
void check_decomposition(const Groupoid& G, const Representation& rho, const std::vector<Summand>& parts) {
    for (int m = 0; m < G.num_objects(); ++m) {
        Matrix proj = Matrix::Zero(rho.dim(m), rho.dim(m));
        for (const auto& s : parts) {
            const Matrix& e = s.embedding.mats[static_cast<size_t>(m)];
            if (e.cols()) CHECK(unitarity_residual(e) < 1e-9);
            proj += e * e.adjoint();
        }
        if (rho.dim(m)) CHECK((proj - Matrix::Identity(rho.dim(m), rho.dim(m))).cwiseAbs().maxCoeff() < 1e-9);
    }
    for (const auto& s : parts) {
        CHECK(intertwining_residual(G, s.rep, rho, s.embedding) < 1e-9);
        CHECK(is_M_irreducible(G, s.rep));
        int supported_orbits = 0;
        auto orb = orbits(G);
        for (const auto& o : orb) {
            bool any = false;
            for (int m : o) any = any || s.rep.dim(m) > 0;
            supported_orbits += any;
        }
        CHECK(supported_orbits == 1);
    }
}

}  // namespace

TEST_CASE("validate_rep") {
    Groupoid p3 = make_pair(3);
    CHECK(validate_rep(p3, trivial_rep(p3)).ok);
    for (const auto& m : trivial_rep(p3).mats) CHECK(m(0, 0) == cplx(1.0));

    SUBCASE("a broken product is reported") {
        Groupoid z3 = group_as_groupoid(cyclic_group(3));
        Representation r = fixture::cyclic_character(3, 1);
        r.mats[2] = r.mats[1];
        Report rep = validate_rep(z3, r);
        CHECK_FALSE(rep.ok);
        CHECK_FALSE(rep.witness.empty());
    }
    SUBCASE("anti-diagonal scaled involution: a representation, not unitary") {
        Groupoid z2 = group_as_groupoid(cyclic_group(2));
        Representation r = fixture::group_rep({Matrix::Identity(2, 2), m22(0, 3.0, 1.0 / 3.0, 0)});
        CHECK_FALSE(r.unitary);
        CHECK(validate_rep(z2, r).ok);
        r.unitary = true;
        CHECK_FALSE(validate_rep(z2, r).ok);
    }
    SUBCASE("shape mismatch") {
        Representation r = trivial_rep(p3);
        r.mats[4] = Matrix::Identity(2, 2);
        CHECK_THROWS_AS(check_shapes(p3, r), StructuralError);
    }
}

TEST_CASE("regular representations") {
    SUBCASE("Z/2 splits into trivial and sign") {
        Groupoid z2 = group_as_groupoid(cyclic_group(2));
        Representation reg = left_regular(z2, counting_haar(z2));
        CHECK(validate_rep(z2, reg).ok);
        auto parts = decompose(z2, reg, 1);
        REQUIRE(parts.size() == 2);
        std::vector<double> flips;
        for (const auto& s : parts) flips.push_back(s.rep(1)(0, 0).real());
        std::sort(flips.begin(), flips.end());
        CHECK(flips[0] == doctest::Approx(-1.0));
        CHECK(flips[1] == doctest::Approx(1.0));
    }
    SUBCASE("pair(2) acts by permutations") {
        Groupoid p2 = make_pair(2);
        Representation reg = left_regular(p2, counting_haar(p2));
        CHECK(reg.field.dims == std::vector<int>{2, 2});
        CHECK(validate_rep(p2, reg).ok);
        for (const auto& m : reg.mats) {
            CHECK((m.array() == cplx(0.0) || m.array() == cplx(1.0)).all());
            CHECK(unitarity_residual(m) < 1e-15);
        }
    }
    SUBCASE("fiber dimensions are t-fiber sizes; unitary under any invariant weights") {
        Prng rng(3);
        for (int trial = 0; trial < 10; ++trial) {
            Groupoid g = random_action_groupoid(rng);
            std::vector<double> c;
            for (int m = 0; m < g.num_objects(); ++m) c.push_back(0.5 + rng.uniform());
            HaarSystem w = source_haar(g, c);
            for (const Representation& reg : {left_regular(g, w), right_regular(g, w)}) {
                CHECK(reg.unitary);
                CHECK(validate_rep(g, reg).ok);
            }
            Representation l = left_regular(g, w);
            for (int m = 0; m < g.num_objects(); ++m) CHECK(l.dim(m) == static_cast<int>(g.t_fiber(m).size()));
        }
    }
}

TEST_CASE("conjugation representation") {
    SUBCASE("abelian bundle: trivial action") {
        Groupoid g = fixture::bundle(3, cyclic_group(4));
        Representation c = conjugation_rep(g, counting_haar(g));
        for (const auto& m : c.mats) CHECK((m - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-15);
    }
    SUBCASE("S3: character counts centralizers") {
        FiniteGroup s3 = symmetric_group(3);
        Groupoid g = group_as_groupoid(s3);
        Representation c = conjugation_rep(g, counting_haar(g));
        CHECK(c.field.dims == std::vector<int>{6});
        CHECK(validate_rep(g, c).ok);
        for (int a = 0; a < 6; ++a) {
            int fixed = 0;
            for (int x = 0; x < 6; ++x) fixed += s3(s3(s3.inv[static_cast<size_t>(a)], x), a) == x;
            CHECK(std::abs(c(a).trace() - cplx(fixed)) < 1e-12);
        }
    }
    SUBCASE("gauge(2, Z/2) has 2-dimensional fibers") {
        auto pb = fixture::gauge(2, cyclic_group(2));
        Representation c = conjugation_rep(pb.gauge, counting_haar(pb.gauge));
        CHECK(c.field.dims == std::vector<int>{2, 2});
        CHECK(validate_rep(pb.gauge, c).ok);
    }
}

TEST_CASE("restriction to isotropy") {
    Groupoid p3 = make_pair(3);
    Representation t = restrict_isotropy(p3, trivial_rep(p3), 1);
    CHECK(t.mats.size() == 1);
    CHECK(t(0)(0, 0) == cplx(1.0));

    Groupoid z3 = group_as_groupoid(cyclic_group(3));
    Representation reg = left_regular(z3, counting_haar(z3));
    CHECK(oracle::max_diff(restrict_isotropy(z3, reg, 0), reg) == 0.0);
}

TEST_CASE("direct sums, tensors, conjugates") {
    Groupoid p2 = make_pair(2);
    Representation tt = dsum_rep(trivial_rep(p2), trivial_rep(p2));
    CHECK(tt.field.dims == std::vector<int>{2, 2});
    for (const auto& m : tt.mats) CHECK(m == Matrix::Identity(2, 2));

    Groupoid z2 = group_as_groupoid(cyclic_group(2));
    Representation sign = fixture::cyclic_character(2, 1);
    CHECK(is_isomorphic(z2, tensor_rep(sign, sign), trivial_rep(z2)).isomorphic);

    Groupoid z3 = group_as_groupoid(cyclic_group(3));
    Representation chi = fixture::cyclic_character(3, 1);
    Representation c = conj_rep(chi);
    CHECK(c.unitary);
    CHECK(validate_rep(z3, c).ok);
    CHECK(oracle::max_diff(c, fixture::cyclic_character(3, 2)) < 1e-12);
}

TEST_CASE("matrix coefficients") {
    Groupoid p3 = make_pair(3);
    Section one;
    for (int m = 0; m < 3; ++m) one.vectors.push_back(Vector::Ones(1));
    for (cplx v : matrix_coefficient(p3, trivial_rep(p3), one, one)) CHECK(v == cplx(1.0));

    Groupoid z2 = group_as_groupoid(cyclic_group(2));
    Section e{{Vector::Ones(1)}};
    auto sc = matrix_coefficient(z2, fixture::cyclic_character(2, 1), e, e);
    CHECK(std::abs(sc[0] - 1.0) < 1e-15);
    CHECK(std::abs(sc[1] + 1.0) < 1e-15);

    Groupoid z3 = group_as_groupoid(cyclic_group(3));
    Representation reg = left_regular(z3, counting_haar(z3));
    FiniteGroup h = cyclic_group(3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            Section xi{{Vector::Unit(3, a)}}, eta{{Vector::Unit(3, b)}};
            auto f = matrix_coefficient(z3, reg, xi, eta);
            for (int g = 0; g < 3; ++g) CHECK(f[static_cast<size_t>(g)] == cplx(h(g, b) == a ? 1.0 : 0.0));
        }
}

TEST_CASE("L2 pairing") {
    Groupoid p2 = make_pair(2);
    HaarSystem w = counting_haar(p2);
    auto delta = [&](int g) {
        std::vector<cplx> f(4, 0.0);
        f[static_cast<size_t>(g)] = 1.0;
        return f;
    };
    RelationFunction r = l2_pairing(p2, w, delta(1), delta(1));
    CHECK(r.at(p2.tgt(1), p2.src(1)) == cplx(1.0));
    CHECK(r.at(p2.src(1), p2.tgt(1)) == cplx(0.0));
    CHECK(l2_pairing(p2, w, delta(1), delta(2)).sup_norm() == 0.0);

    Groupoid z3 = group_as_groupoid(cyclic_group(3));
    HaarSystem wz = counting_haar(z3);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            std::vector<cplx> fj, fk;
            for (int g = 0; g < 3; ++g) {
                fj.push_back(fixture::cyclic_character(3, j)(g)(0, 0));
                fk.push_back(fixture::cyclic_character(3, k)(g)(0, 0));
            }
            cplx v = l2_pairing(z3, wz, fj, fk).at(0, 0);
            CHECK(std::abs(v - cplx(j == k ? 3.0 : 0.0)) < 1e-12);
        }
}

TEST_CASE("intertwiners") {
    for (int n = 1; n <= 4; ++n) {
        Groupoid p = make_pair(n);
        CHECK(intertwiner_basis(p, trivial_rep(p), trivial_rep(p)).size() == 1);
    }
    Groupoid z2 = group_as_groupoid(cyclic_group(2));
    CHECK(intertwiner_basis(z2, trivial_rep(z2), fixture::cyclic_character(2, 1)).empty());
    Representation tt = dsum_rep(trivial_rep(z2), trivial_rep(z2));
    auto end = intertwiner_basis(z2, tt, tt);
    CHECK(end.size() == 4);
    for (const auto& phi : end) CHECK(intertwining_residual(z2, tt, tt, phi) < 1e-12);

    SUBCASE("dimension matches the character inner product") {
        FiniteGroup s3 = symmetric_group(3);
        Groupoid g = group_as_groupoid(s3);
        Representation reg = left_regular(g, counting_haar(g));
        Representation sign = fixture::s3_sign(s3);
        Representation conj = conjugation_rep(g, counting_haar(g));
        const std::vector<Representation> reps{reg, sign, conj, trivial_rep(g)};
        for (const auto& a : reps)
            for (const auto& b : reps) {
                double expect = oracle::char_inner(oracle::character(a), oracle::character(b)).real();
                CHECK(static_cast<double>(intertwiner_basis(g, a, b).size()) == doctest::Approx(expect));
            }
    }
}

TEST_CASE("isomorphism testing") {
    Groupoid z2 = group_as_groupoid(cyclic_group(2));
    Representation sign = fixture::cyclic_character(2, 1);
    auto self = is_isomorphic(z2, sign, sign);
    CHECK(self.isomorphic);
    REQUIRE(self.witness.has_value());
    CHECK(intertwining_residual(z2, sign, sign, *self.witness) < 1e-12);
    CHECK_FALSE(is_isomorphic(z2, trivial_rep(z2), sign).isomorphic);

    // regular(Z/3) against the sum of its characters, via the DFT matrix
    Groupoid z3 = group_as_groupoid(cyclic_group(3));
    Representation reg = left_regular(z3, counting_haar(z3));
    Representation sum = dsum_rep(dsum_rep(fixture::cyclic_character(3, 0), fixture::cyclic_character(3, 1)),
                                  fixture::cyclic_character(3, 2));
    CHECK(is_isomorphic(z3, reg, sum).isomorphic);
    Matrix dft(3, 3);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) dft(j, k) = std::polar(1.0 / std::sqrt(3.0), 2.0 * M_PI * j * k / 3);
    CHECK(intertwining_residual(z3, reg, sum, FieldMorphism{{dft}}) < 1e-12);
}

TEST_CASE("unitarize") {
    SUBCASE("unitary input: Gram is the identity") {
        Groupoid p3 = make_pair(3);
        auto u = unitarize(p3, counting_haar(p3), trivial_rep(p3));
        for (const auto& gm : u.gram) CHECK(std::abs(gm(0, 0) - 1.0) < 1e-12);
        CHECK(oracle::max_diff(u.rep, trivial_rep(p3)) < 1e-12);
    }
    SUBCASE("Z/2 upper triangular involution") {
        Groupoid z2 = group_as_groupoid(cyclic_group(2));
        Matrix a = m22(1, 1, 0, -1);
        Representation r = fixture::group_rep({Matrix::Identity(2, 2), a});
        auto u = unitarize(z2, counting_haar(z2), r);
        // Gram oracle: average of A^*A over the group
        Matrix gram = 0.5 * (Matrix::Identity(2, 2) + a.adjoint() * a);
        CHECK((u.gram[0] - gram).cwiseAbs().maxCoeff() < 1e-12);
        Matrix f = u.rep(1);
        CHECK(unitarity_residual(f) < 1e-12);
        CHECK((f - f.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        auto e = jacobi_eigh(f);
        CHECK(e.values(0) == doctest::Approx(-1.0));
        CHECK(e.values(1) == doctest::Approx(1.0));
        CHECK(validate_rep(z2, u.rep).ok);
        CHECK(intertwining_residual(z2, r, u.rep, u.iso) < 1e-12);
    }
    SUBCASE("random skewed representations become unitary") {
        Prng rng(17);
        for (int trial = 0; trial < 10; ++trial) {
            Groupoid g = random_action_groupoid(rng);
            std::vector<double> c;
            for (int m = 0; m < g.num_objects(); ++m) c.push_back(0.5 + rng.uniform());
            HaarSystem w = source_haar(g, c);
            PWSet pw = compute_pw_set(g, counting_haar(g), 1);
            Representation r = random_skewed_rep(g, pw, rng);
            auto u = unitarize(g, w, r);
            CHECK(u.rep.unitary);
            CHECK(validate_rep(g, u.rep).ok);
            CHECK(intertwining_residual(g, r, u.rep, u.iso) < 1e-9);
        }
    }
}

TEST_CASE("decompose") {
    SUBCASE("rank-2 trivial over pair(2)") {
        Groupoid p2 = make_pair(2);
        Representation tt = dsum_rep(trivial_rep(p2), trivial_rep(p2));
        auto parts = decompose(p2, tt, 3);
        REQUIRE(parts.size() == 2);
        for (const auto& s : parts) CHECK(is_isomorphic(p2, s.rep, trivial_rep(p2)).isomorphic);
        check_decomposition(p2, tt, parts);
    }
    SUBCASE("regular(S3) against class counting") {
        FiniteGroup s3 = symmetric_group(3);
        Groupoid g = group_as_groupoid(s3);
        Representation reg = left_regular(g, counting_haar(g));
        auto parts = decompose(g, reg, 9);
        CHECK(summand_dims(parts) == std::vector<int>{1, 1, 2, 2});
        check_decomposition(g, reg, parts);
        int sum_sq = 0;
        for (int d : oracle::irrep_dims(s3)) sum_sq += d * d;
        CHECK(sum_sq == 6);
    }
    SUBCASE("regular representations of small groups") {
        for (const auto& h : small_groups()) {
            Groupoid g = group_as_groupoid(h);
            Representation reg = left_regular(g, counting_haar(g));
            auto parts = decompose(g, reg, 2);
            std::vector<int> expect;
            for (int d : oracle::irrep_dims(h))
                for (int c = 0; c < d; ++c) expect.push_back(d);
            std::sort(expect.begin(), expect.end());
            CHECK_MESSAGE(summand_dims(parts) == expect, h.name);
        }
    }
    SUBCASE("random unitary representations on random groupoids") {
        Prng rng(23);
        for (int trial = 0; trial < 15; ++trial) {
            Groupoid g = random_action_groupoid(rng);
            PWSet pw = compute_pw_set(g, counting_haar(g), 4);
            Representation r = random_unitary_rep(g, pw, rng);
            auto parts = decompose(g, r, 100 + static_cast<std::uint64_t>(trial));
            check_decomposition(g, r, parts);
        }
    }
    SUBCASE("deterministic for a fixed seed") {
        Groupoid g = group_as_groupoid(dihedral_group(4));
        Representation reg = left_regular(g, counting_haar(g));
        auto a = decompose(g, reg, 5);
        auto b = decompose(g, reg, 5);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) CHECK(oracle::max_diff(a[i].rep, b[i].rep) == 0.0);
    }
    SUBCASE("non-unitary input is refused") {
        Groupoid z2 = group_as_groupoid(cyclic_group(2));
        Representation r = fixture::group_rep({Matrix::Identity(2, 2), m22(1, 1, 0, -1)});
        CHECK_THROWS_AS(decompose(z2, r, 0), PreconditionError);
    }
}

TEST_CASE("M-irreducibility") {
    Groupoid p3 = make_pair(3);
    CHECK(is_M_irreducible(p3, trivial_rep(p3)));
    Groupoid pt = make_pair(1);
    CHECK_FALSE(is_M_irreducible(pt, dsum_rep(trivial_rep(pt), trivial_rep(pt))));
    auto pb = fixture::gauge(2, cyclic_group(2));
    Representation sign = fixture::cyclic_character(2, 1);
    Representation line = induce_rep(pb.group, pb.gauge, invert_bibundle(pb.gauge, pb.group, pb.bibundle), sign);
    CHECK(line.field.dims == std::vector<int>{1, 1});
    CHECK(is_M_irreducible(pb.gauge, line));
}

TEST_CASE("Schur") {
    SUBCASE("trivial over pair(2)") {
        Groupoid p2 = make_pair(2);
        SchurReport r = schur_check(p2, trivial_rep(p2), trivial_rep(p2));
        CHECK(r.ok);
        CHECK(r.end_dim == 1);
        REQUIRE(r.lambdas.size() == 1);
        CHECK(std::abs(r.lambdas[0][0] - r.lambdas[0][1]) < 1e-12);
    }
    SUBCASE("distinct isotropy types have no intertwiners") {
        Groupoid z3 = group_as_groupoid(cyclic_group(3));
        SchurReport r = schur_check(z3, fixture::cyclic_character(3, 1), fixture::cyclic_character(3, 2));
        CHECK(r.ok);
        CHECK(r.hom_dim == 0);
    }
    SUBCASE("bundle of groups: object-dependent scalars are accepted") {
        Groupoid g = fixture::bundle(2, cyclic_group(2));
        Representation t = trivial_rep(g);
        SchurReport r = schur_check(g, t, t);
        CHECK(r.ok);
        CHECK(r.end_dim == 2);
        FieldMorphism scale{{Matrix::Constant(1, 1, 2.0), Matrix::Constant(1, 1, -5.0)}};
        CHECK(intertwining_residual(g, t, t, scale) == 0.0);
        auto lam = pointwise_scalar(scale);
        REQUIRE(lam.has_value());
        CHECK((*lam)[1] == cplx(-5.0));
    }
    SUBCASE("non-irreducible input is refused") {
        Groupoid z2 = group_as_groupoid(cyclic_group(2));
        Representation reg = left_regular(z2, counting_haar(z2));
        CHECK_THROWS_AS(schur_check(z2, reg, reg), PreconditionError);
    }
    CHECK_FALSE(pointwise_scalar(FieldMorphism{{Matrix::Identity(2, 2) + Matrix::Constant(2, 2, 0.1)}}).has_value());
}

TEST_CASE("Fell norm laws on unitary representations") {
    Prng rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        Groupoid g = random_action_groupoid(rng);
        PWSet pw = compute_pw_set(g, counting_haar(g), 1);
        CHECK(fell_norm_check(g, random_unitary_rep(g, pw, rng)).ok);
    }
}
