#pragma once

#include "groupoidrep/morita.hpp"

namespace fixture {

using namespace groupoidrep;

/// Trivial H-bundle over `base` points; gauge groupoid with the bibundle.
inline PrincipalBundle gauge(int base, const FiniteGroup& h) {
    return principal_bundle(base * h.order, h, trivial_bundle_action(base, h));
}

/// Constant bundle of groups.
inline Groupoid bundle(int points, const FiniteGroup& h) {
    return make_bundle_of_groups(std::vector<FiniteGroup>(static_cast<size_t>(points), h));
}

/// Z/2 swapping 2 points.
inline Groupoid swap2() {
    FiniteGroup z2 = cyclic_group(2);
    std::vector<std::vector<int>> act(2);
    for (int h = 0; h < 2; ++h) act[static_cast<size_t>(h)] = h == z2.identity ? std::vector<int>{0, 1} : std::vector<int>{1, 0};
    return make_action(z2, 2, act);
}

/// The non-identity element of Z/2.
inline int flip(const FiniteGroup& z2) { return z2.identity == 0 ? 1 : 0; }

}  // namespace fixture

namespace fixture {

/// One-object representation given by its matrices, flagged unitary when
/// every matrix is.
inline Representation group_rep(const std::vector<Matrix>& mats) {
    Representation r;
    r.field.dims = {static_cast<int>(mats.front().rows())};
    r.mats = mats;
    r.unitary = true;
    for (const auto& m : mats) r.unitary = r.unitary && unitarity_residual(m) < 1e-12;
    return r;
}

/// A character of a group, as a one-object representation.
template <class F>
Representation character_rep(const FiniteGroup& h, F chi) {
    std::vector<Matrix> mats;
    for (int g = 0; g < h.order; ++g) mats.push_back(Matrix::Constant(1, 1, chi(g)));
    return group_rep(mats);
}

/// The sign of S3: even permutations are exactly the squares.
inline Representation s3_sign(const FiniteGroup& s3) {
    return character_rep(s3, [&](int g) {
        for (int x = 0; x < s3.order; ++x)
            if (s3(x, x) == g) return cplx(1.0);
        return cplx(-1.0);
    });
}

/// Z/n character k -> exp(2 pi i j k / n); the generator of cyclic_group(n)
/// is element 1 and element k is its k-th power.
inline Representation cyclic_character(int n, int j) {
    FiniteGroup h = cyclic_group(n);
    return character_rep(h, [&](int k) { return std::polar(1.0, 2.0 * M_PI * j * k / n); });
}

}  // namespace fixture
