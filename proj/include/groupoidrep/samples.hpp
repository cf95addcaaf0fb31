#pragma once

// Seeded generators for groupoids and representations used by the command
// line and the test suites.

#include "groupoidrep/peter_weyl.hpp"

namespace groupoidrep {

/// Z1..Z8, S3, D4, Q8, Z2xZ2, Z2xZ4, Z2xZ2xZ2.
std::vector<FiniteGroup> small_groups();

/// Transitive action of h on the left cosets of a subgroup; coset ids by
/// least element.
std::vector<std::vector<int>> coset_action(const FiniteGroup& h, const std::vector<int>& subgroup);

/// A group from small_groups() acting on at most max_points points, built
/// as a disjoint union of coset actions.
Groupoid random_action_groupoid(Prng& rng, int max_points = 5);

/// Random sum of PW-set members (at least one summand, at most max_copies
/// of each) conjugated by a random unitary on every fiber.
Representation random_unitary_rep(const Groupoid& G, const PWSet& pw, Prng& rng, int max_copies = 2);

/// As above but conjugated by a random invertible matrix; not unitary.
Representation random_skewed_rep(const Groupoid& G, const PWSet& pw, Prng& rng, int max_copies = 2);

}  // namespace groupoidrep
