#pragma once

#include "groupoidrep/errors.hpp"

#include <optional>
#include <string>
#include <vector>

namespace groupoidrep {

/// A finite group given by its multiplication table. Element 0 need not be
/// the identity; `identity` records it.
struct FiniteGroup {
    int order = 0;
    std::vector<int> mul;   // mul[a * order + b] = a b
    std::vector<int> inv;
    int identity = 0;
    std::string name;

    int operator()(int a, int b) const { return mul[static_cast<size_t>(a * order + b)]; }

    /// Builds identity and inverse from a table and checks the group axioms.
    static FiniteGroup from_table(std::vector<std::vector<int>> table, std::string name = {});
};

Report validate_group(const FiniteGroup& h);

FiniteGroup cyclic_group(int n);
FiniteGroup symmetric_group(int n);
FiniteGroup dihedral_group(int n);  // order 2n
FiniteGroup quaternion_group();
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

/// Smallest subgroup containing the given elements.
std::vector<int> generated_subgroup(const FiniteGroup& h, const std::vector<int>& gens);

/// All subgroups, each as a sorted element list.
std::vector<std::vector<int>> all_subgroups(const FiniteGroup& h);

/// Bijection phi with phi(ab) = phi(a)phi(b), if one exists (backtracking
/// over generator images; fine for orders up to a few dozen).
std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b);

}  // namespace groupoidrep
