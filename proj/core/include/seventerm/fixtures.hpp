#pragma once

#include "seventerm/module.hpp"

#include <optional>
#include <string>
#include <vector>

namespace seventerm {

FiniteGroup cyclic_group(int n);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
FiniteGroup dihedral_group_8();   // <r, s | r^4, s^2, srs = r^-1>, index = i + 4j for r^i s^j
FiniteGroup quaternion_group();   // units {1,-1,i,-i,j,-j,k,-k} in that index order
FiniteGroup symmetric_group_3();  // permutations of {0,1,2} in lexicographic one-line order

// A named input: a group, a normal subgroup and a module, ready for the
// pipeline. The five built-ins cover split/non-split extensions, trivial and
// twisted coefficients, cyclic and Klein quotients.
struct Fixture {
    std::string name;
    std::string summary;
    FiniteGroup g;
    std::vector<int> n_elems;
    GModule mod;
};

const std::vector<Fixture>& builtin_fixtures();
std::optional<Fixture> fixture_by_name(const std::string& name); // case-insensitive

} // namespace seventerm
