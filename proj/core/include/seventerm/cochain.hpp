#pragma once

#include "seventerm/module.hpp"

namespace seventerm {

// Normalized inhomogeneous cochains C^n(G, M): functions on n-tuples of
// non-identity elements (a normalized cochain vanishes whenever an argument
// is the identity, so those tuples are not stored). Coordinates are
// tuple-major, coefficient-generator-minor; tuples are ordered
// lexicographically with the first entry slowest.
struct CochainSpace {
    GModule mod;
    int degree = 0;
    std::size_t tuple_count = 0;
    FgAbGroup space;

    std::size_t nonid() const { return mod.group.order() - 1; }

    std::vector<int> tuple_at(std::size_t t) const;
    std::size_t tuple_index(const std::vector<int>& tuple) const;

    // Value at an arbitrary tuple; identity entries give zero.
    IntVec value(const IntVec& cochain, const std::vector<int>& tuple) const;
    // tuple must be normalized (no identity entries).
    void set_value(IntVec& cochain, const std::vector<int>& tuple, const IntVec& v) const;
};

// Degrees 0..4 are supported as spaces (degree 4 only as a codomain);
// the total coordinate count is capped at kMaxCochainCoords.
inline constexpr int kMaxCochainDegree = 4;
inline constexpr std::size_t kMaxCochainCoords = 2'000'000;

CochainSpace cochain_space(const GModule& mod, int degree);

// (df)(g1..g_{n+1}) = g1 f(g2..) + sum_i (-1)^i f(.., g_i g_{i+1}, ..)
//                     + (-1)^{n+1} f(g1..g_n), for degree n <= 3.
IntVec bar_differential_apply(const CochainSpace& cs, const IntVec& f);
IntMatrix bar_differential(const GModule& mod, int degree);

} // namespace seventerm
