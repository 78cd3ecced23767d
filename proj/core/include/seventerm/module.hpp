#pragma once

#include "seventerm/abelian.hpp"
#include "seventerm/group.hpp"

namespace seventerm {

// G-module: an FgAbGroup with one integer matrix per group element acting on
// canonical coordinates. make() validates identity, multiplicativity and
// shape exhaustively; bijectivity then follows from act(g)act(g^-1)=act(1).
struct GModule {
    FiniteGroup group;
    FgAbGroup coeff;
    std::vector<IntMatrix> act;

    static GModule make(FiniteGroup group, FgAbGroup coeff, std::vector<IntMatrix> act);
    static GModule trivial(FiniteGroup group, FgAbGroup coeff);

    IntVec apply(int g, const IntVec& v) const { return coeff.reduce(act[g] * v); }
    bool is_trivial_action() const;

    GModule restrict_to(const SubgroupView& sub) const;

    // Same coefficients acted on through a quotient: act_new(q) = act(sigma(q)).
    // Requires the original action to be N-trivial on these coefficients;
    // checked for every lift.
    GModule through_quotient(const GroupExtension& ext) const;
};

// The fixed-point subgroup M^K of a set of acting elements, presented on its
// own generators with the inclusion into M available.
struct InvariantSubgroup {
    Subquotient sub; // inside the module's coefficient group

    FgAbGroup group() const { return sub.group; }
    AbHom inclusion() const { return sub.inclusion(); }
};

InvariantSubgroup invariants(const GModule& mod, const std::vector<int>& elems);

// M^N as a Q-module for an extension; well-definedness over every lift of
// each q is verified.
GModule invariants_as_q_module(const GroupExtension& ext, const GModule& mod, const InvariantSubgroup& inv);

// M x| G on pairs (m, g), (m,g)(m',g') = (m + g m', g g').
// Element index is m_index * |G| + g, with M enumerated canonically, so the
// identity lands at index 0.
struct SemidirectProduct {
    FiniteGroup group;
    GModule mod; // the module that was used to build it
    std::vector<IntVec> m_elements;

    std::size_t m_count() const { return m_elements.size(); }
    int index_of(const IntVec& m, int g) const;
    const IntVec& m_of(int e) const { return m_elements[static_cast<std::size_t>(e) / mod.group.order()]; }
    int g_of(int e) const { return e % static_cast<int>(mod.group.order()); }
    int embed_m(const IntVec& m) const { return index_of(m, 0); }
    int embed_g(int g) const { return g; }
};

SemidirectProduct semidirect_product(const GModule& mod);

} // namespace seventerm
