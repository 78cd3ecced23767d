#pragma once

#include "seventerm/cochain.hpp"

namespace seventerm {

// H^n(G, M) presented as ker d^n / im d^{n-1} inside C^n coordinates.
struct CohomologyGroup {
    CochainSpace cs;
    Subquotient sub;

    const FgAbGroup& group() const { return sub.group; }
    bool is_cocycle(const IntVec& cochain) const;
    // Throws PreconditionError if the argument is not a cocycle.
    IntVec classify(const IntVec& cocycle) const;
    IntVec representative(const IntVec& cls) const { return sub.lift(cls); }
};

CohomologyGroup cohomology(const GModule& mod, int degree); // degree <= 3

// Cochain-level restriction along a subgroup inclusion; degrees must agree.
IntVec restrict_cochain(const CochainSpace& from, const IntVec& f, const SubgroupView& sub,
                        const CochainSpace& to);

// Cochain-level inflation along ext.pi, applying incl to coefficients
// (typically the inclusion M^N -> M).
IntVec inflate_cochain(const CochainSpace& from_q, const IntVec& f, const GroupExtension& ext,
                       const AbHom& incl, const CochainSpace& to_g);

// H^1(N, M) as a Q-module: (q phi)(n) = x phi(x^-1 n x) for a lift x of q.
// The class is checked to be independent of the lift for every q and lift;
// disagreement throws InternalError.
struct H1NQModule {
    CohomologyGroup h1n;
    GModule qmod; // over Q, acting on h1n.group coordinates
};
H1NQModule q_action_on_h1(const GroupExtension& ext, const GModule& mod);

// Group extension of Q by the abelian group of a Q-module, as a concrete
// finite group: elements (a, q) with index a_index * |Q| + q.
struct RealizedExtension {
    FiniteGroup e;
    GModule qmod;
    std::vector<int> proj;    // e -> q
    std::vector<int> a_embed; // enumeration index of A -> e index
};

// f2 must be a normalized 2-cocycle of (Q, qmod); multiplication is
// (a,q)(a',q') = (a + q a' + f(q,q'), q q').
RealizedExtension realize_extension_from_2cocycle(const GModule& qmod, const IntVec& f2);

// Factor set of the canonical section (minimal element index per fiber), as
// C^2(Q, qmod) coordinates. Verifies that a_embed is an injective
// homomorphism onto ker(proj), that proj is a surjective homomorphism, and
// that conjugation through any section matches the module action.
IntVec extension_factor_set(const FiniteGroup& e, const std::vector<int>& proj,
                            const std::vector<int>& a_embed, const GModule& qmod);

// Class of the factor set above in h2q.
IntVec classify_group_extension(const FiniteGroup& e, const std::vector<int>& proj,
                                const std::vector<int>& a_embed, const GModule& qmod,
                                const CohomologyGroup& h2q);

// ker(res: H^2(G,M) -> H^2(N,M)) as a subgroup of H^2(G,M).
Subquotient h2_g_m_1(const CohomologyGroup& h2g, const GroupExtension& ext, const GModule& mod,
                     const CohomologyGroup& h2n);

// The N-module M + Z attached to a 1-cocycle phi: n (m, k) = (n m + k phi(n), k).
// Multiplicativity of the built action re-proves the cocycle identity.
struct ModuleExtension {
    GModule em; // over N's own index space; coefficient group M + Z
    IntVec phi; // C^1(N, M) coordinates
};
ModuleExtension module_extension_from_cocycle(const CochainSpace& c1n, const IntVec& phi);
IntVec cocycle_from_module_extension(const ModuleExtension& me, const CochainSpace& c1n);

} // namespace seventerm
