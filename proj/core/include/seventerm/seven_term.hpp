#pragma once

#include "seventerm/cohomology.hpp"
#include "seventerm/module.hpp"
#include "seventerm/verdict.hpp"

#include <cstdint>
#include <optional>
#include <utility>

namespace seventerm {

// Everything the connecting-map constructions share for one input
// (G, N, M): the extension data, the coefficient modules over G, N and Q,
// the cohomology groups at both ends of every map, and the ambient
// semidirect product M x| G in which two of the constructions work.
struct Pipeline {
    GroupExtension ext;
    GModule mod;              // M over G
    GroupRingData ring;
    SemidirectProduct sd;     // M x| G

    InvariantSubgroup mn;     // M^N inside M
    GModule mn_q;             // M^N as a Q-module

    GModule modn;             // M restricted to N
    CohomologyGroup h1q;      // H^1(Q, M^N)
    CohomologyGroup h2q;      // H^2(Q, M^N)
    CohomologyGroup h3q;      // H^3(Q, M^N)
    CohomologyGroup h1g;      // H^1(G, M)
    CohomologyGroup h2g;      // H^2(G, M)
    CohomologyGroup h1n;      // H^1(N, M)
    CohomologyGroup h2n;      // H^2(N, M)

    H1NQModule h1nq;          // Q-action on H^1(N, M)
    InvariantSubgroup h1n_fix; // H^1(N, M)^Q inside H^1(N, M)
    CohomologyGroup h1qh1n;   // H^1(Q, H^1(N, M))

    Subquotient h2g_1;        // ker(res) inside H^2(G, M)
};

Pipeline build_pipeline(const GroupExtension& ext, const GModule& mod);

// ---- transgression via the normalizer of the graph -------------------

// For a 1-cocycle phi on N, s(n) = (phi(n), n) embeds N into M x| G.
// The normalizer of s(N) there, modulo s(N), is an extension of Q by M^N;
// tr [phi] is its class in H^2(Q, M^N).
struct TrOutput {
    IntVec cls;                    // class in H^2(Q, M^N)
    std::vector<int> graph;        // s(N) as sorted M x| G indices
    std::vector<int> normalizer;   // its normalizer, sorted
    FiniteGroup quotient;          // normalizer / s(N)
    std::vector<int> quotient_proj;  // quotient -> Q
    std::vector<int> quotient_embed; // M^N enumeration -> quotient
    std::vector<Verdict> checks;
};
TrOutput tr_normalizer(const Pipeline& pl, const IntVec& phi);

// ---- the same map through automorphisms of the module extension ------

// phi also defines the N-module E_M = M (+) Z with n(m, k) =
// (n m + k phi(n), k).  Pairs (c, x) in M x G act on E_M by
// (m, k) |-> (x m + k c, k); those compatible with the N-structure form
// a group under (c, x)(c', x') = (c + x c', x x'), and its quotient by
// the pairs (phi(n), n) is again an extension of Q by M^N.
struct DeltaOutput {
    IntVec cls;                    // class in H^2(Q, M^N)
    std::vector<int> aut_pairs;    // compatible pairs, as sorted M x| G indices
    FiniteGroup aut;               // pair group
    FiniteGroup out;               // pair group / s(N)
    std::vector<int> to_out;       // pair-group index -> out index
    std::vector<int> out_proj;     // out -> Q
    std::vector<int> out_embed;    // M^N enumeration -> out
    std::vector<Verdict> checks;
};
DeltaOutput delta_out_construction(const Pipeline& pl, const IntVec& phi);

// ---- the same map through the filtered Hom group ----------------------

// N-maps ZG -> M are determined by their values on the coset section,
// psi(n sigma(q)) = n . coords[q].  For each q the construction produces
// the difference map d(q) on the augmentation ideal; the pairs (psi, q)
// with psi agreeing with d(q) there form a group under
// (psi, q)(psi', q') = (psi + q psi', q q'), a third extension of Q by M^N.
struct FiberOutput {
    IntVec cls;                    // class in H^2(Q, M^N)
    // element i of fp is (coords, q) = elems[i]
    std::vector<std::pair<std::vector<IntVec>, int>> elems;
    FiniteGroup fp;
    // d(q) recorded by its values on sigma(q')-1 (q' != 1) and n-1 (n != 1)
    std::vector<std::vector<IntVec>> d_on_section;
    std::vector<std::vector<IntVec>> d_on_n;
    std::vector<Verdict> checks;
};
FiberOutput d2_fiber_product(const Pipeline& pl, const IntVec& phi);

// ---- cross-checks between the three constructions ---------------------

// (psi, q) |-> the pair (coords[q], sigma(q)): verified to be an
// isomorphism of extensions from the fiber-product group onto the
// automorphism quotient.
std::vector<Verdict> compare_fiber_vs_out(const Pipeline& pl,
                                          const DeltaOutput& del,
                                          const FiberOutput& fib);

// Pair composition agrees with composition of the maps they induce on
// E_M, the compatible-pair set equals the normalizer of the graph, and
// both routes land on the same cohomology class.
std::vector<Verdict> compare_naive_semidirect(const Pipeline& pl,
                                              const TrOutput& tr,
                                              const DeltaOutput& del);

// ---- rho: H^2(G, M)_1 -> H^1(Q, H^1(N, M)) ----------------------------

// Realize the extension E of G by M from a 2-cocycle whose restriction
// to N is trivial, split it over N, and measure how conjugation in E
// twists the splitting: x |-> [n |-> x s(g^-1 n g) x^-1 s(n)^-1] descends
// to a 1-cocycle of Q with values in H^1(N, M).
struct RhoOutput {
    IntVec cls;                    // class in H^1(Q, H^1(N, M))
    IntVec delta_cochain;          // its representative 1-cochain
    std::vector<Verdict> checks;
};
RhoOutput rho(const Pipeline& pl, const IntVec& z);

// ---- maps assembled on generators, with well-definedness evidence -----

struct MapBuildOptions {
    int perturbations = 3;         // coboundary re-representations per class
    std::uint64_t seed = 0x7e57ab1e5eedull;
};

// Each builder returns the homomorphism together with the verdicts of
// the additivity and representative-independence checks that justify it.
struct BuiltMap {
    AbHom hom;
    std::vector<Verdict> checks;
};

BuiltMap build_inflation1(const Pipeline& pl);                 // H^1(Q,M^N) -> H^1(G,M)
BuiltMap build_restriction1(const Pipeline& pl);               // H^1(G,M) -> H^1(N,M)^Q
BuiltMap build_tr(const Pipeline& pl, const MapBuildOptions& opt = {});
BuiltMap build_inflation2(const Pipeline& pl);                 // H^2(Q,M^N) -> H^2(G,M)_1
BuiltMap build_rho(const Pipeline& pl, const MapBuildOptions& opt = {});

// ---- the sequence itself ----------------------------------------------

struct SevenTermData {
    Pipeline pl;
    std::vector<FgAbGroup> terms;  // the seven groups in order
    std::vector<std::string> term_names;
    std::vector<AbHom> maps;       // the five maps between terms 1..6
    std::vector<std::string> map_names;
    std::vector<Verdict> junctions; // left injectivity + exactness at terms 2..5
    std::vector<Verdict> checks;    // accumulated construction evidence
};

// Builds all five maps and verifies exactness at the four interior
// junctions that the maps themselves witness.  Exactness at the sixth
// term needs the spectral-sequence side and is checked elsewhere.
SevenTermData seven_term(const GroupExtension& ext, const GModule& mod,
                         const MapBuildOptions& opt = {});

} // namespace seventerm
