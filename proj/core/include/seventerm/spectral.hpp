#pragma once

#include "seventerm/seven_term.hpp"

#include <array>
#include <map>
#include <optional>
#include <vector>

namespace seventerm {

// Level p of the filtration on normalized degree-n cochains over G:
// cochains that vanish whenever one of the last p arguments lies in N and
// that depend on the last p arguments only through their N-cosets. The
// lattice has one coefficient copy per pattern class
//   (leading tuple over G \ {1}, length n - p)
//     x (trailing coset tuple over Q \ {1}, length p),
// and level p+1 sits inside level p. Level > degree is the zero space.
struct PatternSpace {
    int degree = 0; // n
    int level = 0;  // p
    std::size_t class_count = 0;
    FgAbGroup space;    // one coefficient copy per class
    IntMatrix expand;   // cochain coords <- class coords, exact pattern fill
    IntMatrix compress; // class coords <- cochain coords, read at the representative tuple

    // v[a] - v[b] (or v[a] alone when b < 0) vanishing mod `modulus` over
    // all rows is membership; on canonically reduced cochains the integer
    // and the modular conditions agree.
    struct Row {
        std::size_t a = 0;
        std::ptrdiff_t b = -1;
        Int modulus;
    };
    std::vector<Row> membership;
};

// Second-page entry at (p, q), presented inside the level-p pattern space
// of degree p + q: numerator {x : dx lies two levels up}, denominator
// spanned by the deeper numerator one level up and by differentials from
// one level down.
struct SpectralPage {
    int p = 0, q = 0;
    Subquotient sub;   // classes, in pattern coordinates
    IntMatrix borders; // denominator generators, pattern coordinates
};

// Brute-force second page of the filtered normalized cochain complex of an
// extension, with the identifications that let its entries be compared
// against the seven-term sequence. Cohomology presentations are shared
// with the pipeline so classes on both sides live in the same coordinates;
// everything else is computed from the filtration alone.
class SpectralOracle {
  public:
    explicit SpectralOracle(const Pipeline& pl);

    const Pipeline& pl() const { return pl_; }

    const CochainSpace& cochains(int n); // over G, 0 <= n <= 4
    const PatternSpace& space(int n, int p);
    const SpectralPage& page(int p, int q);

    // Exact (integral) or torsion-modular membership test. The cochain
    // must be canonically reduced for the exact test to equal membership.
    static bool member(const PatternSpace& ps, const IntVec& cochain, bool exact);

    // Class of a canonically reduced member cochain in a page, and a
    // canonical member cochain representing a page class.
    std::optional<IntVec> page_class(const SpectralPage& pg, const IntVec& cochain);
    IntVec page_representative(const SpectralPage& pg, const IntVec& cls);

    // [x] -> [dx], with re-representation stability evidence.
    BuiltMap d2(int p, int q, const MapBuildOptions& opt = {});

    // Identifications of page entries with the sequence's terms. Each
    // carries well-definedness and bijectivity evidence in its checks.
    BuiltMap row_edge(int p); // H^p(Q, M^N) -> E2^{p,0} by inflation, p = 2 or 3
    BuiltMap col_edge();      // E2^{0,1} -> H^1(N, M)^Q by restriction
    BuiltMap h1_edge();       // E2^{1,1} -> H^1(Q, H^1(N, M)) by slicing

    // d after d vanishing and integral stability of every level under d.
    std::vector<Verdict> self_check();

    // Classes of H^2(G, M) admitting a representative cocycle at the level.
    Subquotient h2_filtration(int p);

  private:
    Pipeline pl_;
    std::map<int, CochainSpace> cs_;
    std::map<std::pair<int, int>, PatternSpace> spaces_;
    std::map<std::pair<int, int>, SpectralPage> pages_;
    std::map<std::array<int, 3>, IntMatrix> level_kernels_;

    // Basis of {x in level p of degree n : dx in level p2 of degree n+1},
    // in class coordinates of space(n, p).
    const IntMatrix& level_kernel(int n, int p, int p2);
};

// H^2(G, M)_1 -> E2^{1,1}: re-represent inside level 1 by a coboundary
// adjustment, then classify. Carries additivity, re-representation and
// perturbation evidence.
BuiltMap build_f1(SpectralOracle& so, const MapBuildOptions& opt = {});

// Elementwise comparison of a transgression candidate against the (0,1)
// page differential through the row and column edges. A pass records in
// *sign_out the global unit for which the two sides agree: +1, -1, or 2
// when the image is 2-torsion and the units cannot be told apart. The
// unit is a fixed convention constant, not a per-element choice.
Verdict compare_transgression(SpectralOracle& so, const AbHom& tr_hom, int* sign_out = nullptr);

struct OracleComparison {
    int sign = 0; // unit making the transgression match d2^{0,1}
    AbHom sixth;  // H^1(Q, H^1(N, M)) -> H^3(Q, M^N) through the pages
    std::vector<Verdict> checks;
    bool ok() const { return all_ok(checks); }
};

// Full coincidence suite: transgression against d2^{0,1}, rho against the
// level-1 re-representation under the page identifications, exactness at
// the sixth term, and the order bookkeeping of the filtration on H^2(G, M).
OracleComparison compare_with_oracle(const SevenTermData& st, SpectralOracle& so,
                                     const MapBuildOptions& opt = {});

} // namespace seventerm
