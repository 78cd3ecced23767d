#pragma once

#include "seventerm/smith.hpp"

#include <cstddef>
#include <string>

namespace seventerm {

// Finitely generated abelian group in invariant factor form:
//   Z/d_1 x ... x Z/d_k x Z^free_rank,  2 <= d_1 | d_2 | ... | d_k.
// An element is an IntVec of length gens(); the canonical form keeps torsion
// coordinate i in [0, d_i). Torsion coordinates come first.
struct FgAbGroup {
    IntVec torsion;
    std::size_t free_rank = 0;

    static FgAbGroup trivial() { return {}; }
    static FgAbGroup cyclic(const Int& n);

    std::size_t gens() const { return torsion.size() + free_rank; }
    bool is_trivial() const { return gens() == 0; }
    bool is_finite() const { return free_rank == 0; }
    Int order() const; // throws PreconditionError if infinite

    // Per-generator relation modulus: d_i for torsion, 0 for free.
    IntVec row_moduli() const;
    IntMatrix relation_matrix() const; // diag(torsion) columns, none for free gens

    IntVec reduce(IntVec v) const;
    IntVec zero() const { return IntVec(gens()); }
    IntVec add(const IntVec& a, const IntVec& b) const { return reduce(vec_add(a, b)); }
    IntVec sub(const IntVec& a, const IntVec& b) const { return reduce(vec_sub(a, b)); }
    IntVec neg(const IntVec& a) const { return reduce(vec_neg(a)); }
    IntVec smul(const Int& c, const IntVec& a) const { return reduce(vec_scale(c, a)); }
    bool is_zero(const IntVec& a) const { return vec_is_zero(reduce(a)); }

    // All elements in canonical form, zero first, last coordinate fastest.
    // Throws PreconditionError if the order exceeds max_order.
    std::vector<IntVec> elements(const Int& max_order = 1 << 20) const;

    std::string to_string() const; // e.g. "Z/2 x Z/4", "0", "Z/2 x Z"

    bool operator==(const FgAbGroup&) const = default;
};

// Presentation of the cokernel Z^gens / colspan(relations) together with the
// coordinate change: proj maps old coordinates onto the canonical form,
// lift is a right inverse of proj (exactly: proj * lift = identity).
struct Cokernel {
    FgAbGroup group;
    IntMatrix proj; // group.gens() x old_gens
    IntMatrix lift; // old_gens x group.gens()
};

// relations: old_gens rows, one column per relator.
Cokernel cokernel(const IntMatrix& relations, std::size_t old_gens);

// Homomorphism of FgAbGroups given on generators; apply() reduces into the
// target's canonical form.
struct AbHom {
    FgAbGroup source;
    FgAbGroup target;
    IntMatrix matrix; // target.gens() x source.gens()

    static AbHom identity(const FgAbGroup& g);
    static AbHom zero(const FgAbGroup& source, const FgAbGroup& target);

    IntVec apply(const IntVec& v) const;
    AbHom compose(const AbHom& inner) const; // this after inner

    // Each source relation must map into the target relation lattice.
    bool well_defined(std::string* witness = nullptr) const;
};

// span(cycles)/span(borders) inside an ambient FgAbGroup, with maps in both
// directions. project() demands its argument be in span(cycles) modulo the
// ambient relations and throws PreconditionError otherwise; lift() returns a
// representative ambient element of a class.
struct Subquotient {
    FgAbGroup ambient;
    FgAbGroup group;
    IntMatrix cycles; // ambient.gens() x k, the Z generators as given
    Cokernel cok;     // presentation of Z-coordinates modulo relations

    IntVec project(const IntVec& ambient_vec) const;
    std::optional<IntVec> try_project(const IntVec& ambient_vec) const;
    IntVec lift(const IntVec& cls) const;

    // The subgroup of the ambient group spanned by the cycles, as a canonical
    // lattice (ambient relations included); equal subquotients of the same
    // ambient compare equal on this.
    IntMatrix span_lattice() const;

    // Inclusion homomorphism group -> ambient. Only meaningful when borders
    // were trivial (a subgroup, not a proper subquotient).
    AbHom inclusion() const;
};

// Throws PreconditionError naming the first offending column if
// span(borders) is not contained in span(cycles) mod ambient relations.
Subquotient make_subquotient(const IntMatrix& cycles, const IntMatrix& borders, const FgAbGroup& ambient);

// Subgroup spanned by columns (borders empty).
Subquotient span_subgroup(const IntMatrix& gens, const FgAbGroup& ambient);

Subquotient hom_kernel(const AbHom& f);
Subquotient hom_image(const AbHom& f);

// Compare subgroups of a common ambient group.
bool same_subgroup(const Subquotient& a, const Subquotient& b);

} // namespace seventerm
