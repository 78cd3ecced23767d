#pragma once

#include "seventerm/matrix.hpp"

#include <optional>

namespace seventerm {

// u * a * v = d with d diagonal, d[0][0] | d[1][1] | ..., all diagonal
// entries nonnegative. u and v are unimodular; u_inv and v_inv are their
// exact inverses, maintained alongside rather than recomputed.
struct SmithForm {
    IntMatrix d;
    IntMatrix u, u_inv;
    IntMatrix v, v_inv;

    std::size_t rank() const;
    IntVec diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& a);

// Canonical basis of the column lattice of a: column-style Hermite form,
// pivots positive, entries to the left of each pivot reduced into [0, pivot),
// zero columns dropped. Two matrices span the same lattice iff their forms
// are identical.
IntMatrix column_hermite_form(const IntMatrix& a);

bool lattice_equal(const IntMatrix& a, const IntMatrix& b);
bool lattice_contains_lattice(const IntMatrix& outer, const IntMatrix& inner);

// Columns form a basis of {x : a x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

// Columns span {x : (a x)_i == 0 mod row_moduli[i]}, where modulus 0 means
// the exact equation. Result is in Hermite form.
IntMatrix kernel_mod(const IntMatrix& a, const IntVec& row_moduli);

// Same lattice as kernel_mod. Rows sharing a modulus are first replaced by a
// basis of their integer row span, so the cost is governed by a.cols() even
// when a has far more rows than columns.
IntMatrix kernel_mod_rowspace(const IntMatrix& a, const IntVec& row_moduli);

// Exact resp. congruence solving, deterministic: the returned solution is
// the canonical representative of the solution coset with respect to the
// Hermite basis of the solution lattice, so equal systems give equal answers.
// nullopt means no solution exists.
std::optional<IntVec> solve(const IntMatrix& a, const IntVec& b);
std::optional<IntVec> solve_mod(const IntMatrix& a, const IntVec& b, const IntVec& row_moduli);

// Reduce v modulo the lattice spanned by the columns of the Hermite form h.
IntVec reduce_mod_lattice(IntVec v, const IntMatrix& h);

} // namespace seventerm
