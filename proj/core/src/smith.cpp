#include "seventerm/smith.hpp"

#include "seventerm/errors.hpp"

#include <algorithm>
#include <map>

namespace seventerm {

std::size_t SmithForm::rank() const {
    std::size_t r = 0;
    const std::size_t n = std::min(d.rows(), d.cols());
    for (std::size_t i = 0; i < n; ++i)
        if (d.at(i, i) != 0) ++r;
    return r;
}

IntVec SmithForm::diagonal() const {
    const std::size_t n = std::min(d.rows(), d.cols());
    IntVec out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = d.at(i, i);
    return out;
}

namespace {

// Pivot choice: minimal |entry|, ties broken by (row, col). Deterministic.
bool find_pivot(const IntMatrix& m, std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best;
    for (std::size_t i = t; i < m.rows(); ++i)
        for (std::size_t j = t; j < m.cols(); ++j) {
            const Int& x = m.at(i, j);
            if (x == 0) continue;
            Int a = int_abs(x);
            if (!found || a < best) {
                found = true;
                best = a;
                pi = i;
                pj = j;
            }
        }
    return found;
}

} // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
    SmithForm f;
    f.d = a;
    f.u = IntMatrix::identity(a.rows());
    f.u_inv = IntMatrix::identity(a.rows());
    f.v = IntMatrix::identity(a.cols());
    f.v_inv = IntMatrix::identity(a.cols());
    IntMatrix& d = f.d;

    // Row op on d mirrors onto u from the left and u_inv from the right by
    // the inverse op; likewise for column ops with v. This keeps
    // u*a*v = d and u*u_inv = v*v_inv = id true after every step.
    auto row_add = [&](std::size_t dst, std::size_t src, const Int& c) {
        d.add_row_multiple(dst, src, c);
        f.u.add_row_multiple(dst, src, c);
        f.u_inv.add_col_multiple(src, dst, -c);
    };
    auto col_add = [&](std::size_t dst, std::size_t src, const Int& c) {
        d.add_col_multiple(dst, src, c);
        f.v.add_col_multiple(dst, src, c);
        f.v_inv.add_row_multiple(src, dst, -c);
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        d.swap_rows(i, j);
        f.u.swap_rows(i, j);
        f.u_inv.swap_cols(i, j);
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        d.swap_cols(i, j);
        f.v.swap_cols(i, j);
        f.v_inv.swap_rows(i, j);
    };
    auto row_negate = [&](std::size_t i) {
        d.negate_row(i);
        f.u.negate_row(i);
        f.u_inv.negate_col(i);
    };

    const std::size_t n = std::min(a.rows(), a.cols());
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t pi = 0, pj = 0;
        if (!find_pivot(d, t, pi, pj)) break;
        row_swap(t, pi);
        col_swap(t, pj);

        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < d.rows(); ++i) {
                if (d.at(i, t) == 0) continue;
                Int q = d.at(i, t) / d.at(t, t);
                row_add(i, t, -q);
                if (d.at(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < d.cols(); ++j) {
                if (d.at(t, j) == 0) continue;
                Int q = d.at(t, j) / d.at(t, t);
                col_add(j, t, -q);
                if (d.at(t, j) != 0) dirty = true;
            }
            if (dirty) {
                // Remainders are strictly smaller than the pivot; re-pick.
                std::size_t qi = 0, qj = 0;
                find_pivot(d, t, qi, qj);
                row_swap(t, qi);
                col_swap(t, qj);
                continue;
            }
            // Row and column t are clean. Enforce that the pivot divides the
            // whole remaining block, else fold an offending row in and redo.
            bool divides = true;
            for (std::size_t i = t + 1; i < d.rows() && divides; ++i)
                for (std::size_t j = t + 1; j < d.cols(); ++j)
                    if (d.at(i, j) % d.at(t, t) != 0) {
                        row_add(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (d.at(t, t) < 0) row_negate(t);
    }
    return f;
}

IntMatrix column_hermite_form(const IntMatrix& a) {
    IntMatrix h = a;
    std::size_t lead = 0; // next column to place a pivot in
    for (std::size_t r = 0; r < h.rows() && lead < h.cols(); ++r) {
        // Gcd-reduce row r across columns [lead..) until one nonzero remains.
        for (;;) {
            std::size_t jmin = h.cols();
            Int best;
            for (std::size_t j = lead; j < h.cols(); ++j) {
                if (h.at(r, j) == 0) continue;
                Int aabs = int_abs(h.at(r, j));
                if (jmin == h.cols() || aabs < best) {
                    best = aabs;
                    jmin = j;
                }
            }
            if (jmin == h.cols()) break; // row r all zero in the block
            h.swap_cols(lead, jmin);
            bool clean = true;
            for (std::size_t j = lead + 1; j < h.cols(); ++j) {
                if (h.at(r, j) == 0) continue;
                Int q = h.at(r, j) / h.at(r, lead);
                h.add_col_multiple(j, lead, -q);
                if (h.at(r, j) != 0) clean = false;
            }
            if (clean) {
                if (h.at(r, lead) < 0) h.negate_col(lead);
                // Canonical reduction of earlier columns at this pivot row.
                for (std::size_t j = 0; j < lead; ++j) {
                    Int q = floor_div(h.at(r, j), h.at(r, lead));
                    h.add_col_multiple(j, lead, -q);
                }
                ++lead;
                break;
            }
        }
    }
    // Columns [lead..) are zero; drop them.
    std::vector<std::size_t> keep(lead);
    for (std::size_t j = 0; j < lead; ++j) keep[j] = j;
    return h.take_cols(keep);
}

bool lattice_equal(const IntMatrix& a, const IntMatrix& b) {
    return column_hermite_form(a) == column_hermite_form(b);
}

bool lattice_contains_lattice(const IntMatrix& outer, const IntMatrix& inner) {
    return lattice_equal(outer, outer.hcat(inner));
}

IntMatrix integer_kernel(const IntMatrix& a) {
    SmithForm f = smith_normal_form(a);
    const std::size_t n = std::min(a.rows(), a.cols());
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (j >= n || f.d.at(j, j) == 0) free_cols.push_back(j);
    return f.v.take_cols(free_cols);
}

IntMatrix kernel_mod(const IntMatrix& a, const IntVec& row_moduli) {
    if (row_moduli.size() != a.rows()) throw ValidationError("kernel_mod: moduli length mismatch");
    std::vector<IntVec> relax;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (row_moduli[i] == 0) continue;
        IntVec e(a.rows());
        e[i] = row_moduli[i];
        relax.push_back(e);
    }
    IntMatrix stacked = a.hcat(IntMatrix::from_columns(a.rows(), relax));
    IntMatrix k = integer_kernel(stacked);
    std::vector<std::size_t> xrows(a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i) xrows[i] = i;
    return column_hermite_form(k.take_rows(xrows));
}

IntMatrix kernel_mod_rowspace(const IntMatrix& a, const IntVec& row_moduli) {
    if (row_moduli.size() != a.rows()) throw ValidationError("kernel_mod_rowspace: moduli length mismatch");
    // x satisfies all rows of modulus m iff it satisfies every integer
    // combination of them, so each modulus class can be replaced by a row
    // span basis without changing the solution lattice.
    std::map<Int, std::vector<std::size_t>> by_modulus;
    for (std::size_t i = 0; i < a.rows(); ++i) by_modulus[row_moduli[i]].push_back(i);
    std::vector<IntVec> rows;
    IntVec moduli;
    for (const auto& [m, idx] : by_modulus) {
        IntMatrix span = column_hermite_form(a.take_rows(idx).transposed());
        for (std::size_t j = 0; j < span.cols(); ++j) {
            rows.push_back(span.col(j));
            moduli.push_back(m);
        }
    }
    if (rows.empty()) return IntMatrix::identity(a.cols());
    return kernel_mod(IntMatrix::from_columns(a.cols(), rows).transposed(), moduli);
}

IntVec reduce_mod_lattice(IntVec v, const IntMatrix& h) {
    // h is a Hermite basis: each column has a lowest "pivot" row in strictly
    // increasing order of column. Walk columns and cancel canonically.
    for (std::size_t j = 0; j < h.cols(); ++j) {
        std::size_t pr = 0;
        bool found = false;
        for (std::size_t i = 0; i < h.rows(); ++i)
            if (h.at(i, j) != 0) {
                pr = i;
                found = true;
                break;
            }
        if (!found) continue;
        Int q = floor_div(v[pr], h.at(pr, j));
        if (q == 0) continue;
        for (std::size_t i = 0; i < h.rows(); ++i) v[i] -= q * h.at(i, j);
    }
    return v;
}

namespace {

std::optional<IntVec> solve_particular(const IntMatrix& a, const IntVec& b) {
    if (b.size() != a.rows()) throw ValidationError("solve: rhs length mismatch");
    SmithForm f = smith_normal_form(a);
    IntVec c = f.u * b;
    const std::size_t n = std::min(a.rows(), a.cols());
    IntVec z(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (i < n && f.d.at(i, i) != 0) {
            if (c[i] % f.d.at(i, i) != 0) return std::nullopt;
            z[i] = c[i] / f.d.at(i, i);
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return f.v * z;
}

} // namespace

std::optional<IntVec> solve(const IntMatrix& a, const IntVec& b) {
    auto x = solve_particular(a, b);
    if (!x) return std::nullopt;
    IntMatrix k = column_hermite_form(integer_kernel(a));
    return reduce_mod_lattice(*x, k);
}

std::optional<IntVec> solve_mod(const IntMatrix& a, const IntVec& b, const IntVec& row_moduli) {
    if (row_moduli.size() != a.rows()) throw ValidationError("solve_mod: moduli length mismatch");
    std::vector<IntVec> relax;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (row_moduli[i] == 0) continue;
        IntVec e(a.rows());
        e[i] = row_moduli[i];
        relax.push_back(e);
    }
    IntMatrix stacked = a.hcat(IntMatrix::from_columns(a.rows(), relax));
    auto full = solve_particular(stacked, b);
    if (!full) return std::nullopt;
    IntVec x(full->begin(), full->begin() + a.cols());
    return reduce_mod_lattice(std::move(x), kernel_mod(a, row_moduli));
}

} // namespace seventerm
