#include "seventerm/abelian.hpp"

#include "seventerm/errors.hpp"

#include <sstream>

namespace seventerm {

FgAbGroup FgAbGroup::cyclic(const Int& n) {
    if (n < 0) throw ValidationError("cyclic: negative order");
    FgAbGroup g;
    if (n == 0)
        g.free_rank = 1;
    else if (n > 1)
        g.torsion.push_back(n);
    return g;
}

Int FgAbGroup::order() const {
    if (!is_finite()) throw PreconditionError("order: group is infinite");
    Int o = 1;
    for (const auto& d : torsion) o *= d;
    return o;
}

IntVec FgAbGroup::row_moduli() const {
    IntVec m(gens());
    for (std::size_t i = 0; i < torsion.size(); ++i) m[i] = torsion[i];
    return m;
}

IntMatrix FgAbGroup::relation_matrix() const {
    std::vector<IntVec> cols;
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        IntVec e(gens());
        e[i] = torsion[i];
        cols.push_back(e);
    }
    return IntMatrix::from_columns(gens(), cols);
}

IntVec FgAbGroup::reduce(IntVec v) const {
    if (v.size() != gens()) throw ValidationError("reduce: wrong element length");
    for (std::size_t i = 0; i < torsion.size(); ++i) v[i] = pos_mod(v[i], torsion[i]);
    return v;
}

std::vector<IntVec> FgAbGroup::elements(const Int& max_order) const {
    if (!is_finite()) throw PreconditionError("elements: group is infinite");
    if (order() > max_order) throw PreconditionError("elements: order " + order().str() + " exceeds cap " + max_order.str());
    std::vector<IntVec> out;
    out.reserve(static_cast<std::size_t>(order()));
    IntVec cur(gens());
    for (;;) {
        out.push_back(cur);
        std::size_t i = gens();
        while (i > 0) {
            --i;
            if (++cur[i] < torsion[i]) break;
            cur[i] = 0;
            if (i == 0) return out;
        }
        if (gens() == 0) return out;
    }
}

std::string FgAbGroup::to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& d : torsion) {
        os << (first ? "" : " x ") << "Z/" << d;
        first = false;
    }
    for (std::size_t i = 0; i < free_rank; ++i) {
        os << (first ? "" : " x ") << "Z";
        first = false;
    }
    return os.str();
}

Cokernel cokernel(const IntMatrix& relations, std::size_t old_gens) {
    if (relations.cols() > 0 && relations.rows() != old_gens)
        throw ValidationError("cokernel: relation rows != generator count");
    IntMatrix rel = relations.cols() ? relations : IntMatrix(old_gens, 0);
    SmithForm f = smith_normal_form(rel);

    // In coordinates y = u*x the relation lattice is spanned by d_i e_i.
    std::vector<std::size_t> keep_torsion, keep_free;
    const std::size_t n = std::min(rel.rows(), rel.cols());
    for (std::size_t i = 0; i < old_gens; ++i) {
        if (i < n && f.d.at(i, i) != 0) {
            if (f.d.at(i, i) > 1) keep_torsion.push_back(i);
        } else {
            keep_free.push_back(i);
        }
    }
    Cokernel c;
    for (auto i : keep_torsion) c.group.torsion.push_back(f.d.at(i, i));
    c.group.free_rank = keep_free.size();
    std::vector<std::size_t> keep = keep_torsion;
    keep.insert(keep.end(), keep_free.begin(), keep_free.end());
    c.proj = f.u.take_rows(keep);
    c.lift = f.u_inv.take_cols(keep);
    return c;
}

AbHom AbHom::identity(const FgAbGroup& g) {
    return {g, g, IntMatrix::identity(g.gens())};
}

AbHom AbHom::zero(const FgAbGroup& source, const FgAbGroup& target) {
    return {source, target, IntMatrix(target.gens(), source.gens())};
}

IntVec AbHom::apply(const IntVec& v) const {
    if (v.size() != source.gens()) throw ValidationError("AbHom::apply: wrong element length");
    return target.reduce(matrix * v);
}

AbHom AbHom::compose(const AbHom& inner) const {
    if (inner.target != source) throw ValidationError("AbHom::compose: middle groups differ");
    return {inner.source, target, matrix * inner.matrix};
}

bool AbHom::well_defined(std::string* witness) const {
    if (matrix.rows() != target.gens() || matrix.cols() != source.gens()) {
        if (witness) *witness = "matrix shape does not match source/target generators";
        return false;
    }
    for (std::size_t i = 0; i < source.torsion.size(); ++i) {
        IntVec img = target.reduce(vec_scale(source.torsion[i], matrix.col(i)));
        if (!vec_is_zero(img)) {
            if (witness)
                *witness = "relation " + source.torsion[i].str() + "*e_" + std::to_string(i) + " maps to a nonzero element";
            return false;
        }
    }
    return true;
}

IntVec Subquotient::project(const IntVec& ambient_vec) const {
    auto r = try_project(ambient_vec);
    if (!r) {
        std::ostringstream os;
        os << "subquotient project: vector [";
        for (std::size_t i = 0; i < ambient_vec.size(); ++i) os << (i ? " " : "") << ambient_vec[i];
        os << "] is not in the cycle span";
        throw PreconditionError(os.str());
    }
    return *r;
}

std::optional<IntVec> Subquotient::try_project(const IntVec& ambient_vec) const {
    auto w = solve_mod(cycles, ambient_vec, ambient.row_moduli());
    if (!w) return std::nullopt;
    return group.reduce(cok.proj * *w);
}

IntVec Subquotient::lift(const IntVec& cls) const {
    if (cls.size() != group.gens()) throw ValidationError("subquotient lift: wrong element length");
    return ambient.reduce(cycles * (cok.lift * cls));
}

IntMatrix Subquotient::span_lattice() const {
    return column_hermite_form(cycles.hcat(ambient.relation_matrix()));
}

AbHom Subquotient::inclusion() const {
    IntMatrix m(ambient.gens(), group.gens());
    for (std::size_t j = 0; j < group.gens(); ++j) {
        IntVec e(group.gens());
        e[j] = 1;
        m.set_col(j, lift(e));
    }
    return {group, ambient, m};
}

Subquotient make_subquotient(const IntMatrix& cycles_in, const IntMatrix& borders, const FgAbGroup& ambient) {
    const std::size_t ag = ambient.gens();
    IntMatrix cycles = cycles_in.cols() ? cycles_in : IntMatrix(ag, 0);
    if (cycles.rows() != ag) throw ValidationError("make_subquotient: cycle rows != ambient generators");
    IntVec moduli = ambient.row_moduli();

    for (std::size_t j = 0; j < borders.cols(); ++j) {
        if (!solve_mod(cycles, borders.col(j), moduli)) {
            throw PreconditionError("make_subquotient: border column " + std::to_string(j) +
                                    " is not in the cycle span");
        }
    }

    // Relations among the cycle coordinates: w with Z*w in
    // span(borders) + ambient relations.
    IntMatrix zb = borders.cols() ? cycles.hcat(borders) : cycles;
    IntMatrix k = kernel_mod(zb, moduli);
    std::vector<std::size_t> wrows(cycles.cols());
    for (std::size_t i = 0; i < cycles.cols(); ++i) wrows[i] = i;
    IntMatrix w = column_hermite_form(k.take_rows(wrows));

    Subquotient s;
    s.ambient = ambient;
    s.cycles = cycles;
    s.cok = cokernel(w, cycles.cols());
    s.group = s.cok.group;
    return s;
}

Subquotient span_subgroup(const IntMatrix& gens, const FgAbGroup& ambient) {
    return make_subquotient(gens, IntMatrix(ambient.gens(), 0), ambient);
}

Subquotient hom_kernel(const AbHom& f) {
    IntMatrix k = kernel_mod(f.matrix, f.target.row_moduli());
    // Source relations are in the kernel when f is well defined, but include
    // them explicitly so the span is right even for ill-formed inputs.
    return span_subgroup(column_hermite_form(k.hcat(f.source.relation_matrix())), f.source);
}

Subquotient hom_image(const AbHom& f) {
    return span_subgroup(f.matrix, f.target);
}

bool same_subgroup(const Subquotient& a, const Subquotient& b) {
    if (a.ambient != b.ambient) return false;
    return a.span_lattice() == b.span_lattice();
}

} // namespace seventerm
