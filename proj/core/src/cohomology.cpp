#include "seventerm/cohomology.hpp"

#include "seventerm/errors.hpp"

#include <algorithm>
#include <sstream>

namespace seventerm {

bool CohomologyGroup::is_cocycle(const IntVec& cochain) const {
    IntVec df = bar_differential_apply(cs, cochain);
    CochainSpace up = cochain_space(cs.mod, cs.degree + 1);
    return vec_is_zero(up.space.reduce(df));
}

IntVec CohomologyGroup::classify(const IntVec& cocycle) const {
    if (!is_cocycle(cocycle)) throw PreconditionError("classify: argument is not a cocycle");
    return sub.project(cocycle);
}

CohomologyGroup cohomology(const GModule& mod, int degree) {
    if (degree < 0 || degree > 3)
        throw PreconditionError("cohomology: degree " + std::to_string(degree) + " not in 0..3");
    CohomologyGroup h;
    h.cs = cochain_space(mod, degree);
    CochainSpace up = cochain_space(mod, degree + 1);
    IntMatrix d = bar_differential(mod, degree);
    IntMatrix cycles = kernel_mod(d, up.space.row_moduli());
    IntMatrix borders(h.cs.space.gens(), 0);
    if (degree > 0) {
        borders = column_hermite_form(
            bar_differential(mod, degree - 1).hcat(h.cs.space.relation_matrix()));
    }
    h.sub = make_subquotient(cycles, borders, h.cs.space);
    return h;
}

IntVec restrict_cochain(const CochainSpace& from, const IntVec& f, const SubgroupView& sub,
                        const CochainSpace& to) {
    if (from.degree != to.degree) throw ValidationError("restrict_cochain: degree mismatch");
    IntVec out(to.space.gens());
    std::vector<int> parent(to.degree);
    for (std::size_t t = 0; t < to.tuple_count; ++t) {
        std::vector<int> tup = to.tuple_at(t);
        for (int i = 0; i < to.degree; ++i) parent[i] = sub.to_parent[tup[i]];
        to.set_value(out, tup, from.value(f, parent));
    }
    return out;
}

IntVec inflate_cochain(const CochainSpace& from_q, const IntVec& f, const GroupExtension& ext,
                       const AbHom& incl, const CochainSpace& to_g) {
    if (from_q.degree != to_g.degree) throw ValidationError("inflate_cochain: degree mismatch");
    IntVec out(to_g.space.gens());
    std::vector<int> qt(to_g.degree);
    for (std::size_t t = 0; t < to_g.tuple_count; ++t) {
        std::vector<int> tup = to_g.tuple_at(t);
        bool degenerate = false;
        for (int i = 0; i < to_g.degree; ++i) {
            qt[i] = ext.pi[tup[i]];
            if (qt[i] == 0) degenerate = true;
        }
        if (degenerate) continue;
        to_g.set_value(out, tup, incl.apply(from_q.value(f, qt)));
    }
    return out;
}

namespace {

// (x phi)(n) = x phi(x^-1 n x) as a cochain over the subgroup.
IntVec conjugate_h1_cochain(const GModule& mod, const SubgroupView& nview, const CochainSpace& c1n,
                            const IntVec& phi, int x) {
    IntVec out(c1n.space.gens());
    for (std::size_t i = 1; i <= c1n.nonid(); ++i) {
        int n = nview.to_parent[i];
        int inner = mod.group.mul(mod.group.mul(mod.group.inv(x), n), x);
        int isub = nview.from_parent[inner];
        if (isub <= 0) throw InternalError("conjugate_h1_cochain: conjugate left the subgroup");
        c1n.set_value(out, {static_cast<int>(i)}, mod.apply(x, c1n.value(phi, {isub})));
    }
    return out;
}

} // namespace

H1NQModule q_action_on_h1(const GroupExtension& ext, const GModule& mod) {
    H1NQModule r;
    GModule modn = mod.restrict_to(ext.n);
    r.h1n = cohomology(modn, 1);
    const FgAbGroup& h1 = r.h1n.group();

    std::vector<IntMatrix> act(ext.q_order());
    for (std::size_t q = 0; q < ext.q_order(); ++q) {
        IntMatrix m(h1.gens(), h1.gens());
        for (std::size_t j = 0; j < h1.gens(); ++j) {
            IntVec e(h1.gens());
            e[j] = 1;
            IntVec rep = r.h1n.representative(e);
            m.set_col(j, r.h1n.classify(conjugate_h1_cochain(mod, ext.n, r.h1n.cs, rep, ext.sigma[q])));
        }
        act[q] = m;
    }
    // Every lift of q must induce the same class map.
    for (std::size_t g = 0; g < ext.g_order(); ++g) {
        for (std::size_t j = 0; j < h1.gens(); ++j) {
            IntVec e(h1.gens());
            e[j] = 1;
            IntVec rep = r.h1n.representative(e);
            IntVec via_g =
                r.h1n.classify(conjugate_h1_cochain(mod, ext.n, r.h1n.cs, rep, static_cast<int>(g)));
            if (via_g != h1.reduce(act[ext.pi[g]].col(j)))
                throw InternalError("q_action_on_h1: lifts " + std::to_string(g) + " and " +
                                    std::to_string(ext.sigma[ext.pi[g]]) + " of class " +
                                    std::to_string(ext.pi[g]) + " induce different maps on H^1(N,M)");
        }
    }
    r.qmod = GModule::make(ext.q, h1, std::move(act));
    return r;
}

RealizedExtension realize_extension_from_2cocycle(const GModule& mod, const IntVec& f2) {
    if (!mod.coeff.is_finite()) throw PreconditionError("realize_extension: coefficients must be finite");
    CochainSpace c2 = cochain_space(mod, 2);
    if (f2.size() != c2.space.gens()) throw ValidationError("realize_extension: wrong cochain length");
    {
        IntVec df = bar_differential_apply(c2, f2);
        if (!vec_is_zero(cochain_space(mod, 3).space.reduce(df)))
            throw PreconditionError("realize_extension: input is not a 2-cocycle");
    }
    const std::size_t qn = mod.group.order();
    auto elements = mod.coeff.elements();
    const std::size_t an = elements.size();
    if (an * qn > FiniteGroup::kMaxOrder)
        throw PreconditionError("realize_extension: order " + std::to_string(an * qn) + " exceeds table limit");

    // Rank of a canonical element in the enumeration (mixed radix).
    auto a_index = [&](const IntVec& v) {
        Int idx = 0;
        for (std::size_t i = 0; i < v.size(); ++i) idx = idx * mod.coeff.torsion[i] + v[i];
        return static_cast<std::size_t>(idx);
    };

    std::vector<std::vector<int>> table(an * qn, std::vector<int>(an * qn));
    for (std::size_t x = 0; x < an * qn; ++x) {
        const IntVec& a = elements[x / qn];
        int q1 = static_cast<int>(x % qn);
        for (std::size_t y = 0; y < an * qn; ++y) {
            const IntVec& b = elements[y / qn];
            int q2 = static_cast<int>(y % qn);
            IntVec s = mod.coeff.add(mod.coeff.add(a, mod.apply(q1, b)), c2.value(f2, {q1, q2}));
            table[x][y] = static_cast<int>(a_index(s) * qn) + mod.group.mul(q1, q2);
        }
    }
    RealizedExtension re;
    re.e = FiniteGroup::from_multiplication_table(table);
    re.qmod = mod;
    re.proj.resize(an * qn);
    for (std::size_t x = 0; x < an * qn; ++x) re.proj[x] = static_cast<int>(x % qn);
    re.a_embed.resize(an);
    for (std::size_t a = 0; a < an; ++a) re.a_embed[a] = static_cast<int>(a * qn);
    return re;
}

IntVec extension_factor_set(const FiniteGroup& e, const std::vector<int>& proj,
                            const std::vector<int>& a_embed, const GModule& mod) {
    const std::size_t qn = mod.group.order();
    auto elements = mod.coeff.elements();
    const std::size_t an = elements.size();
    if (proj.size() != e.order()) throw ValidationError("classify_extension: proj has wrong length");
    if (a_embed.size() != an) throw ValidationError("classify_extension: embedding has wrong length");
    if (e.order() != an * qn) throw ValidationError("classify_extension: |E| != |A| * |Q|");

    for (std::size_t x = 0; x < e.order(); ++x)
        for (std::size_t y = 0; y < e.order(); ++y)
            if (proj[e.mul(static_cast<int>(x), static_cast<int>(y))] != mod.group.mul(proj[x], proj[y]))
                throw PreconditionError("classify_extension: projection is not a homomorphism at (" +
                                        std::to_string(x) + ", " + std::to_string(y) + ")");
    std::vector<char> hit(qn, 0);
    for (std::size_t x = 0; x < e.order(); ++x) hit[proj[x]] = 1;
    for (std::size_t q = 0; q < qn; ++q)
        if (!hit[q]) throw PreconditionError("classify_extension: projection misses class " + std::to_string(q));

    std::vector<int> back(e.order(), -1); // e index -> enumeration index of A, -1 outside the kernel image
    for (std::size_t a = 0; a < an; ++a) {
        int img = a_embed[a];
        if (img < 0 || static_cast<std::size_t>(img) >= e.order() || back[img] >= 0)
            throw PreconditionError("classify_extension: embedding is not injective into E");
        if (proj[img] != 0)
            throw PreconditionError("classify_extension: embedded element " + std::to_string(a) +
                                    " is outside ker(proj)");
        back[img] = static_cast<int>(a);
    }
    std::size_t kernel_size = 0;
    for (std::size_t x = 0; x < e.order(); ++x)
        if (proj[x] == 0) ++kernel_size;
    if (kernel_size != an)
        throw PreconditionError("classify_extension: embedding does not cover ker(proj)");
    if (a_embed[0] != 0) throw PreconditionError("classify_extension: zero must embed to the identity");
    for (std::size_t a = 0; a < an; ++a)
        for (std::size_t b = 0; b < an; ++b) {
            IntVec sum = mod.coeff.add(elements[a], elements[b]);
            std::size_t s = 0;
            for (std::size_t i = 0; i < sum.size(); ++i)
                s = s * static_cast<std::size_t>(mod.coeff.torsion[i]) + static_cast<std::size_t>(sum[i]);
            if (e.mul(a_embed[a], a_embed[b]) != a_embed[s])
                throw PreconditionError("classify_extension: embedding is not a homomorphism at (" +
                                        std::to_string(a) + ", " + std::to_string(b) + ")");
        }

    // Canonical section: minimal element index in each fiber.
    std::vector<int> sec(qn, -1);
    for (std::size_t x = 0; x < e.order(); ++x)
        if (sec[proj[x]] < 0) sec[proj[x]] = static_cast<int>(x);

    // Conjugation through the section must realize the module action.
    for (std::size_t q = 0; q < qn; ++q)
        for (std::size_t a = 0; a < an; ++a) {
            int lhs = e.conj(sec[q], a_embed[a]);
            IntVec want = mod.apply(static_cast<int>(q), elements[a]);
            if (back[lhs] < 0 || elements[back[lhs]] != want)
                throw PreconditionError("classify_extension: conjugation by the section over class " +
                                        std::to_string(q) + " does not match the module action on element " +
                                        std::to_string(a));
        }

    CochainSpace c2 = cochain_space(mod, 2);
    IntVec f2(c2.space.gens());
    for (std::size_t q1 = 1; q1 < qn; ++q1)
        for (std::size_t q2 = 1; q2 < qn; ++q2) {
            int q12 = mod.group.mul(static_cast<int>(q1), static_cast<int>(q2));
            int v = e.mul(e.mul(sec[q1], sec[q2]), e.inv(sec[q12]));
            if (back[v] < 0) throw InternalError("classify_extension: factor set value outside the kernel");
            c2.set_value(f2, {static_cast<int>(q1), static_cast<int>(q2)}, elements[back[v]]);
        }
    return f2;
}

IntVec classify_group_extension(const FiniteGroup& e, const std::vector<int>& proj,
                                const std::vector<int>& a_embed, const GModule& mod,
                                const CohomologyGroup& h2q) {
    return h2q.classify(extension_factor_set(e, proj, a_embed, mod));
}

Subquotient h2_g_m_1(const CohomologyGroup& h2g, const GroupExtension& ext, const GModule& mod,
                     const CohomologyGroup& h2n) {
    GModule modn = mod.restrict_to(ext.n);
    IntMatrix res(h2n.group().gens(), h2g.group().gens());
    for (std::size_t j = 0; j < h2g.group().gens(); ++j) {
        IntVec e(h2g.group().gens());
        e[j] = 1;
        IntVec r = restrict_cochain(h2g.cs, h2g.representative(e), ext.n, h2n.cs);
        res.set_col(j, h2n.classify(r));
    }
    AbHom f{h2g.group(), h2n.group(), res};
    return hom_kernel(f);
}

ModuleExtension module_extension_from_cocycle(const CochainSpace& c1n, const IntVec& phi) {
    if (c1n.degree != 1) throw ValidationError("module_extension: need a degree-1 space");
    {
        IntVec df = bar_differential_apply(c1n, phi);
        if (!vec_is_zero(cochain_space(c1n.mod, 2).space.reduce(df)))
            throw PreconditionError("module_extension: phi is not a 1-cocycle");
    }
    const GModule& modn = c1n.mod;
    const std::size_t k = modn.coeff.gens();
    FgAbGroup em_coeff;
    em_coeff.torsion = modn.coeff.torsion;
    em_coeff.free_rank = modn.coeff.free_rank + 1;

    std::vector<IntMatrix> act(modn.group.order());
    for (std::size_t n = 0; n < modn.group.order(); ++n) {
        IntMatrix a(k + 1, k + 1);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) a.at(i, j) = modn.act[n].at(i, j);
        IntVec v = c1n.value(phi, {static_cast<int>(n)});
        for (std::size_t i = 0; i < k; ++i) a.at(i, k) = v[i];
        a.at(k, k) = 1;
        act[n] = a;
    }
    // make() re-proves the cocycle identity as multiplicativity of the action.
    return {GModule::make(modn.group, em_coeff, std::move(act)), phi};
}

IntVec cocycle_from_module_extension(const ModuleExtension& me, const CochainSpace& c1n) {
    const std::size_t k = c1n.mod.coeff.gens();
    IntVec phi(c1n.space.gens());
    IntVec one(k + 1);
    one[k] = 1;
    for (std::size_t n = 1; n < me.em.group.order(); ++n) {
        IntVec img = me.em.apply(static_cast<int>(n), one);
        if (img[k] != 1) throw InternalError("cocycle_from_module_extension: fiber coordinate moved");
        c1n.set_value(phi, {static_cast<int>(n)}, IntVec(img.begin(), img.begin() + k));
    }
    return phi;
}

} // namespace seventerm
