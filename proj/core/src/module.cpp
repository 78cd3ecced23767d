#include "seventerm/module.hpp"

#include "seventerm/errors.hpp"

#include <sstream>

namespace seventerm {

namespace {

bool hom_eq(const FgAbGroup& coeff, const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (!vec_is_zero(coeff.reduce(vec_sub(a.col(j), b.col(j))))) return false;
    return true;
}

} // namespace

GModule GModule::make(FiniteGroup group, FgAbGroup coeff, std::vector<IntMatrix> act) {
    if (act.size() != group.order()) throw ValidationError("GModule: need one action matrix per element");
    const std::size_t k = coeff.gens();
    for (std::size_t g = 0; g < act.size(); ++g) {
        if (act[g].rows() != k || act[g].cols() != k)
            throw ValidationError("GModule: action matrix for element " + std::to_string(g) + " has wrong shape");
        std::string w;
        AbHom h{coeff, coeff, act[g]};
        if (!h.well_defined(&w))
            throw ValidationError("GModule: action of element " + std::to_string(g) + " is not well defined: " + w);
    }
    if (!hom_eq(coeff, act[0], IntMatrix::identity(k)))
        throw ValidationError("GModule: identity must act as the identity matrix");
    for (std::size_t a = 0; a < act.size(); ++a)
        for (std::size_t b = 0; b < act.size(); ++b) {
            int ab = group.mul(static_cast<int>(a), static_cast<int>(b));
            if (!hom_eq(coeff, act[a] * act[b], act[ab])) {
                std::ostringstream os;
                os << "GModule: act(" << a << ")act(" << b << ") != act(" << ab << ")";
                throw ValidationError(os.str());
            }
        }
    GModule m;
    m.group = std::move(group);
    m.coeff = std::move(coeff);
    m.act = std::move(act);
    return m;
}

GModule GModule::trivial(FiniteGroup group, FgAbGroup coeff) {
    std::vector<IntMatrix> act(group.order(), IntMatrix::identity(coeff.gens()));
    return make(std::move(group), std::move(coeff), std::move(act));
}

bool GModule::is_trivial_action() const {
    IntMatrix id = IntMatrix::identity(coeff.gens());
    for (const auto& a : act)
        if (!hom_eq(coeff, a, id)) return false;
    return true;
}

GModule GModule::restrict_to(const SubgroupView& sub) const {
    std::vector<IntMatrix> a;
    a.reserve(sub.order());
    for (int p : sub.to_parent) a.push_back(act[p]);
    return make(sub.group, coeff, std::move(a));
}

GModule GModule::through_quotient(const GroupExtension& ext) const {
    if (!(ext.g == group)) throw ValidationError("through_quotient: extension is over a different group");
    std::vector<IntMatrix> a(ext.q_order());
    for (std::size_t q = 0; q < ext.q_order(); ++q) a[q] = act[ext.sigma[q]];
    // Any two lifts of q must act identically on these coefficients.
    for (std::size_t g = 0; g < group.order(); ++g)
        if (!hom_eq(coeff, act[g], a[ext.pi[g]]))
            throw PreconditionError("through_quotient: lifts of class " + std::to_string(ext.pi[g]) +
                                    " act differently; the action does not factor through the quotient");
    return make(ext.q, coeff, std::move(a));
}

InvariantSubgroup invariants(const GModule& mod, const std::vector<int>& elems) {
    const std::size_t k = mod.coeff.gens();
    IntMatrix id = IntMatrix::identity(k);
    IntMatrix stacked(0, k);
    IntVec moduli;
    for (int e : elems) {
        if (e == 0) continue;
        stacked = stacked.vcat(mod.act[e] - id);
        IntVec m = mod.coeff.row_moduli();
        moduli.insert(moduli.end(), m.begin(), m.end());
    }
    IntMatrix gens = stacked.rows() ? kernel_mod(stacked, moduli) : IntMatrix::identity(k);
    return {span_subgroup(gens, mod.coeff)};
}

GModule invariants_as_q_module(const GroupExtension& ext, const GModule& mod, const InvariantSubgroup& inv) {
    const FgAbGroup mn = inv.group();
    AbHom incl = inv.inclusion();
    std::vector<IntMatrix> act(ext.q_order());
    for (std::size_t q = 0; q < ext.q_order(); ++q) {
        IntMatrix m(mn.gens(), mn.gens());
        for (std::size_t j = 0; j < mn.gens(); ++j) {
            IntVec e(mn.gens());
            e[j] = 1;
            m.set_col(j, inv.sub.project(mod.apply(ext.sigma[q], incl.apply(e))));
        }
        act[q] = m;
    }
    // Lift independence: every g must act on M^N as its coset does.
    for (std::size_t g = 0; g < ext.g_order(); ++g)
        for (std::size_t j = 0; j < mn.gens(); ++j) {
            IntVec e(mn.gens());
            e[j] = 1;
            IntVec via_g = inv.sub.project(mod.apply(static_cast<int>(g), incl.apply(e)));
            IntVec via_q = mn.reduce(act[ext.pi[g]].col(j));
            if (via_g != via_q)
                throw InternalError("invariants_as_q_module: lift " + std::to_string(g) +
                                    " acts differently from sigma of its coset");
        }
    return GModule::make(ext.q, mn, std::move(act));
}

int SemidirectProduct::index_of(const IntVec& m, int g) const {
    IntVec r = mod.coeff.reduce(m);
    // Mixed-radix rank; coefficient enumeration is canonical.
    Int idx = 0;
    for (std::size_t i = 0; i < r.size(); ++i) idx = idx * mod.coeff.torsion[i] + r[i];
    return static_cast<int>(idx * static_cast<long long>(mod.group.order())) + g;
}

SemidirectProduct semidirect_product(const GModule& mod) {
    if (!mod.coeff.is_finite()) throw PreconditionError("semidirect_product: coefficients must be finite");
    Int total = mod.coeff.order() * Int(mod.group.order());
    if (total > FiniteGroup::kMaxOrder)
        throw PreconditionError("semidirect_product: order " + total.str() + " exceeds table limit " +
                                std::to_string(FiniteGroup::kMaxOrder));
    SemidirectProduct sd;
    sd.mod = mod;
    sd.m_elements = mod.coeff.elements();
    const std::size_t go = mod.group.order();
    const std::size_t n = sd.m_elements.size() * go;
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const IntVec& mi = sd.m_elements[i / go];
        int gi = static_cast<int>(i % go);
        for (std::size_t j = 0; j < n; ++j) {
            const IntVec& mj = sd.m_elements[j / go];
            int gj = static_cast<int>(j % go);
            IntVec m = mod.coeff.add(mi, mod.apply(gi, mj));
            table[i][j] = sd.index_of(m, mod.group.mul(gi, gj));
        }
    }
    sd.group = FiniteGroup::from_multiplication_table(table);
    return sd;
}

} // namespace seventerm
