#include "seventerm/cochain.hpp"

#include "seventerm/errors.hpp"

namespace seventerm {

std::vector<int> CochainSpace::tuple_at(std::size_t t) const {
    std::vector<int> tuple(degree);
    for (int i = degree - 1; i >= 0; --i) {
        tuple[i] = static_cast<int>(t % nonid()) + 1;
        t /= nonid();
    }
    return tuple;
}

std::size_t CochainSpace::tuple_index(const std::vector<int>& tuple) const {
    std::size_t t = 0;
    for (int g : tuple) {
        if (g <= 0 || static_cast<std::size_t>(g) > nonid())
            throw ValidationError("tuple_index: entry out of range or identity");
        t = t * nonid() + static_cast<std::size_t>(g - 1);
    }
    return t;
}

IntVec CochainSpace::value(const IntVec& cochain, const std::vector<int>& tuple) const {
    const std::size_t k = mod.coeff.gens();
    for (int g : tuple)
        if (g == 0) return IntVec(k);
    std::size_t t = tuple_index(tuple);
    IntVec v(k);
    for (std::size_t j = 0; j < k; ++j) v[j] = cochain[t * k + j];
    return mod.coeff.reduce(std::move(v));
}

void CochainSpace::set_value(IntVec& cochain, const std::vector<int>& tuple, const IntVec& v) const {
    const std::size_t k = mod.coeff.gens();
    IntVec r = mod.coeff.reduce(v);
    std::size_t t = tuple_index(tuple);
    for (std::size_t j = 0; j < k; ++j) cochain[t * k + j] = r[j];
}

CochainSpace cochain_space(const GModule& mod, int degree) {
    if (degree < 0 || degree > kMaxCochainDegree)
        throw PreconditionError("cochain_space: degree " + std::to_string(degree) + " outside supported range 0.." +
                                std::to_string(kMaxCochainDegree));
    CochainSpace cs;
    cs.mod = mod;
    cs.degree = degree;
    cs.tuple_count = 1;
    const std::size_t k = mod.coeff.gens();
    for (int i = 0; i < degree; ++i) {
        cs.tuple_count *= cs.nonid();
        if (cs.tuple_count * std::max<std::size_t>(k, 1) > kMaxCochainCoords)
            throw PreconditionError("cochain_space: coordinate count exceeds limit " +
                                    std::to_string(kMaxCochainCoords));
    }
    for (std::size_t t = 0; t < cs.tuple_count; ++t)
        for (const auto& d : mod.coeff.torsion) cs.space.torsion.push_back(d);
    cs.space.free_rank = cs.tuple_count * mod.coeff.free_rank;
    // Coordinate layout above assumes torsion-first within each tuple block,
    // matching FgAbGroup's canonical form only when the module has no free
    // part or no torsion; mixed modules need a uniform layout.
    if (mod.coeff.free_rank > 0 && !mod.coeff.torsion.empty())
        throw PreconditionError("cochain_space: mixed torsion/free coefficient modules are not supported");
    return cs;
}

IntVec bar_differential_apply(const CochainSpace& cs, const IntVec& f) {
    if (cs.degree + 1 > kMaxCochainDegree)
        throw PreconditionError("bar_differential_apply: degree above cap");
    if (f.size() != cs.space.gens()) throw ValidationError("bar_differential_apply: wrong cochain length");
    CochainSpace out = cochain_space(cs.mod, cs.degree + 1);
    const int n = cs.degree;
    IntVec df(out.space.gens());
    std::vector<int> sub(n);
    for (std::size_t t = 0; t < out.tuple_count; ++t) {
        std::vector<int> tup = out.tuple_at(t);
        IntVec acc = cs.mod.apply(tup[0], cs.value(f, std::vector<int>(tup.begin() + 1, tup.end())));
        int sign = 1;
        for (int i = 1; i <= n; ++i) {
            sign = -sign;
            for (int j = 0; j < n; ++j) {
                if (j < i - 1)
                    sub[j] = tup[j];
                else if (j == i - 1)
                    sub[j] = cs.mod.group.mul(tup[i - 1], tup[i]);
                else
                    sub[j] = tup[j + 1];
            }
            IntVec v = cs.value(f, sub);
            acc = sign > 0 ? vec_add(acc, v) : vec_sub(acc, v);
        }
        sign = -sign;
        IntVec last = cs.value(f, std::vector<int>(tup.begin(), tup.end() - 1));
        acc = sign > 0 ? vec_add(acc, last) : vec_sub(acc, last);
        out.set_value(df, tup, acc);
    }
    return df;
}

IntMatrix bar_differential(const GModule& mod, int degree) {
    CochainSpace cs = cochain_space(mod, degree);
    CochainSpace out = cochain_space(mod, degree + 1);
    IntMatrix m(out.space.gens(), cs.space.gens());
    IntVec basis(cs.space.gens());
    for (std::size_t c = 0; c < cs.space.gens(); ++c) {
        basis[c] = 1;
        IntVec img = bar_differential_apply(cs, basis);
        basis[c] = 0;
        for (std::size_t r = 0; r < out.space.gens(); ++r) m.at(r, c) = img[r];
    }
    return m;
}

} // namespace seventerm
