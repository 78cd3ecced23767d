#include "seventerm/spectral.hpp"

#include "seventerm/errors.hpp"
#include "seventerm/smith.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <utility>

namespace seventerm {

namespace {

std::string show(const IntVec& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ")";
    return os.str();
}

IntVec unit_vec(std::size_t len, std::size_t i) {
    IntVec e(len);
    e[i] = 1;
    return e;
}

Int small_rand(std::mt19937_64& rng) { return Int(static_cast<int>(rng() % 5)); }

// Inverse of a bijective homomorphism by element search; callers verify
// bijectivity first, so failure here is an internal inconsistency.
AbHom invert_bijective(const AbHom& f, const std::string& what) {
    auto elems = f.source.elements();
    IntMatrix m(f.source.gens(), f.target.gens());
    for (std::size_t j = 0; j < f.target.gens(); ++j) {
        IntVec e = f.target.reduce(unit_vec(f.target.gens(), j));
        bool found = false;
        for (const auto& x : elems)
            if (f.apply(x) == e) {
                m.set_col(j, x);
                found = true;
                break;
            }
        if (!found) throw InternalError(what + ": no preimage for generator " + std::to_string(j));
    }
    AbHom inv{f.target, f.source, std::move(m)};
    std::string w;
    if (!inv.well_defined(&w)) throw InternalError(what + ": inverse is not well defined: " + w);
    return inv;
}

} // namespace

SpectralOracle::SpectralOracle(const Pipeline& pl) : pl_(pl) {
    if (!pl_.mod.coeff.is_finite()) throw PreconditionError("spectral: coefficients must be a finite group");
}

const CochainSpace& SpectralOracle::cochains(int n) {
    auto it = cs_.find(n);
    if (it != cs_.end()) return it->second;
    return cs_.emplace(n, cochain_space(pl_.mod, n)).first->second;
}

const PatternSpace& SpectralOracle::space(int n, int p) {
    const auto key = std::make_pair(n, p);
    auto it = spaces_.find(key);
    if (it != spaces_.end()) return it->second;
    if (n < 0 || p < 0) throw PreconditionError("spectral: negative degree or level");

    const CochainSpace& cs = cochains(n);
    const std::size_t k = pl_.mod.coeff.gens();
    const IntVec mods = pl_.mod.coeff.row_moduli();
    const std::size_t cn = cs.space.gens();

    PatternSpace ps;
    ps.degree = n;
    ps.level = p;

    if (p > n) {
        ps.class_count = 0;
        ps.expand = IntMatrix(cn, 0);
        ps.compress = IntMatrix(0, cn);
        for (std::size_t t = 0; t < cs.tuple_count; ++t)
            for (std::size_t j = 0; j < k; ++j)
                ps.membership.push_back({t * k + j, -1, mods[j]});
        return spaces_.emplace(key, std::move(ps)).first->second;
    }

    const GroupExtension& ext = pl_.ext;
    const std::size_t gn = cs.nonid();
    const std::size_t qn = ext.q_order() - 1;
    const int lead_len = n - p;

    std::vector<std::vector<int>> coset(qn);
    for (std::size_t g = 0; g < ext.g.order(); ++g)
        if (ext.pi[g] != 0) coset[static_cast<std::size_t>(ext.pi[g]) - 1].push_back(static_cast<int>(g));

    std::size_t count = 1;
    for (int i = 0; i < lead_len; ++i) count *= gn;
    for (int i = 0; i < p; ++i) count *= qn;
    ps.class_count = count;

    for (std::size_t c = 0; c < count; ++c)
        for (const auto& d : pl_.mod.coeff.torsion) ps.space.torsion.push_back(d);
    ps.space.free_rank = count * pl_.mod.coeff.free_rank;

    ps.expand = IntMatrix(cn, count * k);
    ps.compress = IntMatrix(count * k, cn);
    std::vector<char> covered(cs.tuple_count, 0);

    std::vector<int> rep(n);
    std::vector<int> lead(lead_len), cos(p);
    for (std::size_t c = 0; c < count; ++c) {
        std::size_t rem = c;
        for (int i = p - 1; i >= 0; --i) {
            cos[i] = static_cast<int>(rem % qn) + 1;
            rem /= qn;
        }
        for (int i = lead_len - 1; i >= 0; --i) {
            lead[i] = static_cast<int>(rem % gn) + 1;
            rem /= gn;
        }
        for (int i = 0; i < lead_len; ++i) rep[i] = lead[i];
        for (int i = 0; i < p; ++i) rep[lead_len + i] = ext.sigma[cos[i]];
        const std::size_t rt = cs.tuple_index(rep);

        std::vector<int> tup = rep;
        std::vector<std::size_t> pick(p, 0);
        while (true) {
            for (int i = 0; i < p; ++i) tup[lead_len + i] = coset[static_cast<std::size_t>(cos[i]) - 1][pick[i]];
            const std::size_t tt = cs.tuple_index(tup);
            if (covered[tt]) throw InternalError("spectral: pattern classes overlap");
            covered[tt] = 1;
            for (std::size_t j = 0; j < k; ++j) {
                ps.expand.at(tt * k + j, c * k + j) = 1;
                if (tt != rt)
                    ps.membership.push_back({tt * k + j, static_cast<std::ptrdiff_t>(rt * k + j), mods[j]});
            }
            int i = p - 1;
            for (; i >= 0; --i) {
                if (++pick[i] < coset[static_cast<std::size_t>(cos[i]) - 1].size()) break;
                pick[i] = 0;
            }
            if (i < 0) break;
        }
        for (std::size_t j = 0; j < k; ++j) ps.compress.at(c * k + j, rt * k + j) = 1;
    }
    for (std::size_t t = 0; t < cs.tuple_count; ++t)
        if (!covered[t])
            for (std::size_t j = 0; j < k; ++j) ps.membership.push_back({t * k + j, -1, mods[j]});
    return spaces_.emplace(key, std::move(ps)).first->second;
}

bool SpectralOracle::member(const PatternSpace& ps, const IntVec& v, bool exact) {
    for (const auto& r : ps.membership) {
        Int diff = v[r.a] - (r.b >= 0 ? v[static_cast<std::size_t>(r.b)] : Int(0));
        if (diff == 0) continue;
        if (exact || r.modulus == 0) return false;
        if (diff % r.modulus != 0) return false;
    }
    return true;
}

const IntMatrix& SpectralOracle::level_kernel(int n, int p, int p2) {
    const std::array<int, 3> key{n, p, p2};
    auto it = level_kernels_.find(key);
    if (it != level_kernels_.end()) return it->second;

    const PatternSpace& src = space(n, p);
    const PatternSpace& dst = space(n + 1, p2);
    const CochainSpace& cs = cochains(n);
    const std::size_t gens = src.space.gens();

    IntMatrix a(dst.membership.size(), gens);
    IntVec mods(dst.membership.size());
    for (std::size_t i = 0; i < dst.membership.size(); ++i) mods[i] = dst.membership[i].modulus;
    for (std::size_t j = 0; j < gens; ++j) {
        IntVec df = bar_differential_apply(cs, src.expand.col(j));
        for (std::size_t i = 0; i < dst.membership.size(); ++i) {
            const auto& r = dst.membership[i];
            a.at(i, j) = df[r.a] - (r.b >= 0 ? df[static_cast<std::size_t>(r.b)] : Int(0));
        }
    }
    return level_kernels_.emplace(key, kernel_mod_rowspace(a, mods)).first->second;
}

const SpectralPage& SpectralOracle::page(int p, int q) {
    const auto key = std::make_pair(p, q);
    auto it = pages_.find(key);
    if (it != pages_.end()) return it->second;
    const int n = p + q;
    if (p < 0 || q < 0 || n > 3)
        throw PreconditionError("spectral: page (" + std::to_string(p) + ", " + std::to_string(q) +
                                ") is outside the supported range");
    const std::string label = "page (" + std::to_string(p) + ", " + std::to_string(q) + ")";

    const PatternSpace& src = space(n, p);
    IntMatrix cycles = level_kernel(n, p, p + 2);

    std::vector<IntVec> bcols;
    if (p + 1 <= n) {
        // the deeper numerator one level up, carried into level-p coordinates
        const PatternSpace& up = space(n, p + 1);
        IntMatrix zu = level_kernel(n, p + 1, p + 2);
        IntMatrix carried = (src.compress * up.expand) * zu;
        for (std::size_t j = 0; j < carried.cols(); ++j) bcols.push_back(carried.col(j));
    }
    if (n >= 1) {
        // differentials of everything one level down whose image lands here
        const int pl_low = std::max(p - 1, 0);
        const PatternSpace& low = space(n - 1, pl_low);
        IntMatrix zl = level_kernel(n - 1, pl_low, p);
        for (std::size_t j = 0; j < zl.cols(); ++j) {
            IntVec df = cochains(n).space.reduce(bar_differential_apply(cochains(n - 1), low.expand * zl.col(j)));
            if (!member(src, df, true)) throw InternalError(label + ": border differential left the level");
            bcols.push_back(src.compress * df);
        }
    }
    IntMatrix borders(src.space.gens(), 0);
    if (!bcols.empty()) borders = IntMatrix::from_columns(src.space.gens(), bcols);

    SpectralPage pg;
    pg.p = p;
    pg.q = q;
    pg.borders = borders;
    pg.sub = make_subquotient(cycles, borders, src.space);
    return pages_.emplace(key, std::move(pg)).first->second;
}

std::optional<IntVec> SpectralOracle::page_class(const SpectralPage& pg, const IntVec& cochain) {
    const PatternSpace& ps = space(pg.p + pg.q, pg.p);
    if (!member(ps, cochain, true)) return std::nullopt;
    return pg.sub.try_project(ps.compress * cochain);
}

IntVec SpectralOracle::page_representative(const SpectralPage& pg, const IntVec& cls) {
    const PatternSpace& ps = space(pg.p + pg.q, pg.p);
    return cochains(pg.p + pg.q).space.reduce(ps.expand * pg.sub.lift(cls));
}

BuiltMap SpectralOracle::d2(int p, int q, const MapBuildOptions& opt) {
    const SpectralPage& srcpg = page(p, q);
    const SpectralPage& dstpg = page(p + 2, q - 1);
    const PatternSpace& ssp = space(p + q, p);
    const PatternSpace& dsp = space(p + q + 1, p + 2);
    const CochainSpace& cs = cochains(p + q);
    const std::string label = "d2(" + std::to_string(p) + "," + std::to_string(q) + ")";

    auto send = [&](const IntVec& cochain) -> IntVec {
        IntVec df = cochains(p + q + 1).space.reduce(bar_differential_apply(cs, cochain));
        if (!member(dsp, df, true)) throw InternalError(label + ": image of a numerator element missed the level");
        auto cls = dstpg.sub.try_project(dsp.compress * df);
        if (!cls) throw InternalError(label + ": image is outside the target numerator");
        return *cls;
    };

    BuiltMap out;
    IntMatrix m(dstpg.sub.group.gens(), srcpg.sub.group.gens());
    std::mt19937_64 rng(opt.seed);
    bool stable = true;
    std::string wit;
    int tried = 0;
    for (std::size_t j = 0; j < srcpg.sub.group.gens(); ++j) {
        IntVec rep = page_representative(srcpg, unit_vec(srcpg.sub.group.gens(), j));
        IntVec cls = send(rep);
        m.set_col(j, cls);
        for (int t = 0; t < opt.perturbations && srcpg.borders.cols() > 0; ++t) {
            IntVec r(srcpg.borders.cols());
            for (auto& x : r) x = small_rand(rng);
            IntVec rep2 = cs.space.reduce(vec_add(rep, ssp.expand * (srcpg.borders * r)));
            ++tried;
            if (send(rep2) != cls && stable) {
                stable = false;
                wit = "generator " + std::to_string(j) + ", perturbation " + std::to_string(t);
            }
        }
    }
    out.hom = AbHom{srcpg.sub.group, dstpg.sub.group, std::move(m)};
    std::string w;
    out.checks.push_back(out.hom.well_defined(&w) ? Verdict::passed(label + " respects the page relations")
                                                  : Verdict::failed(label + " respects the page relations", w));
    out.checks.push_back(stable ? Verdict::passed(label + " is independent of the representative",
                                                  std::to_string(tried) + " re-representations")
                                : Verdict::failed(label + " is independent of the representative", wit));
    return out;
}

BuiltMap SpectralOracle::row_edge(int p) {
    if (p != 2 && p != 3) throw PreconditionError("row_edge: only degrees 2 and 3 are identified");
    const CohomologyGroup& hq = (p == 2) ? pl_.h2q : pl_.h3q;
    const SpectralPage& pg = page(p, 0);
    const PatternSpace& ps = space(p, p);
    const std::string label = "row edge H^" + std::to_string(p) + "(Q, M^N) -> (" + std::to_string(p) + ", 0)";
    const AbHom incl = pl_.mn.inclusion();

    BuiltMap out;
    bool built = true;
    std::string wit;
    IntMatrix m(pg.sub.group.gens(), hq.group().gens());
    for (std::size_t j = 0; j < hq.group().gens() && built; ++j) {
        IntVec f = hq.representative(unit_vec(hq.group().gens(), j));
        IntVec infl = cochains(p).space.reduce(inflate_cochain(hq.cs, f, pl_.ext, incl, cochains(p)));
        if (!member(ps, infl, true)) {
            built = false;
            wit = "inflation of generator " + std::to_string(j) + " is not in the level";
            break;
        }
        auto cls = pg.sub.try_project(ps.compress * infl);
        if (!cls) {
            built = false;
            wit = "inflation of generator " + std::to_string(j) + " is outside the numerator";
            break;
        }
        m.set_col(j, *cls);
    }
    out.hom = AbHom{hq.group(), pg.sub.group, std::move(m)};
    if (!built) {
        out.checks.push_back(Verdict::failed(label, wit));
        return out;
    }
    std::string w;
    out.checks.push_back(out.hom.well_defined(&w) ? Verdict::passed(label + " is well defined")
                                                  : Verdict::failed(label + " is well defined", w));
    const bool inj = hom_kernel(out.hom).group.order() == 1;
    const bool sur = hom_image(out.hom).group.order() == pg.sub.group.order();
    out.checks.push_back(inj && sur ? Verdict::passed(label + " is an isomorphism")
                                    : Verdict::failed(label + " is an isomorphism",
                                                      inj ? "not surjective" : "kernel is nontrivial"));
    return out;
}

BuiltMap SpectralOracle::col_edge() {
    const SpectralPage& pg = page(0, 1);
    const std::string label = "column edge (0, 1) -> H^1(N, M)^Q";

    BuiltMap out;
    bool built = true;
    std::string wit;
    IntMatrix m(pl_.h1n_fix.group().gens(), pg.sub.group.gens());
    for (std::size_t j = 0; j < pg.sub.group.gens() && built; ++j) {
        IntVec x = page_representative(pg, unit_vec(pg.sub.group.gens(), j));
        IntVec xn = restrict_cochain(cochains(1), x, pl_.ext.n, pl_.h1n.cs);
        if (!pl_.h1n.is_cocycle(xn)) {
            built = false;
            wit = "restriction of generator " + std::to_string(j) + " is not closed";
            break;
        }
        auto inv = pl_.h1n_fix.sub.try_project(pl_.h1n.classify(xn));
        if (!inv) {
            built = false;
            wit = "restricted class of generator " + std::to_string(j) + " is not invariant";
            break;
        }
        m.set_col(j, *inv);
    }
    out.hom = AbHom{pg.sub.group, pl_.h1n_fix.group(), std::move(m)};
    if (!built) {
        out.checks.push_back(Verdict::failed(label, wit));
        return out;
    }
    std::string w;
    out.checks.push_back(out.hom.well_defined(&w) ? Verdict::passed(label + " is well defined")
                                                  : Verdict::failed(label + " is well defined", w));
    const bool inj = hom_kernel(out.hom).group.order() == 1;
    const bool sur = hom_image(out.hom).group.order() == pl_.h1n_fix.group().order();
    out.checks.push_back(inj && sur ? Verdict::passed(label + " is an isomorphism")
                                    : Verdict::failed(label + " is an isomorphism",
                                                      inj ? "not surjective" : "kernel is nontrivial"));
    return out;
}

BuiltMap SpectralOracle::h1_edge() {
    const SpectralPage& pg = page(1, 1);
    const PatternSpace& ps = space(2, 1);
    const CochainSpace& c2 = cochains(2);
    const std::string label = "page edge (1, 1) -> H^1(Q, H^1(N, M))";
    const std::size_t nq = pl_.ext.q_order();

    // A level-1 numerator cochain x, sliced along a fixed coset member y:
    // n -> -x(n, y) is a 1-cocycle of N, and q -> [n -> -x(n, sigma(q))] is
    // a 1-cocycle of Q in the classes. Both claims are re-verified here.
    auto send = [&](const IntVec& x, std::string* why) -> std::optional<IntVec> {
        IntVec psi(pl_.h1qh1n.cs.space.gens());
        for (std::size_t qq = 1; qq < nq; ++qq) {
            IntVec phi(pl_.h1n.cs.space.gens());
            for (std::size_t ns = 1; ns < pl_.ext.n_order(); ++ns) {
                IntVec v = c2.value(x, {pl_.ext.n.to_parent[ns], pl_.ext.sigma[qq]});
                pl_.h1n.cs.set_value(phi, {static_cast<int>(ns)}, vec_neg(v));
            }
            if (!pl_.h1n.is_cocycle(phi)) {
                if (why) *why = "slice at class " + std::to_string(qq) + " is not a cocycle of N";
                return std::nullopt;
            }
            pl_.h1qh1n.cs.set_value(psi, {static_cast<int>(qq)}, pl_.h1n.classify(phi));
        }
        if (!pl_.h1qh1n.is_cocycle(psi)) {
            if (why) *why = "sliced classes do not form a cocycle of Q";
            return std::nullopt;
        }
        return pl_.h1qh1n.classify(psi);
    };

    BuiltMap out;
    bool built = true;
    bool stable = true;
    std::string wit, swit;
    IntMatrix m(pl_.h1qh1n.group().gens(), pg.sub.group.gens());
    std::mt19937_64 rng(MapBuildOptions{}.seed);
    for (std::size_t j = 0; j < pg.sub.group.gens() && built; ++j) {
        IntVec rep = page_representative(pg, unit_vec(pg.sub.group.gens(), j));
        std::string why;
        auto cls = send(rep, &why);
        if (!cls) {
            built = false;
            wit = "generator " + std::to_string(j) + ": " + why;
            break;
        }
        m.set_col(j, *cls);
        for (int t = 0; t < 3 && pg.borders.cols() > 0; ++t) {
            IntVec r(pg.borders.cols());
            for (auto& x : r) x = small_rand(rng);
            IntVec rep2 = c2.space.reduce(vec_add(rep, ps.expand * (pg.borders * r)));
            auto cls2 = send(rep2, &why);
            if (!cls2 || *cls2 != *cls) {
                stable = false;
                if (swit.empty()) swit = "generator " + std::to_string(j) + ", perturbation " + std::to_string(t);
            }
        }
    }
    out.hom = AbHom{pg.sub.group, pl_.h1qh1n.group(), std::move(m)};
    if (!built) {
        out.checks.push_back(Verdict::failed(label, wit));
        return out;
    }
    std::string w;
    out.checks.push_back(out.hom.well_defined(&w) ? Verdict::passed(label + " is well defined")
                                                  : Verdict::failed(label + " is well defined", w));
    out.checks.push_back(stable ? Verdict::passed(label + " is independent of the representative")
                                : Verdict::failed(label + " is independent of the representative", swit));
    const bool inj = hom_kernel(out.hom).group.order() == 1;
    const bool sur = hom_image(out.hom).group.order() == pl_.h1qh1n.group().order();
    out.checks.push_back(inj && sur ? Verdict::passed(label + " is an isomorphism")
                                    : Verdict::failed(label + " is an isomorphism",
                                                      inj ? "not surjective" : "kernel is nontrivial"));
    return out;
}

std::vector<Verdict> SpectralOracle::self_check() {
    std::vector<Verdict> out;
    {
        bool ok = true;
        std::string wit;
        for (int n = 0; n <= 2 && ok; ++n) {
            const CochainSpace& cs = cochains(n);
            const CochainSpace& cs1 = cochains(n + 1);
            for (std::size_t j = 0; j < cs.space.gens() && ok; ++j) {
                IntVec dd = bar_differential_apply(cs1, bar_differential_apply(cs, unit_vec(cs.space.gens(), j)));
                if (!vec_is_zero(dd)) {
                    ok = false;
                    wit = "degree " + std::to_string(n) + ", generator " + std::to_string(j);
                }
            }
        }
        out.push_back(ok ? Verdict::passed("the differential squares to zero integrally in degrees 0..2")
                         : Verdict::failed("the differential squares to zero integrally in degrees 0..2", wit));
    }
    for (int n = 1; n <= 3; ++n)
        for (int p = 1; p <= n; ++p) {
            const PatternSpace& ps = space(n, p);
            const PatternSpace& ps1 = space(n + 1, p);
            bool ok = true;
            std::string wit;
            for (std::size_t j = 0; j < ps.space.gens() && ok; ++j) {
                IntVec df = bar_differential_apply(cochains(n), ps.expand.col(j));
                if (!member(ps1, df, true)) {
                    ok = false;
                    wit = "generator " + std::to_string(j);
                }
            }
            const std::string name = "level " + std::to_string(p) + " of degree " + std::to_string(n) +
                                     " is carried into level " + std::to_string(p) + " integrally";
            out.push_back(ok ? Verdict::passed(name) : Verdict::failed(name, wit));
        }
    return out;
}

Subquotient SpectralOracle::h2_filtration(int p) {
    const PatternSpace& ps = space(2, p);
    const IntMatrix& z = level_kernel(2, p, 4); // level 4 of degree 3 is zero: dx = 0 mod torsion
    std::vector<IntVec> cols;
    for (std::size_t j = 0; j < z.cols(); ++j) {
        IntVec f = cochains(2).space.reduce(ps.expand * z.col(j));
        if (!pl_.h2g.is_cocycle(f)) throw InternalError("h2_filtration: kernel vector is not a cocycle");
        cols.push_back(pl_.h2g.classify(f));
    }
    IntMatrix gens(pl_.h2g.group().gens(), 0);
    if (!cols.empty()) gens = IntMatrix::from_columns(pl_.h2g.group().gens(), cols);
    return span_subgroup(gens, pl_.h2g.group());
}

BuiltMap build_f1(SpectralOracle& so, const MapBuildOptions& opt) {
    const Pipeline& pl = so.pl();
    const SpectralPage& pg = so.page(1, 1);
    const PatternSpace& ps = so.space(2, 1);
    const CochainSpace& c2 = so.cochains(2);
    const std::string label = "level-1 re-representation H^2(G, M)_1 -> (1, 1)";

    const IntMatrix d1 = bar_differential(pl.mod, 1);
    IntMatrix a(ps.membership.size(), d1.cols());
    IntVec mods(ps.membership.size());
    for (std::size_t i = 0; i < ps.membership.size(); ++i) {
        const auto& r = ps.membership[i];
        mods[i] = r.modulus;
        for (std::size_t j = 0; j < d1.cols(); ++j)
            a.at(i, j) = d1.at(r.a, j) - (r.b >= 0 ? d1.at(static_cast<std::size_t>(r.b), j) : Int(0));
    }

    // Push a cocycle into the level by a coboundary, then read its class.
    auto to_level = [&](const IntVec& f) -> std::optional<IntVec> {
        IntVec b(ps.membership.size());
        for (std::size_t i = 0; i < ps.membership.size(); ++i) {
            const auto& r = ps.membership[i];
            b[i] = f[r.a] - (r.b >= 0 ? f[static_cast<std::size_t>(r.b)] : Int(0));
        }
        auto w = solve_mod(a, b, mods);
        if (!w) return std::nullopt;
        IntVec x = c2.space.reduce(vec_sub(f, d1 * *w));
        if (!SpectralOracle::member(ps, x, true))
            throw InternalError(label + ": adjusted representative missed the level");
        auto cls = pg.sub.try_project(ps.compress * x);
        if (!cls) throw InternalError(label + ": adjusted representative is outside the numerator");
        return cls;
    };
    auto eval = [&](const IntVec& v) { return to_level(pl.h2g.representative(pl.h2g_1.lift(v))); };

    BuiltMap out;
    bool built = true;
    std::string wit;
    const std::size_t sg = pl.h2g_1.group.gens();
    IntMatrix m(pg.sub.group.gens(), sg);
    std::mt19937_64 rng(opt.seed);
    bool stable = true;
    std::string swit;
    for (std::size_t j = 0; j < sg && built; ++j) {
        IntVec f = pl.h2g.representative(pl.h2g_1.lift(pl.h2g_1.group.reduce(unit_vec(sg, j))));
        auto cls = to_level(f);
        if (!cls) {
            built = false;
            wit = "generator " + std::to_string(j) + " admits no representative in the level";
            break;
        }
        m.set_col(j, *cls);
        for (int t = 0; t < opt.perturbations; ++t) {
            IntVec r(d1.cols());
            for (auto& x : r) x = small_rand(rng);
            auto cls2 = to_level(c2.space.reduce(vec_add(f, d1 * r)));
            if (!cls2 || *cls2 != *cls) {
                stable = false;
                if (swit.empty()) swit = "generator " + std::to_string(j) + ", perturbation " + std::to_string(t);
            }
        }
    }
    out.hom = AbHom{pl.h2g_1.group, pg.sub.group, std::move(m)};
    if (!built) {
        out.checks.push_back(Verdict::failed(label, wit));
        return out;
    }
    std::string w;
    out.checks.push_back(out.hom.well_defined(&w) ? Verdict::passed(label + " is well defined")
                                                  : Verdict::failed(label + " is well defined", w));
    out.checks.push_back(stable ? Verdict::passed(label + " is independent of the cocycle representative")
                                : Verdict::failed(label + " is independent of the cocycle representative", swit));
    {
        bool additive = true;
        std::string awit;
        const bool exhaustive = pl.h2g_1.group.order() <= 256;
        std::vector<IntVec> elems;
        if (exhaustive)
            elems = pl.h2g_1.group.elements();
        else
            for (std::size_t j = 0; j < sg; ++j) elems.push_back(pl.h2g_1.group.reduce(unit_vec(sg, j)));
        for (std::size_t i = 0; i < elems.size() && additive; ++i)
            for (std::size_t j = 0; j < elems.size() && additive; ++j) {
                auto fi = eval(elems[i]);
                auto fj = eval(elems[j]);
                auto fij = eval(pl.h2g_1.group.add(elems[i], elems[j]));
                if (!fi || !fj || !fij || *fij != pg.sub.group.add(*fi, *fj)) {
                    additive = false;
                    awit = "elements " + show(elems[i]) + " and " + show(elems[j]);
                }
            }
        const std::string name = label + (exhaustive ? " is additive on all element pairs"
                                                     : " is additive on generator pairs");
        out.checks.push_back(additive ? Verdict::passed(name) : Verdict::failed(name, awit));
    }
    return out;
}

Verdict compare_transgression(SpectralOracle& so, const AbHom& tr_hom, int* sign_out) {
    const Pipeline& pl = so.pl();
    const std::string label = "transgression matches d2(0,1) through the edge identifications";
    BuiltMap row2 = so.row_edge(2);
    BuiltMap col = so.col_edge();
    BuiltMap d01 = so.d2(0, 1);
    for (const BuiltMap* b : {&row2, &col, &d01})
        for (const auto& v : b->checks)
            if (!v.ok()) return Verdict::failed(label, "prerequisite failed: " + v.name + ": " + v.detail);

    const AbHom colinv = invert_bijective(col.hom, "column edge");
    bool plus = true, minus = true;
    std::string wit;
    for (const IntVec& v : pl.h1n_fix.group().elements()) {
        IntVec lhs = row2.hom.apply(tr_hom.apply(v));
        IntVec rhs = d01.hom.apply(colinv.apply(v));
        if (lhs != rhs) {
            if (plus) wit = "at " + show(v) + ": sequence side " + show(lhs) + ", page side " + show(rhs);
            plus = false;
        }
        if (lhs != d01.hom.target.neg(rhs)) minus = false;
    }
    if (plus || minus) {
        if (sign_out) *sign_out = plus && minus ? 2 : (plus ? 1 : -1);
        return Verdict::passed(label, plus && minus ? "either unit (the image is 2-torsion)"
                                                    : (plus ? "global unit +1" : "global unit -1"));
    }
    return Verdict::failed(label, wit);
}

OracleComparison compare_with_oracle(const SevenTermData& st, SpectralOracle& so, const MapBuildOptions& opt) {
    const Pipeline& pl = so.pl();
    OracleComparison oc;
    auto& ck = oc.checks;
    auto absorb = [&ck](const std::vector<Verdict>& vs) {
        for (const auto& v : vs) ck.push_back(v);
    };

    {
        const FgAbGroup want[7] = {pl.h1q.group(),  pl.h1g.group(),    pl.h1n_fix.group(), pl.h2q.group(),
                                   pl.h2g_1.group,  pl.h1qh1n.group(), pl.h3q.group()};
        bool same = st.terms.size() == 7 && st.maps.size() == 5;
        for (int i = 0; same && i < 7; ++i)
            if (st.terms[static_cast<std::size_t>(i)].torsion != want[i].torsion ||
                st.terms[static_cast<std::size_t>(i)].free_rank != want[i].free_rank)
                same = false;
        ck.push_back(same ? Verdict::passed("sequence terms and oracle presentations agree")
                          : Verdict::failed("sequence terms and oracle presentations agree",
                                            "coordinates are not comparable"));
        if (!same) return oc;
    }

    absorb(so.self_check());
    BuiltMap row2 = so.row_edge(2);
    absorb(row2.checks);
    BuiltMap row3 = so.row_edge(3);
    absorb(row3.checks);
    BuiltMap col = so.col_edge();
    absorb(col.checks);
    BuiltMap theta = so.h1_edge();
    absorb(theta.checks);
    BuiltMap d01 = so.d2(0, 1, opt);
    absorb(d01.checks);
    BuiltMap d11 = so.d2(1, 1, opt);
    absorb(d11.checks);

    ck.push_back(compare_transgression(so, st.maps[2], &oc.sign));

    BuiltMap f1 = build_f1(so, opt);
    absorb(f1.checks);

    {
        bool ok = all_ok(f1.checks) && all_ok(theta.checks);
        std::string wit = ok ? "" : "identification evidence failed";
        if (ok)
            for (const IntVec& v : pl.h2g_1.group.elements()) {
                IntVec lhs = st.maps[4].apply(v);
                IntVec rhs = theta.hom.apply(f1.hom.apply(v));
                if (lhs != rhs) {
                    ok = false;
                    wit = "at " + show(v) + ": rho gives " + show(lhs) + ", pages give " + show(rhs);
                    break;
                }
            }
        ck.push_back(ok ? Verdict::passed("rho agrees elementwise with the level-1 re-representation")
                        : Verdict::failed("rho agrees elementwise with the level-1 re-representation", wit));
    }

    const Subquotient einf = hom_kernel(d11.hom);
    if (all_ok(theta.checks) && all_ok(row3.checks)) {
        const AbHom theta_inv = invert_bijective(theta.hom, "page edge (1, 1)");
        const AbHom row3_inv = invert_bijective(row3.hom, "row edge degree 3");
        oc.sixth = row3_inv.compose(d11.hom.compose(theta_inv));
        std::string w;
        ck.push_back(oc.sixth.well_defined(&w)
                         ? Verdict::passed("induced map H^1(Q, H^1(N, M)) -> H^3(Q, M^N) is well defined")
                         : Verdict::failed("induced map H^1(Q, H^1(N, M)) -> H^3(Q, M^N) is well defined", w));
        ck.push_back(same_subgroup(hom_image(st.maps[4]), hom_kernel(oc.sixth))
                         ? Verdict::passed("exact at H^1(Q, H^1(N, M))")
                         : Verdict::failed("exact at H^1(Q, H^1(N, M))",
                                           "image of rho differs from the kernel of the induced map"));
    } else {
        ck.push_back(Verdict::failed("exact at H^1(Q, H^1(N, M))", "page identifications unavailable"));
    }

    ck.push_back(hom_image(st.maps[4]).group.order() == einf.group.order()
                     ? Verdict::passed("image of rho has the terminal (1, 1) order")
                     : Verdict::failed("image of rho has the terminal (1, 1) order",
                                       hom_image(st.maps[4]).group.order().str() + " vs " +
                                           einf.group.order().str()));
    if (all_ok(f1.checks)) {
        ck.push_back(same_subgroup(hom_image(f1.hom), einf)
                         ? Verdict::passed("image of the level-1 re-representation is the kernel of d2(1,1)")
                         : Verdict::failed("image of the level-1 re-representation is the kernel of d2(1,1)", ""));
        ck.push_back(same_subgroup(hom_kernel(f1.hom), hom_kernel(st.maps[4]))
                         ? Verdict::passed("kernels of rho and the level-1 re-representation agree")
                         : Verdict::failed("kernels of rho and the level-1 re-representation agree", ""));
    }

    const Subquotient fil1 = so.h2_filtration(1);
    const Subquotient fil2 = so.h2_filtration(2);
    ck.push_back(same_subgroup(fil1, pl.h2g_1)
                     ? Verdict::passed("level-1 classes of H^2(G, M) are exactly the restriction kernel")
                     : Verdict::failed("level-1 classes of H^2(G, M) are exactly the restriction kernel",
                                       fil1.group.order().str() + " vs " + pl.h2g_1.group.order().str()));
    {
        const AbHom inf2_amb = pl.h2g_1.inclusion().compose(st.maps[3]);
        ck.push_back(same_subgroup(hom_image(inf2_amb), fil2)
                         ? Verdict::passed("level-2 classes of H^2(G, M) are exactly the inflated classes")
                         : Verdict::failed("level-2 classes of H^2(G, M) are exactly the inflated classes",
                                           hom_image(inf2_amb).group.order().str() + " vs " +
                                               fil2.group.order().str()));
    }
    {
        const Int e20 = so.page(2, 0).sub.group.order() / hom_image(d01.hom).group.order();
        ck.push_back(fil2.group.order() == e20
                         ? Verdict::passed("terminal (2, 0) order matches the level-2 classes",
                                           e20.str())
                         : Verdict::failed("terminal (2, 0) order matches the level-2 classes",
                                           fil2.group.order().str() + " vs " + e20.str()));
        const Int e11 = einf.group.order();
        ck.push_back(fil1.group.order() == fil2.group.order() * e11
                         ? Verdict::passed("terminal (1, 1) order matches the level quotient on H^2(G, M)",
                                           e11.str())
                         : Verdict::failed("terminal (1, 1) order matches the level quotient on H^2(G, M)",
                                           fil1.group.order().str() + " vs " +
                                               (fil2.group.order() * e11).str()));
        const Int e02 = pl.h2g.group().order() / fil1.group.order();
        ck.push_back(Verdict::passed("terminal (0, 2) order bookkeeping",
                                     "|H^2(G, M)| / |level-1 classes| = " + e02.str()));
    }
    return oc;
}

} // namespace seventerm
