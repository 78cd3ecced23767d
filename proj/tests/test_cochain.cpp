#include "doctest.h"

#include "seventerm/cochain.hpp"
#include "seventerm/errors.hpp"
#include "seventerm/fixtures.hpp"

using namespace seventerm;

TEST_CASE("cochain spaces: layout, values, normalization") {
    auto mod = GModule::trivial(cyclic_group(3), FgAbGroup::cyclic(5));
    CochainSpace c2 = cochain_space(mod, 2);
    CHECK(c2.tuple_count == 4);
    CHECK(c2.space.gens() == 4);

    IntVec f(c2.space.gens());
    c2.set_value(f, {2, 1}, IntVec{3});
    CHECK(c2.value(f, {2, 1}) == IntVec{3});
    CHECK(c2.value(f, {1, 2}) == IntVec{0});
    // Normalized: any identity argument reads zero.
    CHECK(c2.value(f, {0, 1}) == IntVec{0});
    CHECK(c2.value(f, {2, 0}) == IntVec{0});

    // Tuple codec round trip, lexicographic with first entry slowest.
    CHECK(c2.tuple_at(0) == std::vector<int>{1, 1});
    CHECK(c2.tuple_at(1) == std::vector<int>{1, 2});
    CHECK(c2.tuple_at(2) == std::vector<int>{2, 1});
    for (std::size_t t = 0; t < c2.tuple_count; ++t) CHECK(c2.tuple_index(c2.tuple_at(t)) == t);

    CHECK(cochain_space(mod, 0).space.gens() == 1); // C^0 = M
}

TEST_CASE("differential formula in degree 0 and 1") {
    // Nontrivial action to exercise the g1-term: Z/2 inverts Z/5.
    auto mod = GModule::make(cyclic_group(2), FgAbGroup::cyclic(5),
                             {IntMatrix::identity(1), IntMatrix{{Int(-1)}}});
    CochainSpace c0 = cochain_space(mod, 0);
    // (dm)(g) = g m - m; for m = 1: d m (1) = -1 - 1 = -2 = 3 mod 5.
    IntVec m{1};
    IntVec dm = bar_differential_apply(c0, m);
    CochainSpace c1 = cochain_space(mod, 1);
    CHECK(c1.value(dm, {1}) == IntVec{3});

    // (df)(g,h) = g f(h) - f(gh) + f(g): for f(1) = 2:
    // df(1,1) = 1*f(1) ... the action of the nonidentity is negation:
    // df(1,1) = -2 - f(0) + 2 = 0.
    IntVec f(c1.space.gens());
    c1.set_value(f, {1}, IntVec{2});
    IntVec df = bar_differential_apply(c1, f);
    CochainSpace c2 = cochain_space(mod, 2);
    CHECK(c2.value(df, {1, 1}) == IntVec{0});
}

TEST_CASE("d compose d is zero") {
    for (const auto& fx : builtin_fixtures()) {
        CAPTURE(fx.name);
        GroupExtension ext = make_extension(fx.g, fx.n_elems);

        // As matrices at low degree over G, N and Q.
        IntMatrix d0 = bar_differential(fx.mod, 0);
        IntMatrix d1 = bar_differential(fx.mod, 1);
        IntMatrix d2 = bar_differential(fx.mod, 2);
        CochainSpace c2 = cochain_space(fx.mod, 2);
        CochainSpace c3 = cochain_space(fx.mod, 3);
        IntMatrix dd1 = d1 * d0;
        for (std::size_t j = 0; j < dd1.cols(); ++j) CHECK(vec_is_zero(c2.space.reduce(dd1.col(j))));
        IntMatrix dd2 = d2 * d1;
        for (std::size_t j = 0; j < dd2.cols(); ++j) CHECK(vec_is_zero(c3.space.reduce(dd2.col(j))));

        // Degree 3 over Q via function application on every basis vector.
        GModule qtriv = GModule::trivial(ext.q, fx.mod.coeff);
        CochainSpace q3 = cochain_space(qtriv, 3);
        CochainSpace q4 = cochain_space(qtriv, 4);
        CochainSpace q2 = cochain_space(qtriv, 2);
        for (std::size_t c = 0; c < q2.space.gens(); ++c) {
            IntVec basis(q2.space.gens());
            basis[c] = 1;
            IntVec dd = bar_differential_apply(q3, bar_differential_apply(q2, basis));
            CHECK(vec_is_zero(q4.space.reduce(dd)));
        }
    }
}

TEST_CASE("degree limits are enforced") {
    auto mod = GModule::trivial(cyclic_group(2), FgAbGroup::cyclic(2));
    CHECK_THROWS_AS(cochain_space(mod, 5), PreconditionError);
    CochainSpace c4 = cochain_space(mod, 4);
    IntVec f(c4.space.gens());
    CHECK_THROWS_AS(bar_differential_apply(c4, f), PreconditionError);
}
