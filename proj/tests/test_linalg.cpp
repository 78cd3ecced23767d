#include "doctest.h"

#include "seventerm/abelian.hpp"
#include "seventerm/errors.hpp"
#include "seventerm/smith.hpp"

#include <random>

using namespace seventerm;

namespace {

// Postcondition oracle for any Smith form: reassemble and re-check every
// claimed property rather than trusting the factorization.
void check_smith(const IntMatrix& a) {
    SmithForm f = smith_normal_form(a);
    CHECK(f.u * a * f.v == f.d);
    CHECK(f.u * f.u_inv == IntMatrix::identity(a.rows()));
    CHECK(f.v * f.v_inv == IntMatrix::identity(a.cols()));
    for (std::size_t i = 0; i < f.d.rows(); ++i)
        for (std::size_t j = 0; j < f.d.cols(); ++j)
            if (i != j) CHECK(f.d.at(i, j) == 0);
    IntVec diag = f.diagonal();
    for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
        CHECK(diag[i] >= 0);
        if (diag[i] == 0) CHECK(diag[i + 1] == 0);
        if (diag[i] != 0) CHECK(diag[i + 1] % diag[i] == 0);
    }
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = dist(rng);
    return m;
}

} // namespace

TEST_CASE("smith normal form on frozen and random matrices") {
    check_smith(IntMatrix{{Int(1)}});
    check_smith(IntMatrix(2, 2));
    check_smith(IntMatrix(0, 0));
    check_smith(IntMatrix(0, 3));
    check_smith(IntMatrix(3, 0));
    check_smith(IntMatrix{{2, 0}, {0, 3}});
    check_smith(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}});

    SUBCASE("diag(2,3) has invariant factors 1,6") {
        SmithForm f = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
        CHECK(f.d.at(0, 0) == 1);
        CHECK(f.d.at(1, 1) == 6);
    }

    SUBCASE("seeded random shapes") {
        std::mt19937_64 rng(20260816);
        for (int t = 0; t < 40; ++t) {
            std::size_t r = 1 + static_cast<std::size_t>(rng() % 6);
            std::size_t c = 1 + static_cast<std::size_t>(rng() % 6);
            check_smith(random_matrix(rng, r, c, -9, 9));
        }
    }
}

TEST_CASE("column hermite form is canonical for the column lattice") {
    // Same lattice under column shuffles and unimodular recombination.
    IntMatrix a{{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}};
    IntMatrix b = a;
    b.add_col_multiple(0, 1, 3);
    b.swap_cols(1, 2);
    b.negate_col(2);
    CHECK(column_hermite_form(a) == column_hermite_form(b));
    CHECK(lattice_equal(a, b));

    // Scaling a column changes the lattice.
    IntMatrix c = a;
    for (std::size_t i = 0; i < 3; ++i) c.at(i, 0) *= 2;
    CHECK(!lattice_equal(a, c));
    CHECK(lattice_contains_lattice(a, c));
    CHECK(!lattice_contains_lattice(c, a));
}

TEST_CASE("integer kernel") {
    IntMatrix a{{1, 2, 3}, {2, 4, 6}};
    IntMatrix k = integer_kernel(a);
    CHECK(k.cols() == 2);
    CHECK((a * k).is_zero());

    CHECK(integer_kernel(IntMatrix::identity(3)).cols() == 0);
    // 0 x n matrix: everything is in the kernel.
    IntMatrix z(0, 4);
    CHECK(integer_kernel(z).cols() == 4);
}

TEST_CASE("kernel_mod matches enumeration on a small congruence system") {
    // x + 2y == 0 mod 4, 3x + y == 0 mod 6.
    IntMatrix a{{1, 2}, {3, 1}};
    IntVec moduli{4, 6};
    IntMatrix k = kernel_mod(a, moduli);
    // Every generator satisfies the congruences.
    for (std::size_t j = 0; j < k.cols(); ++j) {
        IntVec x = k.col(j);
        CHECK(pos_mod(x[0] + 2 * x[1], 4) == 0);
        CHECK(pos_mod(3 * x[0] + x[1], 6) == 0);
    }
    // Enumeration oracle over a fundamental box [0,12)^2: membership in the
    // lattice must coincide with satisfying the congruences.
    for (int x0 = 0; x0 < 12; ++x0)
        for (int x1 = 0; x1 < 12; ++x1) {
            bool sat = pos_mod(Int(x0) + 2 * x1, 4) == 0 && pos_mod(3 * Int(x0) + x1, 6) == 0;
            bool mem = solve(k, IntVec{x0, x1}).has_value();
            CHECK(sat == mem);
        }
}

TEST_CASE("solve: exact and modular, presence and absence") {
    SUBCASE("identity system returns rhs exactly") {
        IntMatrix a = IntMatrix::identity(3);
        auto x = solve(a, IntVec{5, -7, 0});
        REQUIRE(x.has_value());
        CHECK(*x == IntVec{5, -7, 0});
    }
    SUBCASE("2x = 1 has no integer solution") {
        CHECK(!solve(IntMatrix{{Int(2)}}, IntVec{1}).has_value());
    }
    SUBCASE("2x = 1 mod 3 gives canonical x = 2") {
        auto x = solve_mod(IntMatrix{{Int(2)}}, IntVec{1}, IntVec{3});
        REQUIRE(x.has_value());
        CHECK(*x == IntVec{2});
    }
    SUBCASE("solution is re-checked by multiplication on random systems") {
        std::mt19937_64 rng(77001);
        for (int t = 0; t < 60; ++t) {
            std::size_t r = 1 + static_cast<std::size_t>(rng() % 5);
            std::size_t c = 1 + static_cast<std::size_t>(rng() % 5);
            IntMatrix a = random_matrix(rng, r, c, -6, 6);
            IntVec xs(c);
            for (auto& v : xs) v = static_cast<int>(rng() % 7) - 3;
            IntVec b = a * xs;
            auto x = solve(a, b);
            REQUIRE(x.has_value());
            CHECK(a * *x == b);
        }
    }
    SUBCASE("absence agrees with exhaustive search in a box") {
        // 6x + 10y = b solvable iff gcd(6,10)=2 divides b.
        IntMatrix a{{6, 10}};
        for (int b = -8; b <= 8; ++b) {
            bool found = false;
            for (int x = -40; x <= 40 && !found; ++x)
                for (int y = -40; y <= 40 && !found; ++y)
                    if (6 * x + 10 * y == b) found = true;
            CHECK(solve(a, IntVec{b}).has_value() == found);
        }
    }
    SUBCASE("deterministic: same system twice gives identical answers") {
        IntMatrix a{{2, 4}, {1, 3}};
        IntVec b{6, 4};
        auto x1 = solve(a, b);
        auto x2 = solve(a, b);
        REQUIRE(x1.has_value());
        CHECK(*x1 == *x2);
    }
}

TEST_CASE("cokernel presentations") {
    SUBCASE("one generator, relation 1: trivial group") {
        Cokernel c = cokernel(IntMatrix{{Int(1)}}, 1);
        CHECK(c.group.is_trivial());
    }
    SUBCASE("one generator, zero relation: Z") {
        Cokernel c = cokernel(IntMatrix{{Int(0)}}, 1);
        CHECK(c.group.torsion.empty());
        CHECK(c.group.free_rank == 1);
    }
    SUBCASE("diag(2,3) presents Z/6") {
        Cokernel c = cokernel(IntMatrix{{2, 0}, {0, 3}}, 2);
        CHECK(c.group.torsion == IntVec{6});
        CHECK(c.group.free_rank == 0);
        // project(lift(x)) == x for every element
        for (const auto& e : c.group.elements()) {
            IntVec back = c.group.reduce(c.proj * (c.lift * e));
            CHECK(back == e);
        }
    }
    SUBCASE("no relations: free of full rank") {
        Cokernel c = cokernel(IntMatrix(3, 0), 3);
        CHECK(c.group.free_rank == 3);
        CHECK(c.proj * c.lift == IntMatrix::identity(3));
    }
}

TEST_CASE("subquotient of diag relations") {
    // Ambient Z^2; cycles diag(2,3) wait: subgroup generated by (2,0),(0,3)
    // of Z/4 x Z/9: quotient by nothing gives Z/2 x Z/3.
    FgAbGroup amb;
    amb.torsion = {4, 9};
    Subquotient s = span_subgroup(IntMatrix{{2, 0}, {0, 3}}, amb);
    CHECK(s.group.order() == 6);
    CHECK(s.group.torsion == IntVec{6}); // Z/2 x Z/3 = Z/6 canonically

    SUBCASE("project and lift are mutually inverse on classes") {
        for (const auto& e : s.group.elements()) {
            CHECK(s.project(s.lift(e)) == e);
        }
    }
    SUBCASE("project rejects vectors outside the span") {
        CHECK_THROWS_AS(s.project(IntVec{1, 0}), PreconditionError);
        CHECK(!s.try_project(IntVec{1, 0}).has_value());
    }
    SUBCASE("borders outside cycles are rejected with the offending column") {
        CHECK_THROWS_AS(make_subquotient(IntMatrix{{2, 0}, {0, 3}}, IntMatrix{{1}, {0}}, amb), PreconditionError);
    }
}

TEST_CASE("subquotient as homology: ker/im inside Z/8") {
    // Ambient A = Z/8. cycles = <2>, borders = <4>. Quotient is Z/2.
    FgAbGroup amb;
    amb.torsion = {8};
    Subquotient s = make_subquotient(IntMatrix{{Int(2)}}, IntMatrix{{Int(4)}}, amb);
    CHECK(s.group.torsion == IntVec{2});
    CHECK(s.project(IntVec{2}) == IntVec{1});
    CHECK(s.project(IntVec{4}) == IntVec{0});
    CHECK(s.project(IntVec{6}) == IntVec{1});
    IntVec rep = s.lift(IntVec{1});
    CHECK(s.project(rep) == IntVec{1});
}

TEST_CASE("hom kernel and image") {
    // f: Z/4 x Z/2 -> Z/4, (a,b) -> 2a+2b.
    FgAbGroup src;
    src.torsion = {4, 2};
    FgAbGroup dst;
    dst.torsion = {4};
    AbHom f{src, dst, IntMatrix{{2, 2}}};
    REQUIRE(f.well_defined());
    Subquotient ker = hom_kernel(f);
    Subquotient img = hom_image(f);
    CHECK(img.group.order() == 2);
    CHECK(ker.group.order() == 4);
    // Pointwise agreement with definitions.
    for (const auto& e : src.elements()) {
        bool in_ker = vec_is_zero(f.apply(e));
        CHECK(in_ker == ker.try_project(e).has_value());
    }
    for (const auto& e : dst.elements()) {
        bool hit = false;
        for (const auto& x : src.elements())
            if (f.apply(x) == e) hit = true;
        CHECK(hit == img.try_project(e).has_value());
    }
}

TEST_CASE("abhom well-definedness check catches a bad map") {
    FgAbGroup src;
    src.torsion = {2};
    FgAbGroup dst;
    dst.torsion = {4};
    // x -> x is not well defined Z/2 -> Z/4 (2*1 = 2 != 0 mod 4).
    AbHom bad{src, dst, IntMatrix{{Int(1)}}};
    std::string w;
    CHECK(!bad.well_defined(&w));
    CHECK(!w.empty());
    AbHom good{src, dst, IntMatrix{{Int(2)}}};
    CHECK(good.well_defined());
}

TEST_CASE("element enumeration is canonical and complete") {
    FgAbGroup g;
    g.torsion = {2, 3};
    auto els = g.elements();
    REQUIRE(els.size() == 6);
    CHECK(els[0] == IntVec{0, 0});
    CHECK(els[1] == IntVec{0, 1});
    CHECK(els[3] == IntVec{1, 0});
    FgAbGroup t = FgAbGroup::trivial();
    CHECK(t.elements().size() == 1);
    CHECK(t.elements()[0].empty());
}
