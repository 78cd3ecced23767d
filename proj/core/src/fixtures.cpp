#include "seventerm/fixtures.hpp"

#include "seventerm/errors.hpp"

#include <algorithm>
#include <cctype>

namespace seventerm {

FiniteGroup cyclic_group(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    return FiniteGroup::from_multiplication_table(t);
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const int nb = static_cast<int>(b.order());
    const int n = static_cast<int>(a.order()) * nb;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    return FiniteGroup::from_multiplication_table(t);
}

FiniteGroup dihedral_group_8() {
    // r^i s^j with index i + 4j; s r^k = r^-k s.
    auto idx = [](int i, int j) { return ((i % 4 + 4) % 4) + 4 * (j % 2); };
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 2; ++l) t[idx(i, j)][idx(k, l)] = idx(i + (j ? -k : k), j + l);
    return FiniteGroup::from_multiplication_table(t);
}

FiniteGroup quaternion_group() {
    // (sign, axis) with axes 1,i,j,k; index 0..7 as 1,-1,i,-i,j,-j,k,-k.
    struct U {
        int s, a;
    };
    auto idx = [](U u) { return u.a == 0 ? u.s : 2 * u.a + u.s; };
    auto unit = [](int e) { return e < 2 ? U{e, 0} : U{e % 2, e / 2}; };
    // axis products: entry {sign, axis} for basis[a] * basis[b]
    static const int sgn[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    static const int ax[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int e = 0; e < 8; ++e)
        for (int f = 0; f < 8; ++f) {
            U u = unit(e), v = unit(f);
            U w{(u.s + v.s + sgn[u.a][v.a]) % 2, ax[u.a][v.a]};
            t[e][f] = idx(w);
        }
    return FiniteGroup::from_multiplication_table(t);
}

FiniteGroup symmetric_group_3() {
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    auto find = [](const int p[3]) {
        for (int i = 0; i < 6; ++i)
            if (perms[i][0] == p[0] && perms[i][1] == p[1] && perms[i][2] == p[2]) return i;
        throw InternalError("symmetric_group_3: permutation lookup failed");
    };
    std::vector<std::vector<int>> t(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            int c[3];
            for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
            t[a][b] = find(c);
        }
    return FiniteGroup::from_multiplication_table(t);
}

namespace {

std::vector<Fixture> build_fixtures() {
    std::vector<Fixture> out;

    {
        FiniteGroup g = cyclic_group(4);
        out.push_back({"fix-a", "Z/2 -> Z/4 -> Z/2, M = Z/2 trivial", g, {0, 2},
                       GModule::trivial(g, FgAbGroup::cyclic(2))});
    }
    {
        FiniteGroup g = direct_product(cyclic_group(2), cyclic_group(2));
        // First factor is {0, 2} under the product indexing (a*2 + b).
        out.push_back({"fix-b", "Z/2 -> Z/2 x Z/2 -> Z/2, M = Z/2 trivial", g, {0, 2},
                       GModule::trivial(g, FgAbGroup::cyclic(2))});
    }
    {
        FiniteGroup g = symmetric_group_3();
        // Even permutations in lexicographic one-line order: 012, 120, 201.
        std::vector<int> a3{0, 3, 4};
        std::vector<IntMatrix> act;
        for (int e = 0; e < 6; ++e) {
            bool even = std::find(a3.begin(), a3.end(), e) != a3.end();
            act.push_back(IntMatrix{{Int(even ? 1 : -1)}});
        }
        out.push_back({"fix-c", "A3 -> S3 -> Z/2, M = Z/3 sign action", g, a3,
                       GModule::make(g, FgAbGroup::cyclic(3), act)});
    }
    {
        FiniteGroup g = dihedral_group_8();
        out.push_back({"fix-d", "Z/2 (center) -> D8 -> Z/2 x Z/2, M = Z/2 trivial", g, {0, 2},
                       GModule::trivial(g, FgAbGroup::cyclic(2))});
    }
    {
        FiniteGroup g = quaternion_group();
        out.push_back({"fix-e", "Z/2 (center) -> Q8 -> Z/2 x Z/2, M = Z/2 trivial", g, {0, 1},
                       GModule::trivial(g, FgAbGroup::cyclic(2))});
    }
    {
        // Odd exponent, so computations here are sensitive to signs that
        // every order-2 coefficient group hides.
        FiniteGroup g = cyclic_group(9);
        out.push_back({"fix-f", "Z/3 -> Z/9 -> Z/3, M = Z/3 trivial", g, {0, 3, 6},
                       GModule::trivial(g, FgAbGroup::cyclic(3))});
    }
    return out;
}

} // namespace

const std::vector<Fixture>& builtin_fixtures() {
    static const std::vector<Fixture> fixtures = build_fixtures();
    return fixtures;
}

std::optional<Fixture> fixture_by_name(const std::string& name) {
    std::string low = name;
    std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return std::tolower(c); });
    for (const auto& f : builtin_fixtures())
        if (f.name == low) return f;
    return std::nullopt;
}

} // namespace seventerm
