#include "seventerm/group.hpp"

#include "seventerm/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace seventerm {

FiniteGroup FiniteGroup::from_multiplication_table(const std::vector<std::vector<int>>& table) {
    const std::size_t n = table.size();
    if (n == 0) throw ValidationError("multiplication table: empty");
    if (n > kMaxOrder)
        throw ValidationError("multiplication table: order " + std::to_string(n) + " exceeds limit " +
                              std::to_string(kMaxOrder));
    FiniteGroup g;
    g.order_ = n;
    g.table_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (table[i].size() != n)
            throw ValidationError("multiplication table: row " + std::to_string(i) + " has wrong length");
        for (std::size_t j = 0; j < n; ++j) {
            int v = table[i][j];
            if (v < 0 || static_cast<std::size_t>(v) >= n) {
                std::ostringstream os;
                os << "multiplication table: entry [" << i << "][" << j << "] = " << v << " out of range";
                throw ValidationError(os.str());
            }
            g.table_[i * n + j] = v;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (g.mul(0, static_cast<int>(i)) != static_cast<int>(i) || g.mul(static_cast<int>(i), 0) != static_cast<int>(i))
            throw ValidationError("multiplication table: index 0 is not an identity at element " + std::to_string(i));
    }
    g.inverse_.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            if (g.mul(static_cast<int>(i), static_cast<int>(j)) == 0 &&
                g.mul(static_cast<int>(j), static_cast<int>(i)) == 0) {
                g.inverse_[i] = static_cast<int>(j);
                break;
            }
        if (g.inverse_[i] < 0)
            throw ValidationError("multiplication table: element " + std::to_string(i) + " has no two-sided inverse");
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                int ab_c = g.mul(g.mul(static_cast<int>(a), static_cast<int>(b)), static_cast<int>(c));
                int a_bc = g.mul(static_cast<int>(a), g.mul(static_cast<int>(b), static_cast<int>(c)));
                if (ab_c != a_bc) {
                    std::ostringstream os;
                    os << "multiplication table: associativity fails at (" << a << ", " << b << ", " << c << "): ("
                       << a << b << ")" << c << " = " << ab_c << " but " << a << "(" << b << c << ") = " << a_bc;
                    throw ValidationError(os.str());
                }
            }
    return g;
}

int FiniteGroup::power(int a, Int e) const {
    int ord = element_order(a);
    e = pos_mod(e, ord);
    int r = 0;
    for (Int i = 0; i < e; ++i) r = mul(r, a);
    return r;
}

bool FiniteGroup::is_abelian() const {
    for (std::size_t a = 0; a < order_; ++a)
        for (std::size_t b = a + 1; b < order_; ++b)
            if (mul(static_cast<int>(a), static_cast<int>(b)) != mul(static_cast<int>(b), static_cast<int>(a)))
                return false;
    return true;
}

int FiniteGroup::element_order(int a) const {
    int r = a, k = 1;
    while (r != 0) {
        r = mul(r, a);
        ++k;
    }
    return k;
}

std::vector<std::vector<int>> FiniteGroup::table() const {
    std::vector<std::vector<int>> t(order_, std::vector<int>(order_));
    for (std::size_t i = 0; i < order_; ++i)
        for (std::size_t j = 0; j < order_; ++j) t[i][j] = mul(static_cast<int>(i), static_cast<int>(j));
    return t;
}

bool is_subgroup(const FiniteGroup& g, const std::vector<int>& elems, std::string* witness) {
    if (elems.empty() || elems[0] != 0) {
        if (witness) *witness = "subgroup must contain the identity (index 0) first";
        return false;
    }
    if (!std::is_sorted(elems.begin(), elems.end()) ||
        std::adjacent_find(elems.begin(), elems.end()) != elems.end()) {
        if (witness) *witness = "subgroup element list must be sorted and duplicate-free";
        return false;
    }
    std::vector<char> in(g.order(), 0);
    for (int e : elems) {
        if (e < 0 || static_cast<std::size_t>(e) >= g.order()) {
            if (witness) *witness = "element index " + std::to_string(e) + " out of range";
            return false;
        }
        in[e] = 1;
    }
    for (int a : elems)
        for (int b : elems)
            if (!in[g.mul(a, b)]) {
                if (witness)
                    *witness = "not closed: " + std::to_string(a) + " * " + std::to_string(b) + " = " +
                               std::to_string(g.mul(a, b)) + " is outside";
                return false;
            }
    return true;
}

bool is_normal_subgroup(const FiniteGroup& g, const std::vector<int>& elems, std::string* witness) {
    if (!is_subgroup(g, elems, witness)) return false;
    std::vector<char> in(g.order(), 0);
    for (int e : elems) in[e] = 1;
    for (std::size_t x = 0; x < g.order(); ++x)
        for (int n : elems)
            if (!in[g.conj(static_cast<int>(x), n)]) {
                if (witness)
                    *witness = "not normal: " + std::to_string(x) + " conjugates " + std::to_string(n) + " to " +
                               std::to_string(g.conj(static_cast<int>(x), n)) + " which is outside";
                return false;
            }
    return true;
}

SubgroupView subgroup_view(const FiniteGroup& g, const std::vector<int>& elems) {
    std::string w;
    if (!is_subgroup(g, elems, &w)) throw ValidationError("subgroup_view: " + w);
    SubgroupView v;
    v.to_parent = elems;
    v.from_parent.assign(g.order(), -1);
    for (std::size_t i = 0; i < elems.size(); ++i) v.from_parent[elems[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> t(elems.size(), std::vector<int>(elems.size()));
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j < elems.size(); ++j) t[i][j] = v.from_parent[g.mul(elems[i], elems[j])];
    v.group = FiniteGroup::from_multiplication_table(t);
    return v;
}

GroupExtension make_extension(const FiniteGroup& g, std::vector<int> n_elems) {
    std::sort(n_elems.begin(), n_elems.end());
    std::string w;
    if (!is_normal_subgroup(g, n_elems, &w)) throw ValidationError("make_extension: " + w);

    GroupExtension ext;
    ext.g = g;
    ext.n_elems = n_elems;
    ext.n = subgroup_view(g, n_elems);

    // Cosets keyed by minimal element; ascending key order labels Q, which
    // puts the trivial coset at index 0.
    std::vector<int> coset_min(g.order(), -1);
    for (std::size_t x = 0; x < g.order(); ++x) {
        if (coset_min[x] >= 0) continue;
        int mn = static_cast<int>(x);
        std::vector<int> members;
        for (int n0 : n_elems) members.push_back(g.mul(n0, static_cast<int>(x)));
        for (int m : members) mn = std::min(mn, m);
        for (int m : members) coset_min[m] = mn;
    }
    std::map<int, int> label; // minimal element -> q index
    for (std::size_t x = 0; x < g.order(); ++x) label.emplace(coset_min[x], 0);
    {
        int next = 0;
        for (auto& [mn, lab] : label) lab = next++;
    }
    ext.pi.resize(g.order());
    ext.sigma.resize(label.size());
    for (std::size_t x = 0; x < g.order(); ++x) {
        ext.pi[x] = label.at(coset_min[x]);
        ext.sigma[ext.pi[x]] = coset_min[x];
    }
    if (ext.sigma[0] != 0) throw InternalError("make_extension: trivial coset does not contain the identity");

    std::vector<std::vector<int>> qt(label.size(), std::vector<int>(label.size()));
    for (std::size_t a = 0; a < label.size(); ++a)
        for (std::size_t b = 0; b < label.size(); ++b)
            qt[a][b] = ext.pi[g.mul(ext.sigma[a], ext.sigma[b])];
    ext.q = FiniteGroup::from_multiplication_table(qt);

    for (std::size_t q = 0; q < ext.q.order(); ++q)
        if (ext.pi[ext.sigma[q]] != static_cast<int>(q)) throw InternalError("make_extension: pi(sigma(q)) != q");
    return ext;
}

GroupRingData group_ring_data(const GroupExtension& ext) {
    GroupRingData d;
    d.n_part.resize(ext.g.order());
    std::vector<char> in_n(ext.g.order(), 0);
    for (int n0 : ext.n_elems) in_n[n0] = 1;
    for (std::size_t g = 0; g < ext.g.order(); ++g) {
        int rep = ext.sigma[ext.pi[g]];
        int n = ext.g.mul(static_cast<int>(g), ext.g.inv(rep));
        if (!in_n[n]) throw InternalError("group_ring_data: N-part fell outside N");
        if (ext.g.mul(n, rep) != static_cast<int>(g)) throw InternalError("group_ring_data: decomposition failed");
        d.n_part[g] = n;
    }
    return d;
}

} // namespace seventerm
