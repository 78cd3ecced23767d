#pragma once

#include "seventerm/integers.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace seventerm {

// Finite group on indices 0..order-1 with 0 the identity, given by its full
// multiplication table. Construction validates closure, identity, inverses
// and associativity exhaustively and reports a witness on failure.
class FiniteGroup {
public:
    static constexpr std::size_t kMaxOrder = 512;

    static FiniteGroup from_multiplication_table(const std::vector<std::vector<int>>& table);

    std::size_t order() const { return order_; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
    int inv(int a) const { return inverse_[a]; }
    int conj(int a, int b) const { return mul(mul(a, b), inv(a)); } // a b a^-1
    int power(int a, Int e) const;
    bool is_abelian() const;
    int element_order(int a) const;

    std::vector<std::vector<int>> table() const;
    bool operator==(const FiniteGroup&) const = default;

private:
    std::size_t order_ = 0;
    std::vector<int> table_;
    std::vector<int> inverse_;
};

// A subgroup re-indexed as a group of its own, with both directions of the
// index translation kept.
struct SubgroupView {
    FiniteGroup group;
    std::vector<int> to_parent;   // subgroup index -> parent index
    std::vector<int> from_parent; // parent index -> subgroup index, -1 outside

    std::size_t order() const { return group.order(); }
};

bool is_subgroup(const FiniteGroup& g, const std::vector<int>& elems, std::string* witness = nullptr);
bool is_normal_subgroup(const FiniteGroup& g, const std::vector<int>& elems, std::string* witness = nullptr);

// elems must be sorted, unique, contain 0 and form a subgroup.
SubgroupView subgroup_view(const FiniteGroup& g, const std::vector<int>& elems);

// G with a chosen normal subgroup N, the quotient Q = G/N with canonical
// labels (cosets ordered by their minimal element, so the trivial coset is
// 0), and the canonical section sigma(q) = minimal element of the coset.
// pi(sigma(q)) = q always; sigma(0) = 0.
struct GroupExtension {
    FiniteGroup g;
    std::vector<int> n_elems; // sorted
    SubgroupView n;
    FiniteGroup q;
    std::vector<int> pi;    // g index -> q index
    std::vector<int> sigma; // q index -> g index

    std::size_t g_order() const { return g.order(); }
    std::size_t n_order() const { return n.order(); }
    std::size_t q_order() const { return q.order(); }
};

GroupExtension make_extension(const FiniteGroup& g, std::vector<int> n_elems);

// Unique decomposition g = n * sigma(pi(g)) used by the group ring: n_part
// is the N-part as a parent index.
struct GroupRingData {
    std::vector<int> n_part; // g index -> parent index of n_g, in N

    int n_of(int g) const { return n_part[g]; }
};

GroupRingData group_ring_data(const GroupExtension& ext);

} // namespace seventerm
