#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace godel {

// Finite poset stored by its covering relation.  The full order is derived
// once at construction; values are immutable afterwards.
struct Poset {
    std::vector<std::string> labels;
    std::vector<std::pair<int, int>> covers;  // (lower, upper), transitively reduced, sorted

    int size() const { return static_cast<int>(labels.size()); }
    bool leq(int a, int b) const { return leq_[a][b]; }
    int index_of(const std::string& label) const;  // -1 if absent

    // filled by make_poset
    std::vector<std::vector<char>> leq_;
};

// Builds a poset from an arbitrary acyclic relation: closes transitively,
// then stores the covering relation.  A cycle is an input error.
Poset make_poset(std::vector<std::string> labels,
                 const std::vector<std::pair<int, int>>& relation);

// Same, but a cycle raises a structural error (used by quotient, where a
// cycle means the input structure was not legal).
Poset make_poset_structural(std::vector<std::string> labels,
                            const std::vector<std::pair<int, int>>& relation);

std::vector<int> up_set(const Poset& p, int elem);
std::vector<int> up_set(const Poset& p, const std::string& label);
std::vector<int> down_set(const Poset& p, int elem);

// d(p) = size of the longest chain inside the up-set of p, minus one.
int depth_of(const Poset& p, int elem);
int depth(const Poset& p);  // 0 for the empty poset

int count_upper_covers(const Poset& p, int elem);
std::vector<int> upper_covers(const Poset& p, int elem);
std::vector<int> lower_covers(const Poset& p, int elem);
bool is_maximal(const Poset& p, int elem);

// True iff every principal up-set is a chain.
bool is_forest(const Poset& p);

// Componentwise order on pairs; labels are "(a,b)".
Poset poset_product(const Poset& p, const Poset& q);

// Quotient of p by the partition class_of (values 0..k-1), ordered by the
// reflexive-transitive closure of the relation induced by cover_rule on
// representatives: class A is below class B when some a in A, b in B have
// cover_rule(a,b) and A != B.  An induced cycle is a structural error, and
// so is a rule pair that turns out to be implied by transitivity (the input
// was then not a legal dual structure).
Poset quotient(const Poset& p, const std::vector<int>& class_of,
               const std::function<bool(int, int)>& cover_rule);

// A poset all of whose principal up-sets are chains; roots are the maximal
// elements and parent pointers go upward.
struct Forest {
    Poset poset;
    std::vector<int> parent;  // -1 for roots

    int size() const { return poset.size(); }
};

Forest as_forest(const Poset& p);               // structural error if not a forest
Forest make_forest(std::vector<std::string> labels,
                   const std::vector<int>& parent);  // parent[i] = -1 for roots

// Two forests get equal canonical forms iff they are isomorphic.
std::string canonical_form(const Forest& f);

// Number of up-sets, by the tree product formula; no enumeration.
unsigned long long count_upsets(const Forest& f);

// Isomorphism of arbitrary finite posets; forests are decided via canonical
// forms, the rest by backtracking.
bool iso_check(const Poset& p, const Poset& q);
bool iso_check(const Forest& p, const Forest& q);

}  // namespace godel
