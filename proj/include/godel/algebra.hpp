#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "godel/poset.hpp"

namespace godel {

// Finite Gödel algebra stored extensionally: full meet/join/implication
// tables over an indexed element set.  Values are immutable once built.
struct GodelAlgebra {
    std::vector<std::string> labels;
    int bot = 0;
    int top = 0;
    std::vector<std::vector<int>> meet, join, impl;

    int size() const { return static_cast<int>(labels.size()); }
    bool leq(int a, int b) const { return meet[a][b] == a; }
    bool trivial() const { return size() == 1; }
    int index_of(const std::string& label) const;
};

using AlgebraPtr = std::shared_ptr<const GodelAlgebra>;

inline AlgebraPtr share(GodelAlgebra a) { return std::make_shared<const GodelAlgebra>(std::move(a)); }

// The Heyting chain 0 < 1 < ... < n-1 with a -> b = top if a <= b, else b.
// n < 2 is an input error; the one-element algebra is available separately.
GodelAlgebra make_chain(int n);
GodelAlgebra make_trivial();

// Derives the implication from a bounded distributive lattice,
// impl(a,b) = largest c with a /\ c <= b, and checks prelinearity.
// Rejects non-lattices, non-distributive lattices, and prelinearity
// failures (naming a witness pair).
GodelAlgebra heyting_from_lattice(std::vector<std::string> labels,
                                  std::vector<std::vector<int>> meet,
                                  std::vector<std::vector<int>> join, int bot, int top);

// Full validity check used by tests and by untrusted inputs.
void validate_godel(const GodelAlgebra& a);

// Bounded-lattice homomorphism into the two-element chain, stored as a
// bit per element.  All TwoHoms of an algebra, ordered pointwise, form
// its Priestley/Esakia dual.
struct TwoHom {
    std::vector<char> bits;

    bool operator==(const TwoHom& o) const { return bits == o.bits; }
    bool operator<(const TwoHom& o) const { return bits < o.bits; }  // canonical order
    bool pointwise_leq(const TwoHom& o) const;
};

// omega: the TwoHom on a chain sending only top to 1.
TwoHom omega(const GodelAlgebra& chain);

// All TwoHoms of U(A), canonically ordered by bit-vector.
std::vector<TwoHom> hu_points(const GodelAlgebra& a);

// The Priestley/Esakia dual of A: poset of TwoHoms under the pointwise
// order.  For a Gödel algebra this is a forest (roots = maximal elements).
// Node i of the forest corresponds to hu_points(a)[i].
Forest hu_dual(const GodelAlgebra& a);

// Inverse direction: the algebra of up-sets of a forest under
// intersection/union, with implication derived from the order.
// Forests with more than 64 nodes or more up-sets than the enumeration
// cap raise a resource error.
GodelAlgebra vk_algebra(const Forest& f);

// Up-set masks backing vk_algebra's elements, in element order.
std::vector<std::uint64_t> vk_upsets(const Forest& f);

struct Homomorphism {
    AlgebraPtr source, target;
    std::vector<int> map;

    int operator()(int a) const { return map[a]; }
    bool injective() const;
};

bool is_homomorphism(const GodelAlgebra& src, const GodelAlgebra& tgt,
                     const std::vector<int>& map);
Homomorphism compose(const Homomorphism& g, const Homomorphism& f);  // g after f
Homomorphism identity_hom(const AlgebraPtr& a);

// All Heyting homomorphisms A -> C_n, enumerated through the (u,V) pairs
// of the hom-set bijection and verified; canonically sorted by value
// vector.  For A of depth > n-2 the (correct, possibly smaller) set is
// still returned.
std::vector<Homomorphism> hom_set(const AlgebraPtr& a, int n);
std::vector<Homomorphism> hom_set(const AlgebraPtr& a, const AlgebraPtr& chain);

// x -> (omega . x, ran x) and its inverse.  gamma demands 0, n-1 in V and
// |up(u)| + 1 = |V|.
std::pair<TwoHom, std::vector<int>> iota(const Homomorphism& x);
Homomorphism gamma(const AlgebraPtr& a, const AlgebraPtr& chain, const TwoHom& u,
                   const std::vector<int>& v);

TwoHom omega_compose(const Homomorphism& x);  // target must be a chain

// Least k with A in G_k: depth of the dual forest plus two.
int variety_index(const GodelAlgebra& a);

// Componentwise product algebra; labels "(a,b)".
GodelAlgebra product_algebra(const GodelAlgebra& a, const GodelAlgebra& b);

// Linear sum: a new bottom adjoined below all of A.
GodelAlgebra adjoin_bottom(const GodelAlgebra& a);

// Isomorphism of finite Gödel algebras, decided through their dual forests.
bool algebras_isomorphic(const GodelAlgebra& a, const GodelAlgebra& b);

// The lattice order of an algebra as a poset (its Hasse diagram).
Poset order_poset(const GodelAlgebra& a);

}  // namespace godel
