#pragma once

#include <vector>

#include "godel/algebra.hpp"
#include "godel/poset.hpp"

namespace godel {

// All forests with at most max_nodes nodes and depth at most max_depth,
// one representative per isomorphism class, the empty forest included.
// Canonically ordered (node count, then canonical form).
std::vector<Forest> enumerate_forests(int max_nodes, int max_depth);

// Esakia morphisms between forests: monotone maps with phi(up(y)) =
// up(phi(y)).  Used to enumerate homomorphisms between up-set algebras.
std::vector<std::vector<int>> esakia_morphisms(const Forest& from, const Forest& to);

// All Heyting homomorphisms a -> b, obtained from the Esakia morphisms
// between the dual forests; canonically sorted by value vector.
std::vector<Homomorphism> all_homs(const AlgebraPtr& a, const AlgebraPtr& b);
std::vector<Homomorphism> all_embeddings(const AlgebraPtr& a, const AlgebraPtr& b);

}  // namespace godel
