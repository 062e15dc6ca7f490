#pragma once

#include <utility>
#include <vector>

#include "godel/dual.hpp"
#include "godel/poset.hpp"

namespace godel {

// Partition of a structure's points into connectivity classes of the
// partial-operation graph (steps taken in either direction).
struct SimRelation {
    std::vector<int> class_of;              // point -> class id (0..k-1)
    std::vector<std::vector<int>> members;  // class id -> points

    int num_classes() const { return static_cast<int>(members.size()); }
    bool same(int x, int y) const { return class_of[x] == class_of[y]; }
};

SimRelation sim_classes(const DualStructure& x);

// Covering between classes induced by the total operation, plus the order
// it generates.  Construction fails structurally when the cover pairs are
// not the covering relation of an order (the input was then not a legal
// dual structure).
struct LayerOrder {
    std::vector<std::pair<int, int>> cover_pairs;  // (lower class, upper class)
    std::vector<std::vector<char>> leq;            // reflexive-transitive closure
};

LayerOrder cover_classes(const DualStructure& x, const SimRelation& sim);

// Quotient forest of a structure: one node per class, ordered by the layer
// order.  Node i of the forest is class i.
struct QuotientForest {
    Forest forest;
    SimRelation sim;
};

QuotientForest F_sigma_quotient(const DualStructure& x);
Forest F_sigma(const DualStructure& x);

// Forest map induced by a structure morphism: class of x -> class of eta(x).
// Raises structurally when the assignment is not well defined.
std::vector<int> F_sigma_morphism(const StructureMorphism& eta, const QuotientForest& qsrc,
                                  const QuotientForest& qtgt);

// Reconstruction of the natural dual from a forest: points are pairs
// (y, U) with 0, n-1 in U and |U| = |up(y)| + 1, with the g/f/h tables
// acting on the U component and the h table climbing to the unique upper
// cover when n-2 is in U.
struct PairStructure {
    DualStructure structure;
    std::vector<int> node_of;            // point -> forest node
    std::vector<std::vector<int>> u_of;  // point -> sorted U
};

PairStructure G_sigma_pairs(const Forest& y, const SigmaSignature& sigma);
DualStructure G_sigma(const Forest& y, const SigmaSignature& sigma);

// F(D(A)) isomorphic to the Esakia dual and G(Esakia dual) isomorphic to
// D(A), both via the generic isomorphism checkers.
bool roundtrip_check(const AlgebraPtr& a, const SigmaSignature& sigma);

}  // namespace godel
