#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "godel/algebra.hpp"
#include "godel/sigma.hpp"

namespace godel {

// Finite object of the dual category for a fixed signature: a point set
// carrying one lifted partial operation per signature index and one total
// operation.  Topology is omitted (finite means discrete).
struct DualStructure {
    SigmaSignature sigma;
    std::vector<std::string> labels;
    std::vector<std::vector<int>> partial;  // partial[i][x] = image, -1 = undefined
    std::vector<int> endo;                  // total; identity table when n = 2

    int size() const { return static_cast<int>(labels.size()); }
    int n() const { return sigma.n; }
    int index_of(const std::string& label) const;
};

// The alter ego itself: points 0..n-1 with the signature's own tables.
DualStructure alter_ego(const SigmaSignature& sigma);

// D(A) together with the homomorphisms backing its points.
struct DualSpace {
    DualStructure structure;
    std::vector<Homomorphism> points;  // points[i] backs structure point i
    AlgebraPtr algebra;
    AlgebraPtr chain;

    int point_index(const std::vector<int>& hom_map) const;
};

// Points are hom_set(A, n) with the operations lifted by composition.
// A outside G_n is a variety error naming the depth witness.
DualSpace dual_space(const AlgebraPtr& a, const SigmaSignature& sigma);

struct StructureMorphism {
    std::shared_ptr<const DualStructure> source, target;
    std::vector<int> map;

    int operator()(int x) const { return map[x]; }
};

// Checks that a table is a morphism: commutes with the total operation and
// maps each partial domain into the target's, commuting there.
bool is_structure_morphism(const DualStructure& src, const DualStructure& tgt,
                           const std::vector<int>& map);

// D(f) : D(B) -> D(A) for f : A -> B, by composition.
StructureMorphism dual_map(const Homomorphism& f, const DualSpace& dual_of_target,
                           const DualSpace& dual_of_source);
StructureMorphism dual_map(const Homomorphism& f, const SigmaSignature& sigma);

// Pointwise product and finite power of structures (signatures must agree).
DualStructure product_structure(const DualStructure& x, const DualStructure& y);
DualStructure power_structure(const SigmaSignature& sigma, int exponent);

DualStructure substructure(const DualStructure& x, const std::vector<int>& points);
// Least substructure containing the given points (forward closure).
std::vector<int> substructure_closure(const DualStructure& x, std::vector<int> seed);
// All closed subsets; exponential, so capped.
std::vector<std::vector<int>> closed_substructures(const DualStructure& x,
                                                   bool include_empty = true);

bool structures_isomorphic(const DualStructure& x, const DualStructure& y);

// E(X): every structure-preserving map X -> alter ego, organised as a
// Gödel algebra under pointwise operations.  Backtracking with constraint
// propagation; node budget from the enumeration cap.
struct Evaluation {
    GodelAlgebra algebra;
    std::vector<std::vector<int>> maps;  // maps[element][point] in {0..n-1}
};
Evaluation evaluate_E(const DualStructure& x);

// Builds the evaluation map a |-> (x |-> x(a)) into E(D(A)) and checks it
// is a bijective homomorphism.  Theory guarantees success; a failure is
// reported as an internal inconsistency.
struct DualityCertificate {
    bool ok = false;
    std::vector<int> iso;  // element of A -> element index of E(D(A))
};
DualityCertificate check_duality(const AlgebraPtr& a, const SigmaSignature& sigma);

}  // namespace godel
