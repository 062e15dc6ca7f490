#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "godel/algebra.hpp"
#include "godel/dual.hpp"
#include "godel/translate.hpp"

namespace godel {

// A span of two embeddings out of a common algebra.
struct VFormation {
    AlgebraPtr a, b, c;
    Homomorphism fb, fc;  // fb : a -> b, fc : a -> c, both injective
};

VFormation make_vformation(AlgebraPtr a, AlgebraPtr b, AlgebraPtr c, Homomorphism fb,
                           Homomorphism fc);

// Dual characterisation of embeddings: f is injective iff every point of
// D(A) is sim-equivalent to an image point of D(f).  The computed answer is
// cross-checked against table injectivity.
bool is_embedding_dual(const Homomorphism& f, const SigmaSignature& sigma);

struct PushoutResult {
    GodelAlgebra algebra;
    Homomorphism pb, pc;  // verified homomorphisms with pb . fb = pc . fc
};

// Pushout of a V-formation inside G_n, computed through the fibred product
// of the dual spaces under the full signature and the forest translation.
PushoutResult pushout(const VFormation& v, int n);

struct AmalgamCertificate {
    bool admits = false;
    // on admits: the pushout serves as the amalgam, materialized with its
    // embeddings whenever it is small enough to carry tables
    std::optional<PushoutResult> amalgam;
    unsigned long long amalgam_size = 0;  // element count, always known
    // on fails: a point of D(B) or D(C) violating the criterion
    std::string witness_side;   // "B" or "C"
    std::string witness_point;  // point label
    std::vector<int> witness_hom;
};

// Decides amalgamation by the dual criterion: every point of D(B) must be
// sim-equivalent to a point whose image under D(f_B) is hit by D(f_C), and
// symmetrically.  The verdict is cross-checked against injectivity of both
// pushout maps.
AmalgamCertificate admits_amalgamation(const VFormation& v, int n);

// Independent re-check of a certificate: verifies embeddings and the
// commuting square on admits, re-evaluates the witness on fails.
bool verify_certificate(const VFormation& v, int n, const AmalgamCertificate& cert);

// Deterministic sweep for a V-formation refused by G_n, assembled from the
// up-set algebras of all forests with at most max_nodes nodes and depth at
// most n-2.  Returns the first failure in enumeration order.
std::optional<VFormation> find_failing_vformation(int n, int max_nodes);

// Coproduct in G_n via dual products: Esakia dual, reconstruction, product,
// quotient, up-set algebra.  An algebra outside G_n is a variety error
// naming the offender; the empty family yields the initial algebra C_2.
GodelAlgebra coproduct_in_Gn(const std::vector<AlgebraPtr>& k, int n,
                             std::optional<SigmaSignature> sigma = std::nullopt);

// The Esakia dual of the coproduct (the quotient forest of the product of
// the reconstructed duals).  Usable even when the coproduct itself is too
// large to materialize; its element count is count_upsets of this forest.
Forest coproduct_dual_forest(const std::vector<AlgebraPtr>& k, int n,
                             std::optional<SigmaSignature> sigma = std::nullopt);

// Coproduct in the whole variety, computed in G_m for
// m = 2 + sum (variety_index - 2).
GodelAlgebra coproduct_in_G(const std::vector<AlgebraPtr>& k);

struct FreeAlgebra {
    GodelAlgebra algebra;
    std::vector<int> generators;  // element indices of the free generators
};

// Free algebra on `gens` generators in G_n, with the universal property
// verified against every generator assignment into C_n.
FreeAlgebra free_algebra(int n, int gens);

// Fullness test for a signature.  Non-full signatures return the witness
// substructure X of the alter ego with X not isomorphic to G(F(X)); the
// full signature returns nothing after a realization sweep over all closed
// substructures of the alter ego and sampled substructures of its square.
struct FullnessReport {
    bool full = false;
    std::optional<DualStructure> witness;
    int substructures_checked = 0;
};

FullnessReport fullness_witness(int n, const SigmaSignature& sigma, int samples = 100,
                                std::uint64_t seed = 1);

}  // namespace godel
