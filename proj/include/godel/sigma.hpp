#pragma once

#include <optional>
#include <string>
#include <vector>

namespace godel {

// Unary partial map on the chain {0,..,n-1}; -1 marks "undefined".
// The named families g_i, f_i, h_j are all partial endomorphisms of C_n.
struct PartialOp {
    int n = 0;
    std::vector<int> table;

    bool defined(int x) const { return table[x] >= 0; }
    int operator()(int x) const { return table[x]; }
    bool total() const;
    std::vector<int> domain() const;
    bool operator==(const PartialOp& o) const { return n == o.n && table == o.table; }
};

PartialOp identity_op(int n);
// g_i: domain C_n \ {i}, sends i+1 to i, fixes the rest.   1 <= i <= n-3
PartialOp g_op(int n, int i);
// f_i: the inverse of g_i (domain C_n \ {i+1}).            1 <= i <= n-3
PartialOp f_op(int n, int i);
// h_j: the endomorphism with range C_n \ {j}.              1 <= j <= n-2
PartialOp h_op(int n, int j);

// Composition with the maximal domain: defined at x exactly when every
// stage is defined.
PartialOp compose(const PartialOp& outer, const PartialOp& inner);

// Checks that the domain is a subuniverse of C_n and the map is a Heyting
// homomorphism from that subalgebra into C_n.
bool is_partial_endomorphism(const PartialOp& op);

std::vector<PartialOp> partial_endos(int n);  // g_1..g_{n-3}, f_1..f_{n-3}
std::vector<PartialOp> endos_h(int n);        // h_1..h_{n-2}

// An admissible alter-ego signature: one of f_i/g_i per index 1..n-3 plus
// one endomorphism h_j.  n = 3 forces (h_1); n = 2 forces the empty
// signature (plain Stone duality).
struct SigmaSignature {
    int n = 0;
    std::vector<bool> use_f;  // size max(n-3, 0)
    int endo_index = 0;       // 1..n-2, or 0 when n = 2

    int partial_count() const { return static_cast<int>(use_f.size()); }
    bool has_endo() const { return endo_index > 0; }
    PartialOp partial(int i) const;  // i in 1..n-3
    PartialOp endo() const;          // identity when n = 2
    bool is_full() const;            // all-g with h_1 (n <= 3: always)
    bool operator==(const SigmaSignature& o) const {
        return n == o.n && use_f == o.use_f && endo_index == o.endo_index;
    }
};

SigmaSignature make_sigma(int n, const std::vector<bool>& use_f, int endo_index);
SigmaSignature full_sigma(int n);               // (g_1,...,g_{n-3},h_1)
SigmaSignature coproduct_default_sigma(int n);  // (g_1,...,g_{n-3},h_{n-2})
std::vector<SigmaSignature> all_sigmas(int n);  // size 2^{n-3}(n-2) for n >= 4

// String form used by the CLI and JSON: "ggh3" = (g_1,g_2,h_3) with n = 5,
// "h1" = n = 3, "" = n = 2.  When n is supplied it must agree.
SigmaSignature parse_sigma(const std::string& s, std::optional<int> n = std::nullopt);
std::string format_sigma(const SigmaSignature& sigma);

}  // namespace godel
