#include "godel/sigma.hpp"

#include <algorithm>

#include "godel/algebra.hpp"
#include "godel/error.hpp"

namespace godel {

bool PartialOp::total() const {
    return std::all_of(table.begin(), table.end(), [](int v) { return v >= 0; });
}

std::vector<int> PartialOp::domain() const {
    std::vector<int> d;
    for (int x = 0; x < n; ++x)
        if (defined(x)) d.push_back(x);
    return d;
}

PartialOp identity_op(int n) {
    PartialOp op{n, std::vector<int>(n)};
    for (int x = 0; x < n; ++x) op.table[x] = x;
    return op;
}

PartialOp g_op(int n, int i) {
    if (i < 1 || i > n - 3) throw_input("g_op: index must satisfy 1 <= i <= n-3");
    PartialOp op{n, std::vector<int>(n)};
    for (int x = 0; x < n; ++x) op.table[x] = x == i ? -1 : (x == i + 1 ? i : x);
    return op;
}

PartialOp f_op(int n, int i) {
    if (i < 1 || i > n - 3) throw_input("f_op: index must satisfy 1 <= i <= n-3");
    PartialOp op{n, std::vector<int>(n)};
    for (int x = 0; x < n; ++x) op.table[x] = x == i + 1 ? -1 : (x == i ? i + 1 : x);
    return op;
}

PartialOp h_op(int n, int j) {
    if (j < 1 || j > n - 2) throw_input("h_op: index must satisfy 1 <= j <= n-2");
    PartialOp op{n, std::vector<int>(n)};
    for (int x = 0; x < n; ++x) op.table[x] = (j <= x && x < n - 1) ? x + 1 : x;
    return op;
}

PartialOp compose(const PartialOp& outer, const PartialOp& inner) {
    if (outer.n != inner.n) throw_input("compose: chain size mismatch");
    PartialOp op{outer.n, std::vector<int>(outer.n, -1)};
    for (int x = 0; x < outer.n; ++x)
        if (inner.defined(x) && outer.defined(inner(x))) op.table[x] = outer(inner(x));
    return op;
}

bool is_partial_endomorphism(const PartialOp& op) {
    const int n = op.n;
    if (n < 2) return false;
    // any subset of a chain containing the bounds is a subuniverse
    if (!op.defined(0) || !op.defined(n - 1)) return false;
    if (op(0) != 0 || op(n - 1) != n - 1) return false;
    auto chain = make_chain(n);
    for (int x = 0; x < n; ++x) {
        if (!op.defined(x)) continue;
        for (int y = 0; y < n; ++y) {
            if (!op.defined(y)) continue;
            if (op(chain.meet[x][y]) != chain.meet[op(x)][op(y)]) return false;
            if (op(chain.join[x][y]) != chain.join[op(x)][op(y)]) return false;
            // meets/joins of domain elements stay in the domain, so the
            // lookups above are defined; implication likewise
            if (op(chain.impl[x][y]) != chain.impl[op(x)][op(y)]) return false;
        }
    }
    return true;
}

std::vector<PartialOp> partial_endos(int n) {
    std::vector<PartialOp> out;
    for (int i = 1; i <= n - 3; ++i) {
        out.push_back(g_op(n, i));
        out.push_back(f_op(n, i));
    }
    for (auto& op : out)
        if (!is_partial_endomorphism(op)) throw_internal("partial_endos: bad table");
    return out;
}

std::vector<PartialOp> endos_h(int n) {
    std::vector<PartialOp> out;
    for (int j = 1; j <= n - 2; ++j) out.push_back(h_op(n, j));
    for (auto& op : out)
        if (!is_partial_endomorphism(op) || !op.total()) throw_internal("endos_h: bad table");
    return out;
}

PartialOp SigmaSignature::partial(int i) const {
    if (i < 1 || i > partial_count()) throw_input("sigma: partial index out of range");
    return use_f[i - 1] ? f_op(n, i) : g_op(n, i);
}

PartialOp SigmaSignature::endo() const { return has_endo() ? h_op(n, endo_index) : identity_op(n); }

bool SigmaSignature::is_full() const {
    if (n <= 3) return true;
    if (endo_index != 1) return false;
    return std::none_of(use_f.begin(), use_f.end(), [](bool b) { return b; });
}

SigmaSignature make_sigma(int n, const std::vector<bool>& use_f, int endo_index) {
    if (n < 2) throw_input("sigma: n must be at least 2");
    SigmaSignature s;
    s.n = n;
    if (n == 2) {
        if (!use_f.empty() || endo_index != 0)
            throw_input("sigma: n = 2 admits only the empty signature");
        return s;
    }
    if (static_cast<int>(use_f.size()) != std::max(0, n - 3))
        throw_input("sigma: need exactly n-3 partial-operation choices");
    if (endo_index < 1 || endo_index > n - 2)
        throw_input("sigma: endomorphism index must satisfy 1 <= j <= n-2");
    s.use_f = use_f;
    s.endo_index = endo_index;
    return s;
}

SigmaSignature full_sigma(int n) {
    if (n == 2) return make_sigma(2, {}, 0);
    return make_sigma(n, std::vector<bool>(std::max(0, n - 3), false), 1);
}

SigmaSignature coproduct_default_sigma(int n) {
    if (n == 2) return make_sigma(2, {}, 0);
    return make_sigma(n, std::vector<bool>(std::max(0, n - 3), false), n - 2);
}

std::vector<SigmaSignature> all_sigmas(int n) {
    std::vector<SigmaSignature> out;
    if (n == 2) {
        out.push_back(make_sigma(2, {}, 0));
        return out;
    }
    const int k = std::max(0, n - 3);
    for (int mask = 0; mask < (1 << k); ++mask)
        for (int j = 1; j <= n - 2; ++j) {
            std::vector<bool> use_f(k);
            for (int i = 0; i < k; ++i) use_f[i] = (mask >> i) & 1;
            out.push_back(make_sigma(n, use_f, j));
        }
    return out;
}

SigmaSignature parse_sigma(const std::string& s, std::optional<int> n_hint) {
    auto hpos = s.find('h');
    int n;
    std::vector<bool> use_f;
    int endo = 0;
    if (hpos == std::string::npos) {
        if (!s.empty()) throw_input("sigma string must look like \"ggh1\" (or \"\" for n = 2)");
        n = n_hint.value_or(2);
        if (n != 2) throw_input("empty sigma string is only valid for n = 2");
    } else {
        n = static_cast<int>(hpos) + 3;
        if (n_hint && *n_hint != n)
            throw_input("sigma string length does not match the given n");
        for (std::size_t i = 0; i < hpos; ++i) {
            if (s[i] == 'g')
                use_f.push_back(false);
            else if (s[i] == 'f')
                use_f.push_back(true);
            else
                throw_input("sigma string may only contain 'f'/'g' before the 'h'");
        }
        try {
            std::size_t used = 0;
            endo = std::stoi(s.substr(hpos + 1), &used);
            if (used != s.size() - hpos - 1) throw_input("trailing junk after h-index");
        } catch (const godel_error&) {
            throw;
        } catch (...) {
            throw_input("sigma string has a malformed h-index");
        }
    }
    return make_sigma(n, use_f, endo);
}

std::string format_sigma(const SigmaSignature& sigma) {
    std::string s;
    for (bool f : sigma.use_f) s += f ? 'f' : 'g';
    if (sigma.has_endo()) s += "h" + std::to_string(sigma.endo_index);
    return s;
}

}  // namespace godel
