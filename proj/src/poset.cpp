#include "godel/poset.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

#include "godel/error.hpp"

namespace godel {

const char* errc_name(errc c) {
    switch (c) {
        case errc::input: return "input";
        case errc::variety: return "variety";
        case errc::structural: return "structural";
        case errc::resource: return "resource";
        case errc::internal: return "internal";
    }
    return "unknown";
}

namespace {

std::size_t& cap_storage() {
    static std::size_t cap = [] {
        if (const char* env = std::getenv("GODEL_CAP")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        }
        return static_cast<std::size_t>(1'000'000);
    }();
    return cap;
}

}  // namespace

std::size_t enumeration_cap() { return cap_storage(); }

void set_enumeration_cap(std::size_t cap) {
    if (cap > 0) cap_storage() = cap;
}

int Poset::index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (labels[i] == label) return i;
    return -1;
}

namespace {

// Reflexive-transitive closure of a relation given as an adjacency matrix.
void close_transitively(std::vector<std::vector<char>>& rel) {
    const int n = static_cast<int>(rel.size());
    for (int i = 0; i < n; ++i) rel[i][i] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            if (!rel[i][k]) continue;
            for (int j = 0; j < n; ++j)
                if (rel[k][j]) rel[i][j] = 1;
        }
}

std::vector<std::pair<int, int>> covering_pairs(const std::vector<std::vector<char>>& leq) {
    const int n = static_cast<int>(leq.size());
    std::vector<std::pair<int, int>> covers;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b || !leq[a][b]) continue;
            bool direct = true;
            for (int c = 0; c < n && direct; ++c)
                if (c != a && c != b && leq[a][c] && leq[c][b]) direct = false;
            if (direct) covers.emplace_back(a, b);
        }
    std::sort(covers.begin(), covers.end());
    return covers;
}

Poset make_poset_impl(std::vector<std::string> labels,
                      const std::vector<std::pair<int, int>>& relation, errc cycle_errc) {
    const int n = static_cast<int>(labels.size());
    {
        std::set<std::string> seen(labels.begin(), labels.end());
        if (static_cast<int>(seen.size()) != n) throw_input("duplicate element labels in poset");
    }
    std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
    for (auto [lo, hi] : relation) {
        if (lo < 0 || lo >= n || hi < 0 || hi >= n) throw_input("relation pair out of range");
        rel[lo][hi] = 1;
    }
    close_transitively(rel);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b && rel[a][b] && rel[b][a])
                throw godel_error(cycle_errc, "relation has a cycle through '" + labels[a] +
                                                  "' and '" + labels[b] + "'");
    Poset p;
    p.labels = std::move(labels);
    p.leq_ = std::move(rel);
    p.covers = covering_pairs(p.leq_);
    return p;
}

}  // namespace

Poset make_poset(std::vector<std::string> labels,
                 const std::vector<std::pair<int, int>>& relation) {
    return make_poset_impl(std::move(labels), relation, errc::input);
}

Poset make_poset_structural(std::vector<std::string> labels,
                            const std::vector<std::pair<int, int>>& relation) {
    return make_poset_impl(std::move(labels), relation, errc::structural);
}

std::vector<int> up_set(const Poset& p, int elem) {
    if (elem < 0 || elem >= p.size()) throw_input("up_set: element index out of range");
    std::vector<int> out;
    for (int q = 0; q < p.size(); ++q)
        if (p.leq(elem, q)) out.push_back(q);
    return out;
}

std::vector<int> up_set(const Poset& p, const std::string& label) {
    int i = p.index_of(label);
    if (i < 0) throw_input("up_set: unknown element '" + label + "'");
    return up_set(p, i);
}

std::vector<int> down_set(const Poset& p, int elem) {
    if (elem < 0 || elem >= p.size()) throw_input("down_set: element index out of range");
    std::vector<int> out;
    for (int q = 0; q < p.size(); ++q)
        if (p.leq(q, elem)) out.push_back(q);
    return out;
}

std::vector<int> upper_covers(const Poset& p, int elem) {
    std::vector<int> out;
    for (auto [lo, hi] : p.covers)
        if (lo == elem) out.push_back(hi);
    return out;
}

std::vector<int> lower_covers(const Poset& p, int elem) {
    std::vector<int> out;
    for (auto [lo, hi] : p.covers)
        if (hi == elem) out.push_back(lo);
    return out;
}

int count_upper_covers(const Poset& p, int elem) {
    return static_cast<int>(upper_covers(p, elem).size());
}

bool is_maximal(const Poset& p, int elem) { return count_upper_covers(p, elem) == 0; }

namespace {

int longest_chain_from(const Poset& p, int elem, std::vector<int>& memo) {
    if (memo[elem] >= 0) return memo[elem];
    int best = 0;
    for (int q : upper_covers(p, elem)) best = std::max(best, 1 + longest_chain_from(p, q, memo));
    return memo[elem] = best;
}

}  // namespace

int depth_of(const Poset& p, int elem) {
    if (elem < 0 || elem >= p.size()) throw_input("depth_of: element index out of range");
    std::vector<int> memo(p.size(), -1);
    return longest_chain_from(p, elem, memo);
}

int depth(const Poset& p) {
    std::vector<int> memo(p.size(), -1);
    int best = 0;
    for (int e = 0; e < p.size(); ++e) best = std::max(best, longest_chain_from(p, e, memo));
    return best;
}

bool is_forest(const Poset& p) {
    for (int e = 0; e < p.size(); ++e) {
        auto up = up_set(p, e);
        for (std::size_t i = 0; i < up.size(); ++i)
            for (std::size_t j = i + 1; j < up.size(); ++j)
                if (!p.leq(up[i], up[j]) && !p.leq(up[j], up[i])) return false;
    }
    return true;
}

Poset poset_product(const Poset& p, const Poset& q) {
    const int np = p.size(), nq = q.size();
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(np) * nq);
    for (int a = 0; a < np; ++a)
        for (int b = 0; b < nq; ++b) labels.push_back("(" + p.labels[a] + "," + q.labels[b] + ")");
    std::vector<std::pair<int, int>> rel;
    auto id = [nq](int a, int b) { return a * nq + b; };
    for (int a = 0; a < np; ++a)
        for (int b = 0; b < nq; ++b)
            for (int c = 0; c < np; ++c)
                for (int d = 0; d < nq; ++d)
                    if (p.leq(a, c) && q.leq(b, d)) rel.emplace_back(id(a, b), id(c, d));
    return make_poset(std::move(labels), rel);
}

Poset quotient(const Poset& p, const std::vector<int>& class_of,
               const std::function<bool(int, int)>& cover_rule) {
    const int n = p.size();
    if (static_cast<int>(class_of.size()) != n) throw_input("quotient: partition size mismatch");
    int k = 0;
    for (int c : class_of) {
        if (c < 0) throw_input("quotient: negative class id");
        k = std::max(k, c + 1);
    }
    std::vector<std::vector<int>> members(k);
    for (int e = 0; e < n; ++e) members[class_of[e]].push_back(e);
    std::vector<std::string> labels(k);
    for (int c = 0; c < k; ++c) {
        if (members[c].empty()) throw_input("quotient: empty class in partition");
        std::string s = "{";
        for (std::size_t i = 0; i < members[c].size(); ++i) {
            if (i) s += ",";
            s += p.labels[members[c][i]];
        }
        labels[c] = s + "}";
    }
    std::vector<std::pair<int, int>> raw;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (class_of[a] != class_of[b] && cover_rule(a, b))
                raw.emplace_back(class_of[a], class_of[b]);
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    Poset out = make_poset_structural(std::move(labels), raw);
    // The rule pairs must come back as the covering relation of the induced
    // order; a strictly implied pair means the input was out of contract.
    if (out.covers != raw)
        throw_structural("quotient: cover rule is not the covering relation of its closure");
    return out;
}

Forest as_forest(const Poset& p) {
    if (!is_forest(p)) throw_structural("poset is not a forest: some up-set is not a chain");
    Forest f;
    f.poset = p;
    f.parent.assign(p.size(), -1);
    for (int e = 0; e < p.size(); ++e) {
        auto up = upper_covers(p, e);
        if (up.size() > 1) throw_internal("forest node with two upper covers");
        if (!up.empty()) f.parent[e] = up[0];
    }
    return f;
}

Forest make_forest(std::vector<std::string> labels, const std::vector<int>& parent) {
    const int n = static_cast<int>(labels.size());
    if (static_cast<int>(parent.size()) != n) throw_input("make_forest: parent size mismatch");
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i < n; ++i) {
        if (parent[i] == i) throw_input("make_forest: node is its own parent");
        if (parent[i] >= n || parent[i] < -1) throw_input("make_forest: parent out of range");
        if (parent[i] >= 0) rel.emplace_back(i, parent[i]);
    }
    return as_forest(make_poset(std::move(labels), rel));
}

unsigned long long count_upsets(const Forest& f) {
    std::vector<std::vector<int>> children(f.size());
    std::vector<int> roots;
    for (int i = 0; i < f.size(); ++i) {
        if (f.parent[i] >= 0)
            children[f.parent[i]].push_back(i);
        else
            roots.push_back(i);
    }
    // up-sets of a tree: empty, or the root plus one up-set per child
    // subtree; saturating arithmetic, counts can overflow on wide forests
    const unsigned long long lim = ~0ULL / 2;
    auto mul = [lim](unsigned long long a, unsigned long long b) {
        return (b != 0 && a > lim / b) ? lim : a * b;
    };
    std::function<unsigned long long(int)> tree = [&](int v) -> unsigned long long {
        unsigned long long prod = 1;
        for (int c : children[v]) prod = mul(prod, tree(c));
        return prod >= lim ? lim : 1 + prod;
    };
    unsigned long long total = 1;
    for (int r : roots) total = mul(total, tree(r));
    return total;
}

namespace {

std::string node_code(const Forest& f, int node, const std::vector<std::vector<int>>& children) {
    std::vector<std::string> parts;
    for (int c : children[node]) parts.push_back(node_code(f, c, children));
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (auto& s : parts) out += s;
    return out + ")";
}

}  // namespace

std::string canonical_form(const Forest& f) {
    std::vector<std::vector<int>> children(f.size());
    std::vector<std::string> roots;
    for (int i = 0; i < f.size(); ++i)
        if (f.parent[i] >= 0) children[f.parent[i]].push_back(i);
    for (int i = 0; i < f.size(); ++i)
        if (f.parent[i] < 0) roots.push_back(node_code(f, i, children));
    std::sort(roots.begin(), roots.end());
    std::string out;
    for (auto& s : roots) out += s;
    return out;
}

namespace {

// Backtracking isomorphism for general posets, pruned by per-element
// signatures (sizes of up/down sets, covers, depth).
struct PosetIso {
    const Poset& p;
    const Poset& q;
    std::vector<int> map, used;

    static std::vector<std::tuple<int, int, int, int, int>> signatures(const Poset& r) {
        std::vector<std::tuple<int, int, int, int, int>> sig(r.size());
        for (int e = 0; e < r.size(); ++e)
            sig[e] = {static_cast<int>(up_set(r, e).size()),
                      static_cast<int>(down_set(r, e).size()),
                      static_cast<int>(upper_covers(r, e).size()),
                      static_cast<int>(lower_covers(r, e).size()), depth_of(r, e)};
        return sig;
    }

    bool run() {
        if (p.size() != q.size()) return false;
        auto sp = signatures(p), sq = signatures(q);
        {
            auto a = sp, b = sq;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a != b) return false;
        }
        map.assign(p.size(), -1);
        used.assign(q.size(), 0);
        return place(0, sp, sq);
    }

    bool place(int e, const std::vector<std::tuple<int, int, int, int, int>>& sp,
               const std::vector<std::tuple<int, int, int, int, int>>& sq) {
        if (e == p.size()) return true;
        for (int t = 0; t < q.size(); ++t) {
            if (used[t] || sp[e] != sq[t]) continue;
            bool ok = true;
            for (int e2 = 0; e2 < e && ok; ++e2) {
                if (p.leq(e, e2) != q.leq(t, map[e2])) ok = false;
                if (p.leq(e2, e) != q.leq(map[e2], t)) ok = false;
            }
            if (!ok) continue;
            map[e] = t;
            used[t] = 1;
            if (place(e + 1, sp, sq)) return true;
            used[t] = 0;
            map[e] = -1;
        }
        return false;
    }
};

}  // namespace

bool iso_check(const Poset& p, const Poset& q) {
    if (p.size() != q.size()) return false;
    if (is_forest(p) && is_forest(q)) return canonical_form(as_forest(p)) == canonical_form(as_forest(q));
    PosetIso iso{p, q, {}, {}};
    return iso.run();
}

bool iso_check(const Forest& p, const Forest& q) { return canonical_form(p) == canonical_form(q); }

}  // namespace godel
