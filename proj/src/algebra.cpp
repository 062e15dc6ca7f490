#include "godel/algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "godel/error.hpp"

namespace godel {

int GodelAlgebra::index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (labels[i] == label) return i;
    return -1;
}

GodelAlgebra make_trivial() {
    GodelAlgebra a;
    a.labels = {"*"};
    a.bot = a.top = 0;
    a.meet = a.join = a.impl = {{0}};
    return a;
}

GodelAlgebra make_chain(int n) {
    if (n < 2) throw_input("make_chain: n must be at least 2 (the trivial algebra is separate)");
    GodelAlgebra a;
    a.labels.resize(n);
    for (int i = 0; i < n; ++i) a.labels[i] = std::to_string(i);
    a.bot = 0;
    a.top = n - 1;
    a.meet.assign(n, std::vector<int>(n));
    a.join.assign(n, std::vector<int>(n));
    a.impl.assign(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            a.meet[x][y] = std::min(x, y);
            a.join[x][y] = std::max(x, y);
            a.impl[x][y] = x <= y ? n - 1 : y;
        }
    return a;
}

namespace {

void check_lattice(const GodelAlgebra& a) {
    const int n = a.size();
    if (n == 0) throw_input("algebra must have at least one element");
    auto in_range = [n](int v) { return v >= 0 && v < n; };
    if (!in_range(a.bot) || !in_range(a.top)) throw_input("bot/top out of range");
    if (static_cast<int>(a.meet.size()) != n || static_cast<int>(a.join.size()) != n)
        throw_input("operation table size mismatch");
    for (int x = 0; x < n; ++x) {
        if (static_cast<int>(a.meet[x].size()) != n || static_cast<int>(a.join[x].size()) != n)
            throw_input("operation table row size mismatch");
        for (int y = 0; y < n; ++y)
            if (!in_range(a.meet[x][y]) || !in_range(a.join[x][y]))
                throw_input("operation table entry out of range");
    }
    for (int x = 0; x < n; ++x) {
        if (a.meet[x][x] != x || a.join[x][x] != x) throw_input("lattice not idempotent");
        if (a.meet[x][a.bot] != a.bot || a.join[x][a.top] != a.top ||
            a.meet[x][a.top] != x || a.join[x][a.bot] != x)
            throw_input("bounds are not lattice bounds");
        for (int y = 0; y < n; ++y) {
            if (a.meet[x][y] != a.meet[y][x] || a.join[x][y] != a.join[y][x])
                throw_input("lattice not commutative");
            if (a.join[x][a.meet[x][y]] != x || a.meet[x][a.join[x][y]] != x)
                throw_input("absorption fails");
            for (int z = 0; z < n; ++z) {
                if (a.meet[a.meet[x][y]][z] != a.meet[x][a.meet[y][z]] ||
                    a.join[a.join[x][y]][z] != a.join[x][a.join[y][z]])
                    throw_input("lattice not associative");
                if (a.meet[x][a.join[y][z]] != a.join[a.meet[x][y]][a.meet[x][z]])
                    throw_input("lattice not distributive (witness '" + a.labels[x] + "','" +
                                a.labels[y] + "','" + a.labels[z] + "')");
            }
        }
    }
}

}  // namespace

GodelAlgebra heyting_from_lattice(std::vector<std::string> labels,
                                  std::vector<std::vector<int>> meet,
                                  std::vector<std::vector<int>> join, int bot, int top) {
    GodelAlgebra a;
    a.labels = std::move(labels);
    a.meet = std::move(meet);
    a.join = std::move(join);
    a.bot = bot;
    a.top = top;
    {
        std::set<std::string> seen(a.labels.begin(), a.labels.end());
        if (seen.size() != a.labels.size()) throw_input("duplicate element labels in algebra");
    }
    check_lattice(a);
    const int n = a.size();
    a.impl.assign(n, std::vector<int>(n, -1));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            // join of all c with x /\ c <= y; distributivity makes it the largest such c
            int best = a.bot;
            for (int c = 0; c < n; ++c)
                if (a.leq(a.meet[x][c], y)) best = a.join[best][c];
            if (!a.leq(a.meet[x][best], y))
                throw_input("no relative pseudocomplement for ('" + a.labels[x] + "','" +
                            a.labels[y] + "')");
            a.impl[x][y] = best;
        }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (a.join[a.impl[x][y]][a.impl[y][x]] != a.top)
                throw_input("not a Gödel algebra: prelinearity fails at ('" + a.labels[x] +
                            "','" + a.labels[y] + "')");
    return a;
}

void validate_godel(const GodelAlgebra& a) {
    if (a.trivial()) return;
    GodelAlgebra rebuilt =
        heyting_from_lattice(a.labels, a.meet, a.join, a.bot, a.top);
    if (rebuilt.impl != a.impl)
        throw_input("implication table is not the one determined by the order");
    const int n = a.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (a.leq(a.meet[x][y], z) != a.leq(x, a.impl[y][z]))
                    throw_input("residuation fails");
}

bool TwoHom::pointwise_leq(const TwoHom& o) const {
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i] && !o.bits[i]) return false;
    return true;
}

TwoHom omega(const GodelAlgebra& chain) {
    TwoHom u;
    u.bits.assign(chain.size(), 0);
    u.bits[chain.top] = 1;
    return u;
}

std::vector<TwoHom> hu_points(const GodelAlgebra& a) {
    // TwoHoms correspond to prime filters, i.e. principal filters of
    // join-irreducible elements.
    const int n = a.size();
    std::vector<TwoHom> out;
    if (a.trivial()) return out;
    for (int j = 0; j < n; ++j) {
        if (j == a.bot) continue;
        int below = a.bot;
        for (int b = 0; b < n; ++b)
            if (b != j && a.leq(b, j)) below = a.join[below][b];
        if (below == j) continue;  // join-reducible
        TwoHom u;
        u.bits.assign(n, 0);
        for (int x = 0; x < n; ++x) u.bits[x] = a.leq(j, x) ? 1 : 0;
        out.push_back(std::move(u));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Forest hu_dual(const GodelAlgebra& a) {
    auto pts = hu_points(a);
    const int m = static_cast<int>(pts.size());
    std::vector<std::string> labels(m);
    for (int i = 0; i < m; ++i) {
        // label by the generating join-irreducible (the least 1-bit element)
        int gen = -1;
        for (int x = 0; x < a.size(); ++x)
            if (pts[i].bits[x] && (gen < 0 || a.leq(x, gen))) gen = x;
        labels[i] = a.labels[gen];
    }
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j && pts[i].pointwise_leq(pts[j])) rel.emplace_back(i, j);
    Poset p = make_poset(std::move(labels), rel);
    return as_forest(p);
}

std::vector<std::uint64_t> vk_upsets(const Forest& f) {
    const int n = f.size();
    if (n > 64) throw_resource("vk_algebra: forests above 64 nodes are not supported");
    std::vector<std::vector<int>> children(n);
    std::vector<int> roots;
    for (int i = 0; i < n; ++i) {
        if (f.parent[i] >= 0)
            children[f.parent[i]].push_back(i);
        else
            roots.push_back(i);
    }
    const std::size_t cap = enumeration_cap();
    // up-sets of the subtree rooted at v: empty, or v plus an up-set per child subtree
    std::function<std::vector<std::uint64_t>(int)> tree = [&](int v) {
        std::vector<std::uint64_t> acc{std::uint64_t(1) << v};
        for (int c : children[v]) {
            auto sub = tree(c);
            std::vector<std::uint64_t> next;
            next.reserve(acc.size() * sub.size());
            for (auto m1 : acc)
                for (auto m2 : sub) next.push_back(m1 | m2);
            if (next.size() > cap) throw_resource("vk_algebra: up-set enumeration cap exceeded");
            acc = std::move(next);
        }
        acc.push_back(0);
        return acc;
    };
    std::vector<std::uint64_t> all{0};
    for (int r : roots) {
        auto sub = tree(r);
        std::vector<std::uint64_t> next;
        next.reserve(all.size() * sub.size());
        for (auto m1 : all)
            for (auto m2 : sub) next.push_back(m1 | m2);
        if (next.size() > cap) throw_resource("vk_algebra: up-set enumeration cap exceeded");
        all = std::move(next);
    }
    std::sort(all.begin(), all.end(), [](std::uint64_t x, std::uint64_t y) {
        int px = __builtin_popcountll(x), py = __builtin_popcountll(y);
        return px != py ? px < py : x < y;
    });
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

GodelAlgebra vk_algebra(const Forest& f) {
    // the m x m tables put a much lower ceiling on m than enumeration does
    unsigned long long projected = count_upsets(f);
    if (projected > 6000)
        throw_resource("vk_algebra: " + std::to_string(projected) +
                       " elements is too large to materialize operation tables for; "
                       "work with the dual forest instead");
    auto sets = vk_upsets(f);
    const int m = static_cast<int>(sets.size());
    const int nodes = f.size();
    std::vector<std::uint64_t> upmask(nodes, 0);
    for (int p = 0; p < nodes; ++p)
        for (int q : up_set(f.poset, p)) upmask[p] |= std::uint64_t(1) << q;

    GodelAlgebra a;
    a.labels.resize(m);
    std::unordered_map<std::uint64_t, int> index;
    for (int i = 0; i < m; ++i) {
        index[sets[i]] = i;
        std::string s = "{";
        bool first = true;
        for (int p = 0; p < nodes; ++p)
            if (sets[i] >> p & 1) {
                if (!first) s += ",";
                s += f.poset.labels[p];
                first = false;
            }
        a.labels[i] = s + "}";
    }
    a.bot = index.at(0);
    std::uint64_t full = nodes == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << nodes) - 1;
    a.top = index.at(full);
    a.meet.assign(m, std::vector<int>(m));
    a.join.assign(m, std::vector<int>(m));
    a.impl.assign(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            a.meet[i][j] = index.at(sets[i] & sets[j]);
            a.join[i][j] = index.at(sets[i] | sets[j]);
            // U -> V = { p : up(p) /\ U <= V }
            std::uint64_t r = 0;
            for (int p = 0; p < nodes; ++p)
                if ((upmask[p] & sets[i] & ~sets[j]) == 0) r |= std::uint64_t(1) << p;
            a.impl[i][j] = index.at(r);
        }
    return a;
}

bool Homomorphism::injective() const {
    std::set<int> seen(map.begin(), map.end());
    return seen.size() == map.size();
}

bool is_homomorphism(const GodelAlgebra& src, const GodelAlgebra& tgt,
                     const std::vector<int>& map) {
    const int n = src.size();
    if (static_cast<int>(map.size()) != n) return false;
    for (int v : map)
        if (v < 0 || v >= tgt.size()) return false;
    if (map[src.bot] != tgt.bot || map[src.top] != tgt.top) return false;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (map[src.meet[x][y]] != tgt.meet[map[x]][map[y]]) return false;
            if (map[src.join[x][y]] != tgt.join[map[x]][map[y]]) return false;
            if (map[src.impl[x][y]] != tgt.impl[map[x]][map[y]]) return false;
        }
    return true;
}

Homomorphism compose(const Homomorphism& g, const Homomorphism& f) {
    if (g.source.get() != f.target.get() && g.source->labels != f.target->labels)
        throw_input("compose: homomorphisms are not composable");
    Homomorphism h;
    h.source = f.source;
    h.target = g.target;
    h.map.resize(f.map.size());
    for (std::size_t i = 0; i < f.map.size(); ++i) h.map[i] = g.map[f.map[i]];
    return h;
}

Homomorphism identity_hom(const AlgebraPtr& a) {
    Homomorphism h;
    h.source = h.target = a;
    h.map.resize(a->size());
    std::iota(h.map.begin(), h.map.end(), 0);
    return h;
}

std::vector<Homomorphism> hom_set(const AlgebraPtr& a, const AlgebraPtr& chain) {
    const int n = chain->size();
    auto pts = hu_points(*a);
    const int m = static_cast<int>(pts.size());
    std::vector<Homomorphism> out;
    if (a->trivial()) return out;

    // up-set sizes in the pointwise order
    std::vector<std::vector<int>> above(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (pts[i].pointwise_leq(pts[j])) above[i].push_back(j);

    for (int i = 0; i < m; ++i) {
        const int need = static_cast<int>(above[i].size()) - 1;  // |V| = |up(u)| + 1
        if (need > n - 2) continue;                               // no compatible V fits
        // choose the middle of V from {1..n-2}
        std::vector<int> middle(need);
        std::function<void(int, int)> choose = [&](int from, int k) {
            if (k == need) {
                std::vector<int> v{0};
                v.insert(v.end(), middle.begin(), middle.end());
                v.push_back(n - 1);
                Homomorphism h;
                h.source = a;
                h.target = chain;
                h.map.resize(a->size());
                for (int e = 0; e < a->size(); ++e) {
                    int k2 = 0;
                    for (int j : above[i]) k2 += pts[j].bits[e];
                    h.map[e] = v[k2];
                }
                if (!is_homomorphism(*a, *chain, h.map))
                    throw_internal("hom_set: generated map failed the homomorphism check");
                out.push_back(std::move(h));
                return;
            }
            for (int c = from; c <= n - 2; ++c) {
                middle[k] = c;
                choose(c + 1, k + 1);
            }
        };
        choose(1, 0);
    }
    std::sort(out.begin(), out.end(),
              [](const Homomorphism& x, const Homomorphism& y) { return x.map < y.map; });
    return out;
}

std::vector<Homomorphism> hom_set(const AlgebraPtr& a, int n) {
    return hom_set(a, share(make_chain(n)));
}

TwoHom omega_compose(const Homomorphism& x) {
    const auto& tgt = *x.target;
    TwoHom u;
    u.bits.resize(x.map.size());
    for (std::size_t e = 0; e < x.map.size(); ++e) u.bits[e] = x.map[e] == tgt.top ? 1 : 0;
    return u;
}

std::pair<TwoHom, std::vector<int>> iota(const Homomorphism& x) {
    std::vector<int> ran(x.map.begin(), x.map.end());
    std::sort(ran.begin(), ran.end());
    ran.erase(std::unique(ran.begin(), ran.end()), ran.end());
    return {omega_compose(x), ran};
}

Homomorphism gamma(const AlgebraPtr& a, const AlgebraPtr& chain, const TwoHom& u,
                   const std::vector<int>& v) {
    const int n = chain->size();
    if (v.empty() || v.front() != 0 || v.back() != n - 1 ||
        std::adjacent_find(v.begin(), v.end(),
                           [](int x, int y) { return x >= y; }) != v.end())
        throw_input("gamma: V must be strictly increasing and contain 0 and n-1");
    auto pts = hu_points(*a);
    std::vector<const TwoHom*> up;
    auto it = std::find(pts.begin(), pts.end(), u);
    if (it == pts.end()) throw_input("gamma: u is not a TwoHom of A");
    for (const auto& w : pts)
        if (u.pointwise_leq(w)) up.push_back(&w);
    if (up.size() + 1 != v.size()) throw_input("gamma: |V| must equal |up(u)| + 1");
    Homomorphism h;
    h.source = a;
    h.target = chain;
    h.map.resize(a->size());
    for (int e = 0; e < a->size(); ++e) {
        int k = 0;
        for (auto* w : up) k += w->bits[e];
        h.map[e] = v[k];
    }
    if (!is_homomorphism(*a, *chain, h.map))
        throw_internal("gamma: generated map failed the homomorphism check");
    return h;
}

int variety_index(const GodelAlgebra& a) { return depth(hu_dual(a).poset) + 2; }

GodelAlgebra product_algebra(const GodelAlgebra& a, const GodelAlgebra& b) {
    const int na = a.size(), nb = b.size();
    GodelAlgebra p;
    p.labels.reserve(static_cast<std::size_t>(na) * nb);
    for (int x = 0; x < na; ++x)
        for (int y = 0; y < nb; ++y) p.labels.push_back("(" + a.labels[x] + "," + b.labels[y] + ")");
    auto id = [nb](int x, int y) { return x * nb + y; };
    p.bot = id(a.bot, b.bot);
    p.top = id(a.top, b.top);
    const int m = na * nb;
    p.meet.assign(m, std::vector<int>(m));
    p.join.assign(m, std::vector<int>(m));
    p.impl.assign(m, std::vector<int>(m));
    for (int x1 = 0; x1 < na; ++x1)
        for (int y1 = 0; y1 < nb; ++y1)
            for (int x2 = 0; x2 < na; ++x2)
                for (int y2 = 0; y2 < nb; ++y2) {
                    int i = id(x1, y1), j = id(x2, y2);
                    p.meet[i][j] = id(a.meet[x1][x2], b.meet[y1][y2]);
                    p.join[i][j] = id(a.join[x1][x2], b.join[y1][y2]);
                    p.impl[i][j] = id(a.impl[x1][x2], b.impl[y1][y2]);
                }
    return p;
}

GodelAlgebra adjoin_bottom(const GodelAlgebra& a) {
    const int n = a.size();
    std::vector<std::string> labels = a.labels;
    std::string nb = "v";
    while (std::find(labels.begin(), labels.end(), nb) != labels.end()) nb += "'";
    labels.push_back(nb);
    const int z = n;  // index of the new bottom
    std::vector<std::vector<int>> meet(n + 1, std::vector<int>(n + 1));
    std::vector<std::vector<int>> join(n + 1, std::vector<int>(n + 1));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            meet[x][y] = a.meet[x][y];
            join[x][y] = a.join[x][y];
        }
    for (int x = 0; x <= n; ++x) {
        meet[x][z] = meet[z][x] = z;
        join[x][z] = join[z][x] = x;
    }
    join[z][z] = z;
    return heyting_from_lattice(std::move(labels), std::move(meet), std::move(join), z, a.top);
}

bool algebras_isomorphic(const GodelAlgebra& a, const GodelAlgebra& b) {
    if (a.size() != b.size()) return false;
    return canonical_form(hu_dual(a)) == canonical_form(hu_dual(b));
}

Poset order_poset(const GodelAlgebra& a) {
    std::vector<std::pair<int, int>> rel;
    for (int x = 0; x < a.size(); ++x)
        for (int y = 0; y < a.size(); ++y)
            if (x != y && a.leq(x, y)) rel.emplace_back(x, y);
    return make_poset(a.labels, rel);
}

}  // namespace godel
