#include "godel/translate.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "godel/error.hpp"

namespace godel {

namespace {

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int x, int y) { parent[find(x)] = find(y); }
};

}  // namespace

SimRelation sim_classes(const DualStructure& x) {
    UnionFind uf(x.size());
    for (const auto& tab : x.partial)
        for (int p = 0; p < x.size(); ++p)
            if (tab[p] >= 0) uf.unite(p, tab[p]);
    SimRelation sim;
    sim.class_of.assign(x.size(), -1);
    for (int p = 0; p < x.size(); ++p) {
        int root = uf.find(p);
        if (sim.class_of[root] < 0) {
            sim.class_of[root] = sim.num_classes();
            sim.members.push_back({});
        }
        sim.class_of[p] = sim.class_of[root];
        sim.members[sim.class_of[p]].push_back(p);
    }
    return sim;
}

LayerOrder cover_classes(const DualStructure& x, const SimRelation& sim) {
    if (static_cast<int>(sim.class_of.size()) != x.size())
        throw_input("cover_classes: partition does not match the structure");
    const int k = sim.num_classes();
    std::vector<std::pair<int, int>> covers;
    for (int p = 0; p < x.size(); ++p) {
        int a = sim.class_of[p], b = sim.class_of[x.endo[p]];
        if (a != b) covers.emplace_back(a, b);
    }
    std::sort(covers.begin(), covers.end());
    covers.erase(std::unique(covers.begin(), covers.end()), covers.end());

    LayerOrder lo;
    lo.cover_pairs = covers;
    lo.leq.assign(k, std::vector<char>(k, 0));
    for (int c = 0; c < k; ++c) lo.leq[c][c] = 1;
    for (auto [a, b] : covers) lo.leq[a][b] = 1;
    for (int m = 0; m < k; ++m)
        for (int i = 0; i < k; ++i)
            if (lo.leq[i][m])
                for (int j = 0; j < k; ++j)
                    if (lo.leq[m][j]) lo.leq[i][j] = 1;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j && lo.leq[i][j] && lo.leq[j][i])
                throw_structural("cover_classes: induced class order is not antisymmetric");
    // the covers must be exactly the covering relation of the closure
    for (auto [a, b] : covers)
        for (int c = 0; c < k; ++c)
            if (c != a && c != b && lo.leq[a][c] && lo.leq[c][b])
                throw_structural("cover_classes: a cover pair is implied by transitivity");
    return lo;
}

QuotientForest F_sigma_quotient(const DualStructure& x) {
    QuotientForest q;
    q.sim = sim_classes(x);
    Poset p = quotient(
        make_poset(x.labels, {}),  // element carrier only; order comes from the rule
        q.sim.class_of, [&](int a, int b) { return q.sim.class_of[x.endo[a]] == q.sim.class_of[b]; });
    if (!is_forest(p)) throw_structural("quotient of the structure is not a forest");
    if (x.sigma.n >= 2 && depth(p) > x.sigma.n - 2)
        throw_structural("quotient forest has depth above n-2");
    q.forest = as_forest(p);
    return q;
}

Forest F_sigma(const DualStructure& x) { return F_sigma_quotient(x).forest; }

std::vector<int> F_sigma_morphism(const StructureMorphism& eta, const QuotientForest& qsrc,
                                  const QuotientForest& qtgt) {
    std::vector<int> out(qsrc.sim.num_classes(), -1);
    for (std::size_t p = 0; p < eta.map.size(); ++p) {
        int c = qsrc.sim.class_of[p];
        int img = qtgt.sim.class_of[eta.map[p]];
        if (out[c] >= 0 && out[c] != img)
            throw_structural("F_sigma_morphism: structure map does not respect the classes");
        out[c] = img;
    }
    return out;
}

PairStructure G_sigma_pairs(const Forest& y, const SigmaSignature& sigma) {
    const int n = sigma.n;
    if (depth(y.poset) > n - 2)
        throw_variety("forest has depth " + std::to_string(depth(y.poset)) +
                      ", above the bound n-2 = " + std::to_string(n - 2));
    PairStructure ps;
    ps.structure.sigma = sigma;

    // enumerate the points (node, U)
    for (int node = 0; node < y.size(); ++node) {
        const int upsz = static_cast<int>(up_set(y.poset, node).size());
        const int middle = upsz - 1;  // |U| = |up(y)| + 1, bounds included
        std::vector<int> pick(middle);
        std::function<void(int, int)> choose = [&](int from, int k) {
            if (k == middle) {
                std::vector<int> u{0};
                u.insert(u.end(), pick.begin(), pick.end());
                u.push_back(n - 1);
                ps.node_of.push_back(node);
                ps.u_of.push_back(u);
                return;
            }
            for (int c = from; c <= n - 2; ++c) {
                pick[k] = c;
                choose(c + 1, k + 1);
            }
        };
        choose(1, 0);
    }
    const int m = static_cast<int>(ps.node_of.size());

    std::map<std::pair<int, std::vector<int>>, int> index;
    for (int i = 0; i < m; ++i) index[{ps.node_of[i], ps.u_of[i]}] = i;
    auto label_of = [&](int i) {
        std::string s = y.poset.labels[ps.node_of[i]] + ":";
        bool any = false;
        for (int v : ps.u_of[i])
            if (v != 0 && v != n - 1) {
                s += std::to_string(v);
                any = true;
            }
        return any ? s : s + "∅";
    };
    ps.structure.labels.resize(m);
    for (int i = 0; i < m; ++i) ps.structure.labels[i] = label_of(i);

    auto map_u = [&](const PartialOp& op, const std::vector<int>& u) {
        std::vector<int> v;
        v.reserve(u.size());
        for (int w : u) v.push_back(op(w));
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };

    for (int i = 1; i <= sigma.partial_count(); ++i) {
        PartialOp op = sigma.partial(i);
        const bool is_f = sigma.use_f[i - 1];
        std::vector<int> table(m, -1);
        for (int p = 0; p < m; ++p) {
            const auto& u = ps.u_of[p];
            const int barred = is_f ? i + 1 : i;  // value whose presence blocks the move
            if (std::find(u.begin(), u.end(), barred) != u.end()) continue;
            auto it = index.find({ps.node_of[p], map_u(op, u)});
            if (it == index.end()) throw_internal("G_sigma: partial image is not a point");
            table[p] = it->second;
        }
        ps.structure.partial.push_back(std::move(table));
    }

    ps.structure.endo.resize(m);
    if (!sigma.has_endo()) {
        for (int p = 0; p < m; ++p) ps.structure.endo[p] = p;
    } else {
        PartialOp h = sigma.endo();
        for (int p = 0; p < m; ++p) {
            const auto& u = ps.u_of[p];
            bool climbs = std::find(u.begin(), u.end(), n - 2) != u.end();
            int node = ps.node_of[p];
            if (climbs) {
                node = y.parent[node];  // n-2 in U forces a non-maximal node
                if (node < 0) throw_internal("G_sigma: climb requested at a root");
            }
            auto it = index.find({node, map_u(h, u)});
            if (it == index.end()) throw_internal("G_sigma: endo image is not a point");
            ps.structure.endo[p] = it->second;
        }
    }
    return ps;
}

DualStructure G_sigma(const Forest& y, const SigmaSignature& sigma) {
    return G_sigma_pairs(y, sigma).structure;
}

bool roundtrip_check(const AlgebraPtr& a, const SigmaSignature& sigma) {
    DualSpace d = dual_space(a, sigma);
    Forest esakia = hu_dual(*a);
    if (!iso_check(F_sigma(d.structure), esakia)) return false;
    DualStructure rebuilt = G_sigma(esakia, sigma);
    return structures_isomorphic(rebuilt, d.structure);
}

}  // namespace godel
