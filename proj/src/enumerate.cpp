#include "godel/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "godel/error.hpp"

namespace godel {

namespace {

// Trees as canonical shape strings; a forest is a sorted multiset of trees.
// Trees with k nodes and depth <= d: a root over a forest with k-1 nodes
// and depth <= d-1.
struct ShapeGen {
    int max_nodes, max_depth;
    std::map<std::pair<int, int>, std::vector<std::string>> tree_memo;

    // trees with exactly k nodes, depth <= d
    const std::vector<std::string>& trees(int k, int d) {
        auto key = std::make_pair(k, d);
        auto it = tree_memo.find(key);
        if (it != tree_memo.end()) return it->second;
        std::vector<std::string> out;
        if (k >= 1 && d >= 0) {
            if (k == 1) {
                out.push_back("()");
            } else if (d >= 1) {
                for (auto& f : forests(k - 1, d - 1)) {
                    std::string s = "(";
                    for (auto& t : f) s += t;
                    out.push_back(s + ")");
                }
            }
        }
        return tree_memo[key] = out;
    }

    // forests with exactly k nodes, depth <= d, as sorted tree lists
    std::vector<std::vector<std::string>> forests(int k, int d) {
        std::vector<std::vector<std::string>> out;
        std::vector<std::string> cur;
        // choose trees in non-decreasing canonical order to avoid duplicates
        std::function<void(int, const std::string&)> rec = [&](int left, const std::string& minstr) {
            if (left == 0) {
                out.push_back(cur);
                return;
            }
            for (int sz = 1; sz <= left; ++sz)
                for (auto& t : trees(sz, d)) {
                    if (t < minstr) continue;
                    cur.push_back(t);
                    rec(left - sz, t);
                    cur.pop_back();
                }
        };
        rec(k, "");
        return out;
    }
};

// parse a canonical "(..)" shape back into parent pointers
Forest forest_from_shape(const std::string& shape) {
    std::vector<std::string> labels;
    std::vector<int> parent;
    std::vector<int> stack;  // indices of open nodes
    for (char c : shape) {
        if (c == '(') {
            int id = static_cast<int>(labels.size());
            labels.push_back("n" + std::to_string(id));
            parent.push_back(stack.empty() ? -1 : stack.back());
            stack.push_back(id);
        } else {
            stack.pop_back();
        }
    }
    return make_forest(std::move(labels), parent);
}

}  // namespace

std::vector<Forest> enumerate_forests(int max_nodes, int max_depth) {
    ShapeGen gen{max_nodes, max_depth, {}};
    std::vector<Forest> out;
    for (int k = 0; k <= max_nodes; ++k) {
        std::set<std::string> shapes;
        for (auto& f : gen.forests(k, max_depth)) {
            std::string s;
            for (auto& t : f) s += t;
            shapes.insert(s);
        }
        for (auto& s : shapes) out.push_back(forest_from_shape(s));
    }
    return out;
}

std::vector<std::vector<int>> esakia_morphisms(const Forest& from, const Forest& to) {
    // parent-first processing order
    std::vector<int> order;
    {
        std::vector<char> seen(from.size(), 0);
        std::function<void(int)> visit = [&](int v) {
            if (seen[v]) return;
            if (from.parent[v] >= 0) visit(from.parent[v]);
            seen[v] = 1;
            order.push_back(v);
        };
        for (int v = 0; v < from.size(); ++v) visit(v);
    }
    std::vector<int> maximal;
    for (int v = 0; v < to.size(); ++v)
        if (to.parent[v] < 0) maximal.push_back(v);

    std::vector<std::vector<int>> out;
    std::vector<int> map(from.size(), -1);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == order.size()) {
            out.push_back(map);
            return;
        }
        int v = order[i];
        if (from.parent[v] < 0) {
            // roots land on maximal points
            for (int t : maximal) {
                map[v] = t;
                rec(i + 1);
            }
        } else {
            // a child lands on its parent's image or one of its lower covers
            int pi = map[from.parent[v]];
            map[v] = pi;
            rec(i + 1);
            for (int t : lower_covers(to.poset, pi)) {
                map[v] = t;
                rec(i + 1);
            }
        }
        map[v] = -1;
    };
    if (from.size() == 0)
        out.push_back({});
    else
        rec(0);
    return out;
}

std::vector<Homomorphism> all_homs(const AlgebraPtr& a, const AlgebraPtr& b) {
    Forest fa = hu_dual(*a), fb = hu_dual(*b);
    auto hu_a = hu_points(*a);
    auto hu_b = hu_points(*b);

    // element of b <-> bitmask over HU(B)
    std::map<std::vector<char>, int> b_of_mask;
    for (int e = 0; e < b->size(); ++e) {
        std::vector<char> mask(hu_b.size());
        for (std::size_t i = 0; i < hu_b.size(); ++i) mask[i] = hu_b[i].bits[e];
        b_of_mask[mask] = e;
    }

    std::vector<Homomorphism> out;
    for (auto& phi : esakia_morphisms(fb, fa)) {
        Homomorphism h;
        h.source = a;
        h.target = b;
        h.map.resize(a->size());
        bool ok = true;
        for (int e = 0; e < a->size() && ok; ++e) {
            std::vector<char> mask(hu_b.size());
            for (std::size_t i = 0; i < hu_b.size(); ++i) mask[i] = hu_a[phi[i]].bits[e];
            auto it = b_of_mask.find(mask);
            if (it == b_of_mask.end()) ok = false;
            else h.map[e] = it->second;
        }
        if (!ok || !is_homomorphism(*a, *b, h.map))
            throw_internal("all_homs: dual morphism did not transport to a homomorphism");
        out.push_back(std::move(h));
    }
    std::sort(out.begin(), out.end(),
              [](const Homomorphism& x, const Homomorphism& y) { return x.map < y.map; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Homomorphism& x, const Homomorphism& y) {
                              return x.map == y.map;
                          }),
              out.end());
    return out;
}

std::vector<Homomorphism> all_embeddings(const AlgebraPtr& a, const AlgebraPtr& b) {
    auto homs = all_homs(a, b);
    std::vector<Homomorphism> out;
    for (auto& h : homs)
        if (h.injective()) out.push_back(std::move(h));
    return out;
}

}  // namespace godel
