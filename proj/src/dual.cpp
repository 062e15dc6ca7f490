#include "godel/dual.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "godel/error.hpp"

namespace godel {

int DualStructure::index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (labels[i] == label) return i;
    return -1;
}

DualStructure alter_ego(const SigmaSignature& sigma) {
    DualStructure x;
    x.sigma = sigma;
    const int n = sigma.n;
    x.labels.resize(n);
    for (int i = 0; i < n; ++i) x.labels[i] = std::to_string(i);
    for (int i = 1; i <= sigma.partial_count(); ++i) x.partial.push_back(sigma.partial(i).table);
    x.endo = sigma.endo().table;
    return x;
}

int DualSpace::point_index(const std::vector<int>& hom_map) const {
    for (int i = 0; i < static_cast<int>(points.size()); ++i)
        if (points[i].map == hom_map) return i;
    return -1;
}

namespace {

std::vector<int> hom_range(const Homomorphism& h) {
    std::vector<int> r(h.map.begin(), h.map.end());
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

// Fig.-style point labels: the range with the bounds stripped, written as
// digits; ambiguous points get the dual-forest node label as a prefix.
std::vector<std::string> point_labels(const std::vector<Homomorphism>& points,
                                      const GodelAlgebra& a, int n) {
    auto forest = hu_dual(a);
    auto hu = hu_points(a);
    std::vector<std::string> base(points.size());
    std::map<std::string, int> count;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::string s;
        for (int v : hom_range(points[i])) {
            if (v == 0 || v == n - 1) continue;
            if (!s.empty() && n > 11) s += ",";
            s += std::to_string(v);
        }
        if (s.empty()) s = "∅";
        base[i] = s;
        ++count[s];
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (count[base[i]] == 1) continue;
        TwoHom u = omega_compose(points[i]);
        auto it = std::find(hu.begin(), hu.end(), u);
        if (it == hu.end()) throw_internal("point label: omega composite missing from the dual");
        base[i] = forest.poset.labels[it - hu.begin()] + ":" + base[i];
    }
    return base;
}

}  // namespace

DualSpace dual_space(const AlgebraPtr& a, const SigmaSignature& sigma) {
    const int n = sigma.n;
    int k = variety_index(*a);
    if (k > n)
        throw_variety("algebra lies in G_" + std::to_string(k) + " but not in G_" +
                          std::to_string(n),
                      "{\"variety_index\":" + std::to_string(k) + "}");
    DualSpace ds;
    ds.algebra = a;
    ds.chain = share(make_chain(n));
    ds.points = hom_set(a, ds.chain);
    const int m = static_cast<int>(ds.points.size());

    std::map<std::vector<int>, int> index;
    for (int i = 0; i < m; ++i) index[ds.points[i].map] = i;
    auto lift = [&](const PartialOp& op) {
        std::vector<int> table(m, -1);
        for (int i = 0; i < m; ++i) {
            bool in_dom = true;
            for (int v : hom_range(ds.points[i]))
                if (!op.defined(v)) in_dom = false;
            if (!in_dom) continue;
            std::vector<int> composed(ds.points[i].map.size());
            for (std::size_t e = 0; e < composed.size(); ++e)
                composed[e] = op(ds.points[i].map[e]);
            auto it = index.find(composed);
            if (it == index.end()) throw_internal("dual_space: lifted image not a point");
            table[i] = it->second;
        }
        return table;
    };

    DualStructure& x = ds.structure;
    x.sigma = sigma;
    x.labels = point_labels(ds.points, *a, n);
    for (int i = 1; i <= sigma.partial_count(); ++i) x.partial.push_back(lift(sigma.partial(i)));
    x.endo = lift(sigma.endo());
    return ds;
}

bool is_structure_morphism(const DualStructure& src, const DualStructure& tgt,
                           const std::vector<int>& map) {
    if (!(src.sigma == tgt.sigma)) return false;
    if (static_cast<int>(map.size()) != src.size()) return false;
    for (int v : map)
        if (v < 0 || v >= tgt.size()) return false;
    for (int x = 0; x < src.size(); ++x) {
        if (map[src.endo[x]] != tgt.endo[map[x]]) return false;
        for (std::size_t i = 0; i < src.partial.size(); ++i) {
            if (src.partial[i][x] < 0) continue;
            if (tgt.partial[i][map[x]] < 0) return false;
            if (map[src.partial[i][x]] != tgt.partial[i][map[x]]) return false;
        }
    }
    return true;
}

StructureMorphism dual_map(const Homomorphism& f, const DualSpace& dual_of_target,
                           const DualSpace& dual_of_source) {
    StructureMorphism eta;
    eta.source = std::make_shared<const DualStructure>(dual_of_target.structure);
    eta.target = std::make_shared<const DualStructure>(dual_of_source.structure);
    eta.map.resize(dual_of_target.points.size());
    for (std::size_t i = 0; i < eta.map.size(); ++i) {
        Homomorphism composed = compose(dual_of_target.points[i], f);
        int idx = dual_of_source.point_index(composed.map);
        if (idx < 0) throw_internal("dual_map: composite is not a point of D(A)");
        eta.map[i] = idx;
    }
    if (!is_structure_morphism(*eta.source, *eta.target, eta.map))
        throw_internal("dual_map: result is not structure-preserving");
    return eta;
}

StructureMorphism dual_map(const Homomorphism& f, const SigmaSignature& sigma) {
    DualSpace db = dual_space(f.target, sigma);
    DualSpace da = dual_space(f.source, sigma);
    return dual_map(f, db, da);
}

DualStructure product_structure(const DualStructure& x, const DualStructure& y) {
    if (!(x.sigma == y.sigma)) throw_input("product_structure: signature mismatch");
    DualStructure p;
    p.sigma = x.sigma;
    const int mx = x.size(), my = y.size();
    if (static_cast<std::size_t>(mx) * my > enumeration_cap())
        throw_resource("product_structure: point cap exceeded");
    auto id = [my](int a, int b) { return a * my + b; };
    p.labels.resize(static_cast<std::size_t>(mx) * my);
    for (int a = 0; a < mx; ++a)
        for (int b = 0; b < my; ++b) p.labels[id(a, b)] = "(" + x.labels[a] + "," + y.labels[b] + ")";
    for (std::size_t i = 0; i < x.partial.size(); ++i) {
        std::vector<int> t(static_cast<std::size_t>(mx) * my, -1);
        for (int a = 0; a < mx; ++a)
            for (int b = 0; b < my; ++b)
                if (x.partial[i][a] >= 0 && y.partial[i][b] >= 0)
                    t[id(a, b)] = id(x.partial[i][a], y.partial[i][b]);
        p.partial.push_back(std::move(t));
    }
    p.endo.resize(static_cast<std::size_t>(mx) * my);
    for (int a = 0; a < mx; ++a)
        for (int b = 0; b < my; ++b) p.endo[id(a, b)] = id(x.endo[a], y.endo[b]);
    return p;
}

DualStructure power_structure(const SigmaSignature& sigma, int exponent) {
    if (exponent < 0) throw_input("power_structure: negative exponent");
    if (exponent == 0) {
        // one empty tuple; every operation is defined and fixes it
        DualStructure p;
        p.sigma = sigma;
        p.labels = {"()"};
        p.partial.assign(sigma.partial_count(), std::vector<int>{0});
        p.endo = {0};
        return p;
    }
    DualStructure p = alter_ego(sigma);
    for (int i = 1; i < exponent; ++i) p = product_structure(p, alter_ego(sigma));
    return p;
}

DualStructure substructure(const DualStructure& x, const std::vector<int>& points) {
    std::vector<int> sorted = points;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> pos(x.size(), -1);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < 0 || sorted[i] >= x.size()) throw_input("substructure: point out of range");
        pos[sorted[i]] = static_cast<int>(i);
    }
    DualStructure s;
    s.sigma = x.sigma;
    for (int p : sorted) s.labels.push_back(x.labels[p]);
    for (const auto& tab : x.partial) {
        std::vector<int> t(sorted.size(), -1);
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            int img = tab[sorted[i]];
            if (img < 0) continue;  // outside the lifted domain
            if (pos[img] < 0)
                throw_input("substructure: set not closed under a partial operation");
            t[i] = pos[img];
        }
        s.partial.push_back(std::move(t));
    }
    s.endo.resize(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        int img = x.endo[sorted[i]];
        if (pos[img] < 0) throw_input("substructure: set not closed under the endomorphism");
        s.endo[i] = pos[img];
    }
    return s;
}

std::vector<int> substructure_closure(const DualStructure& x, std::vector<int> seed) {
    std::vector<char> in(x.size(), 0);
    for (int p : seed) {
        if (p < 0 || p >= x.size()) throw_input("closure: point out of range");
        in[p] = 1;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (int p = 0; p < x.size(); ++p) {
            if (!in[p]) continue;
            auto add = [&](int q) {
                if (q >= 0 && !in[q]) {
                    in[q] = 1;
                    changed = true;
                }
            };
            add(x.endo[p]);
            for (const auto& tab : x.partial) add(tab[p]);
        }
    }
    std::vector<int> out;
    for (int p = 0; p < x.size(); ++p)
        if (in[p]) out.push_back(p);
    return out;
}

std::vector<std::vector<int>> closed_substructures(const DualStructure& x, bool include_empty) {
    const int m = x.size();
    if (m > 24 || (std::size_t(1) << m) > enumeration_cap())
        throw_resource("closed_substructures: too many subsets to enumerate");
    std::vector<std::vector<int>> out;
    for (std::uint64_t mask = include_empty ? 0 : 1; mask < (std::uint64_t(1) << m); ++mask) {
        bool closed = true;
        for (int p = 0; p < m && closed; ++p) {
            if (!(mask >> p & 1)) continue;
            if (!(mask >> x.endo[p] & 1)) closed = false;
            for (const auto& tab : x.partial) {
                int q = tab[p];
                if (q >= 0 && !(mask >> q & 1)) closed = false;
            }
        }
        if (!closed) continue;
        std::vector<int> pts;
        for (int p = 0; p < m; ++p)
            if (mask >> p & 1) pts.push_back(p);
        out.push_back(std::move(pts));
    }
    return out;
}

namespace {

struct StructIso {
    const DualStructure& x;
    const DualStructure& y;
    std::vector<int> map, used;

    // invariant per point: domain membership, fixed-point flags, in-degrees
    static std::vector<std::vector<int>> signatures(const DualStructure& s) {
        std::vector<std::vector<int>> sig(s.size());
        for (int p = 0; p < s.size(); ++p) {
            std::vector<int>& v = sig[p];
            v.push_back(s.endo[p] == p);
            for (const auto& tab : s.partial) {
                v.push_back(tab[p] >= 0);
                v.push_back(tab[p] == p);
            }
            int indeg = 0;
            for (int q = 0; q < s.size(); ++q)
                if (s.endo[q] == p) ++indeg;
            v.push_back(indeg);
            for (const auto& tab : s.partial) {
                indeg = 0;
                for (int q = 0; q < s.size(); ++q)
                    if (tab[q] == p) ++indeg;
                v.push_back(indeg);
            }
        }
        return sig;
    }

    bool consistent(int p, int q) const {
        // forward edges among assigned points
        auto check = [&](const std::vector<int>& tx, const std::vector<int>& ty) {
            if ((tx[p] >= 0) != (ty[q] >= 0)) return false;
            if (tx[p] >= 0 && map[tx[p]] >= 0 && map[tx[p]] != ty[q]) return false;
            for (int r = 0; r < x.size(); ++r)
                if (map[r] >= 0 && tx[r] == p && ty[map[r]] != q) return false;
            return true;
        };
        if (!check(x.endo, y.endo)) return false;
        for (std::size_t i = 0; i < x.partial.size(); ++i)
            if (!check(x.partial[i], y.partial[i])) return false;
        return true;
    }

    bool place(int p, const std::vector<std::vector<int>>& sx,
               const std::vector<std::vector<int>>& sy) {
        if (p == x.size()) return true;
        for (int q = 0; q < y.size(); ++q) {
            if (used[q] || sx[p] != sy[q]) continue;
            map[p] = q;
            used[q] = 1;
            if (consistent(p, q) && place(p + 1, sx, sy)) return true;
            used[q] = 0;
            map[p] = -1;
        }
        return false;
    }

    bool run() {
        if (!(x.sigma == y.sigma) || x.size() != y.size()) return false;
        auto sx = signatures(x), sy = signatures(y);
        {
            auto a = sx, b = sy;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a != b) return false;
        }
        map.assign(x.size(), -1);
        used.assign(y.size(), 0);
        return place(0, sx, sy);
    }
};

// final full verification of a candidate isomorphism
bool verify_iso(const DualStructure& x, const DualStructure& y, const std::vector<int>& map) {
    if (!is_structure_morphism(x, y, map)) return false;
    std::vector<int> inv(y.size(), -1);
    for (int p = 0; p < x.size(); ++p) {
        if (inv[map[p]] >= 0) return false;
        inv[map[p]] = p;
    }
    return is_structure_morphism(y, x, inv);
}

}  // namespace

bool structures_isomorphic(const DualStructure& x, const DualStructure& y) {
    StructIso iso{x, y, {}, {}};
    if (!iso.run()) return false;
    if (!verify_iso(x, y, iso.map)) throw_internal("structures_isomorphic: bad witness");
    return true;
}

namespace {

// Backtracking enumeration of all structure-preserving maps X -> alter ego,
// with arc-consistency propagation over candidate masks.
struct ESearch {
    const DualStructure& x;
    int n;
    std::vector<PartialOp> pops;
    PartialOp h;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<std::vector<int>> solutions;

    explicit ESearch(const DualStructure& s) : x(s), n(s.sigma.n), h(s.sigma.endo()) {
        if (n > 30) throw_resource("evaluate_E: chains above 30 elements are not supported");
        for (int i = 1; i <= s.sigma.partial_count(); ++i) pops.push_back(s.sigma.partial(i));
        budget = static_cast<std::uint64_t>(enumeration_cap()) * 100;
    }

    using Mask = std::uint32_t;

    bool propagate(std::vector<Mask>& cand) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int p = 0; p < x.size(); ++p) {
                auto restrict_edge = [&](int q, const PartialOp& op, bool partial_dom) {
                    // alpha(p) must be a domain value whose image is allowed at q,
                    // and alpha(q) must be reachable from some allowed value of p
                    Mask np = 0, nq = 0;
                    for (int v = 0; v < n; ++v) {
                        if (!(cand[p] >> v & 1)) continue;
                        if (!op.defined(v)) continue;
                        if (cand[q] >> op(v) & 1) {
                            np |= Mask(1) << v;
                            nq |= Mask(1) << op(v);
                        }
                    }
                    if (partial_dom) {
                        // values of p outside dom(op) are illegal here
                        if (np != cand[p]) {
                            cand[p] = np;
                            changed = true;
                        }
                    } else if ((cand[p] & np) != cand[p]) {
                        cand[p] &= np;
                        changed = true;
                    }
                    if ((cand[q] & nq) != cand[q]) {
                        cand[q] &= nq;
                        changed = true;
                    }
                };
                for (std::size_t i = 0; i < pops.size(); ++i)
                    if (x.partial[i][p] >= 0) restrict_edge(x.partial[i][p], pops[i], true);
                restrict_edge(x.endo[p], h, false);
                if (cand[p] == 0) return false;
            }
        }
        return true;
    }

    void search(std::vector<Mask>& cand) {
        if (++nodes > budget)
            throw_resource(
                "evaluate_E: search cap exceeded; compute through the forest translation "
                "instead");
        int pick = -1, best = n + 1;
        for (int p = 0; p < x.size(); ++p) {
            int c = __builtin_popcount(cand[p]);
            if (c > 1 && c < best) {
                best = c;
                pick = p;
            }
        }
        if (pick < 0) {
            std::vector<int> sol(x.size());
            for (int p = 0; p < x.size(); ++p) sol[p] = __builtin_ctz(cand[p]);
            solutions.push_back(std::move(sol));
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (!(cand[pick] >> v & 1)) continue;
            auto next = cand;
            next[pick] = Mask(1) << v;
            if (propagate(next)) search(next);
        }
    }

    void run() {
        std::vector<Mask> cand(x.size(), (Mask(1) << n) - 1);
        if (x.size() == 0) {
            solutions.push_back({});
            return;
        }
        if (propagate(cand)) search(cand);
        std::sort(solutions.begin(), solutions.end());
    }
};

}  // namespace

Evaluation evaluate_E(const DualStructure& x) {
    ESearch s(x);
    s.run();
    Evaluation ev;
    ev.maps = std::move(s.solutions);
    const int m = static_cast<int>(ev.maps.size());
    if (m == 0) throw_internal("evaluate_E: no structure-preserving maps (bounds missing)");
    const int n = x.sigma.n;
    auto chain = make_chain(std::max(2, n));

    std::map<std::vector<int>, int> index;
    for (int i = 0; i < m; ++i) index[ev.maps[i]] = i;
    GodelAlgebra& a = ev.algebra;
    a.labels.resize(m);
    for (int i = 0; i < m; ++i) a.labels[i] = "e" + std::to_string(i);
    if (x.size() == 0) {
        a = make_trivial();
        return ev;
    }
    auto pointwise = [&](const std::vector<int>& u, const std::vector<int>& v, auto&& op) {
        std::vector<int> w(u.size());
        for (std::size_t p = 0; p < u.size(); ++p) w[p] = op(u[p], v[p]);
        auto it = index.find(w);
        if (it == index.end()) throw_internal("evaluate_E: pointwise operation left the set");
        return it->second;
    };
    a.meet.assign(m, std::vector<int>(m));
    a.join.assign(m, std::vector<int>(m));
    a.impl.assign(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            a.meet[i][j] = pointwise(ev.maps[i], ev.maps[j],
                                     [&](int u, int v) { return chain.meet[u][v]; });
            a.join[i][j] = pointwise(ev.maps[i], ev.maps[j],
                                     [&](int u, int v) { return chain.join[u][v]; });
            a.impl[i][j] = pointwise(ev.maps[i], ev.maps[j],
                                     [&](int u, int v) { return chain.impl[u][v]; });
        }
    a.bot = index.at(std::vector<int>(x.size(), 0));
    a.top = index.at(std::vector<int>(x.size(), n - 1));
    return ev;
}

DualityCertificate check_duality(const AlgebraPtr& a, const SigmaSignature& sigma) {
    DualSpace d = dual_space(a, sigma);
    Evaluation ev = evaluate_E(d.structure);
    DualityCertificate cert;
    cert.iso.assign(a->size(), -1);
    if (a->trivial()) {
        // D(A) is empty and E(empty) is the one-element algebra
        cert.ok = ev.algebra.size() == 1;
        cert.iso = {0};
        if (!cert.ok) throw_internal("check_duality: E(empty) is not trivial");
        return cert;
    }
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < ev.algebra.size(); ++i) index[ev.maps[i]] = i;
    for (int e = 0; e < a->size(); ++e) {
        std::vector<int> eval(d.points.size());
        for (std::size_t p = 0; p < d.points.size(); ++p) eval[p] = d.points[p].map[e];
        auto it = index.find(eval);
        if (it == index.end())
            throw_internal("check_duality: evaluation of '" + a->labels[e] +
                           "' is not structure-preserving");
        cert.iso[e] = it->second;
    }
    std::set<int> image(cert.iso.begin(), cert.iso.end());
    if (static_cast<int>(image.size()) != a->size())
        throw_internal("check_duality: evaluation map is not injective");
    if (ev.algebra.size() != a->size())
        throw_internal("check_duality: evaluation map is not surjective (|E(D(A))| = " +
                       std::to_string(ev.algebra.size()) + ", |A| = " +
                       std::to_string(a->size()) + ")");
    if (!is_homomorphism(*a, ev.algebra, cert.iso))
        throw_internal("check_duality: evaluation map is not a homomorphism");
    cert.ok = true;
    return cert;
}

}  // namespace godel
