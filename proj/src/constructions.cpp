#include "godel/constructions.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <unordered_map>

#include "godel/enumerate.hpp"
#include "godel/error.hpp"

namespace godel {

VFormation make_vformation(AlgebraPtr a, AlgebraPtr b, AlgebraPtr c, Homomorphism fb,
                           Homomorphism fc) {
    if (!is_homomorphism(*a, *b, fb.map) || !is_homomorphism(*a, *c, fc.map))
        throw_input("V-formation: the two maps must be homomorphisms out of A");
    if (!fb.injective() || !fc.injective())
        throw_input("V-formation: the two homomorphisms must be injective");
    VFormation v;
    v.a = std::move(a);
    v.b = std::move(b);
    v.c = std::move(c);
    v.fb = std::move(fb);
    v.fb.source = v.a;
    v.fb.target = v.b;
    v.fc = std::move(fc);
    v.fc.source = v.a;
    v.fc.target = v.c;
    return v;
}

bool is_embedding_dual(const Homomorphism& f, const SigmaSignature& sigma) {
    DualSpace da = dual_space(f.source, sigma);
    DualSpace db = dual_space(f.target, sigma);
    StructureMorphism df = dual_map(f, db, da);
    SimRelation sim = sim_classes(da.structure);
    std::vector<char> hit(sim.num_classes(), 0);
    for (int y = 0; y < db.structure.size(); ++y) hit[sim.class_of[df.map[y]]] = 1;
    bool dual_answer =
        std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
    if (dual_answer != f.injective())
        throw_internal("is_embedding_dual: dual criterion disagrees with injectivity");
    return dual_answer;
}

namespace {

struct FibredProduct {
    DualSpace db, dc;
    DualStructure x;               // the fibred product structure
    std::vector<std::pair<int, int>> pairs;  // point -> (point of D(B), point of D(C))
};

FibredProduct fibred_product(const VFormation& v, const SigmaSignature& sigma) {
    FibredProduct fp;
    fp.db = dual_space(v.b, sigma);
    fp.dc = dual_space(v.c, sigma);
    DualSpace da = dual_space(v.a, sigma);
    StructureMorphism dfb = dual_map(v.fb, fp.db, da);
    StructureMorphism dfc = dual_map(v.fc, fp.dc, da);

    DualStructure prod = product_structure(fp.db.structure, fp.dc.structure);
    const int mc = fp.dc.structure.size();
    std::vector<int> keep;
    for (int xb = 0; xb < fp.db.structure.size(); ++xb)
        for (int yc = 0; yc < mc; ++yc)
            if (dfb.map[xb] == dfc.map[yc]) {
                keep.push_back(xb * mc + yc);
                fp.pairs.emplace_back(xb, yc);
            }
    fp.x = substructure(prod, keep);
    return fp;
}

// element of a vk algebra from an up-set mask
int vk_index(const std::vector<std::uint64_t>& sets, std::uint64_t mask) {
    auto it = std::lower_bound(sets.begin(), sets.end(), mask,
                               [](std::uint64_t a, std::uint64_t b) {
                                   int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
                                   return pa != pb ? pa < pb : a < b;
                               });
    if (it == sets.end() || *it != mask) throw_internal("up-set mask is not an element");
    return static_cast<int>(it - sets.begin());
}

// Quotient-forest node labels aggregate whole classes of point labels;
// constructions that feed them into further algebra keep them short.
Forest relabel_compact(const Forest& f) {
    std::vector<std::string> labels(f.size());
    for (int i = 0; i < f.size(); ++i) labels[i] = "q" + std::to_string(i);
    return make_forest(std::move(labels), f.parent);
}

// The pushout without its tables: the quotient forest plus the pushout
// maps as up-set masks over the quotient classes (multi-word, since the
// pushout algebra itself may be far too large to materialize).
struct PushoutMasks {
    FibredProduct fp;
    QuotientForest q;
    std::vector<std::vector<std::uint64_t>> pb, pc;
    bool pb_injective = false, pc_injective = false;
    unsigned long long size = 0;
};

PushoutMasks pushout_masks(const VFormation& v, int n) {
    PushoutMasks pm;
    pm.fp = fibred_product(v, full_sigma(n));
    pm.q = F_sigma_quotient(pm.fp.x);
    pm.size = count_upsets(pm.q.forest);
    const int words = (pm.q.sim.num_classes() + 63) / 64;
    const int chain_top = n - 1;
    auto masks_for = [&](const AlgebraPtr& src, bool left) {
        std::vector<std::vector<std::uint64_t>> masks(
            src->size(), std::vector<std::uint64_t>(std::max(words, 1), 0));
        for (int e = 0; e < src->size(); ++e)
            for (std::size_t p = 0; p < pm.fp.pairs.size(); ++p) {
                const Homomorphism& hom = left ? pm.fp.db.points[pm.fp.pairs[p].first]
                                               : pm.fp.dc.points[pm.fp.pairs[p].second];
                if (hom.map[e] == chain_top) {
                    int cls = pm.q.sim.class_of[static_cast<int>(p)];
                    masks[e][cls / 64] |= std::uint64_t(1) << (cls % 64);
                }
            }
        return masks;
    };
    auto injective = [](const std::vector<std::vector<std::uint64_t>>& masks) {
        std::set<std::vector<std::uint64_t>> seen(masks.begin(), masks.end());
        return seen.size() == masks.size();
    };
    pm.pb = masks_for(v.b, true);
    pm.pc = masks_for(v.c, false);
    pm.pb_injective = injective(pm.pb);
    pm.pc_injective = injective(pm.pc);
    return pm;
}

PushoutResult materialize_pushout(const VFormation& v, const PushoutMasks& pm) {
    PushoutResult res;
    Forest compact = relabel_compact(pm.q.forest);
    res.algebra = vk_algebra(compact);
    auto sets = vk_upsets(compact);
    AlgebraPtr pushout_ptr = share(res.algebra);
    auto to_hom = [&](const AlgebraPtr& src,
                      const std::vector<std::vector<std::uint64_t>>& masks) {
        Homomorphism h;
        h.source = src;
        h.target = pushout_ptr;
        h.map.resize(src->size());
        for (int e = 0; e < src->size(); ++e) h.map[e] = vk_index(sets, masks[e][0]);
        if (!is_homomorphism(*src, *pushout_ptr, h.map))
            throw_internal("pushout: projection-induced map is not a homomorphism");
        return h;
    };
    res.pb = to_hom(v.b, pm.pb);
    res.pc = to_hom(v.c, pm.pc);
    for (int e = 0; e < v.a->size(); ++e)
        if (res.pb.map[v.fb.map[e]] != res.pc.map[v.fc.map[e]])
            throw_internal("pushout: square does not commute");
    return res;
}

}  // namespace

PushoutResult pushout(const VFormation& v, int n) {
    return materialize_pushout(v, pushout_masks(v, n));
}

AmalgamCertificate admits_amalgamation(const VFormation& v, int n) {
    const SigmaSignature sigma = full_sigma(n);
    DualSpace da = dual_space(v.a, sigma);
    DualSpace db = dual_space(v.b, sigma);
    DualSpace dc = dual_space(v.c, sigma);
    StructureMorphism dfb = dual_map(v.fb, db, da);
    StructureMorphism dfc = dual_map(v.fc, dc, da);

    AmalgamCertificate cert;
    cert.admits = true;

    auto check_side = [&](const DualSpace& d_this, const StructureMorphism& df_this,
                          const StructureMorphism& df_other, const char* side) {
        std::set<int> image_other(df_other.map.begin(), df_other.map.end());
        SimRelation sim = sim_classes(d_this.structure);
        std::vector<char> class_ok(sim.num_classes(), 0);
        for (int y = 0; y < d_this.structure.size(); ++y)
            if (image_other.count(df_this.map[y])) class_ok[sim.class_of[y]] = 1;
        for (int x = 0; x < d_this.structure.size(); ++x)
            if (!class_ok[sim.class_of[x]]) {
                cert.admits = false;
                cert.witness_side = side;
                cert.witness_point = d_this.structure.labels[x];
                cert.witness_hom = d_this.points[x].map;
                return;
            }
    };
    check_side(db, dfb, dfc, "B");
    if (cert.admits) check_side(dc, dfc, dfb, "C");

    // cross-check against injectivity of the pushout maps, computed on
    // up-set masks so that huge pushouts never get materialized
    PushoutMasks pm = pushout_masks(v, n);
    if ((pm.pb_injective && pm.pc_injective) != cert.admits)
        throw_internal("amalgamation verdict disagrees with pushout-map injectivity");
    cert.amalgam_size = pm.size;
    if (cert.admits && pm.size <= 1000) cert.amalgam = materialize_pushout(v, pm);
    return cert;
}

bool verify_certificate(const VFormation& v, int n, const AmalgamCertificate& cert) {
    if (cert.admits) {
        if (!cert.amalgam) {
            // amalgam too large to carry tables: re-derive the pushout maps
            PushoutMasks pm = pushout_masks(v, n);
            return pm.pb_injective && pm.pc_injective && pm.size == cert.amalgam_size;
        }
        const PushoutResult& am = *cert.amalgam;
        if (variety_index(am.algebra) > n) return false;
        if (!is_homomorphism(*v.b, am.algebra, am.pb.map)) return false;
        if (!is_homomorphism(*v.c, am.algebra, am.pc.map)) return false;
        if (!am.pb.injective() || !am.pc.injective()) return false;
        for (int e = 0; e < v.a->size(); ++e)
            if (am.pb.map[v.fb.map[e]] != am.pc.map[v.fc.map[e]]) return false;
        return true;
    }
    // re-evaluate the failed condition at the witness point
    const SigmaSignature sigma = full_sigma(n);
    DualSpace da = dual_space(v.a, sigma);
    const bool side_b = cert.witness_side == "B";
    DualSpace d_this = dual_space(side_b ? v.b : v.c, sigma);
    DualSpace d_other = dual_space(side_b ? v.c : v.b, sigma);
    StructureMorphism df_this = dual_map(side_b ? v.fb : v.fc, d_this, da);
    StructureMorphism df_other = dual_map(side_b ? v.fc : v.fb, d_other, da);
    int x = -1;
    for (int p = 0; p < d_this.structure.size(); ++p)
        if (d_this.points[p].map == cert.witness_hom) x = p;
    if (x < 0) return false;
    std::set<int> image_other(df_other.map.begin(), df_other.map.end());
    SimRelation sim = sim_classes(d_this.structure);
    for (int y = 0; y < d_this.structure.size(); ++y)
        if (sim.same(x, y) && image_other.count(df_this.map[y])) return false;
    return true;
}

std::optional<VFormation> find_failing_vformation(int n, int max_nodes) {
    auto forests = enumerate_forests(max_nodes, n - 2);
    std::vector<AlgebraPtr> algebras;
    for (auto& f : forests)
        if (f.size() > 0) algebras.push_back(share(vk_algebra(f)));
    for (auto& a : algebras)
        for (auto& b : algebras) {
            auto embs_b = all_embeddings(a, b);
            if (embs_b.empty()) continue;
            for (auto& c : algebras) {
                auto embs_c = all_embeddings(a, c);
                for (auto& fb : embs_b)
                    for (auto& fc : embs_c) {
                        VFormation v = make_vformation(a, b, c, fb, fc);
                        if (!admits_amalgamation(v, n).admits) return v;
                    }
            }
        }
    return std::nullopt;
}

Forest coproduct_dual_forest(const std::vector<AlgebraPtr>& k, int n,
                             std::optional<SigmaSignature> sigma_opt) {
    if (n < 2) throw_input("coproduct: n must be at least 2");
    SigmaSignature sigma = sigma_opt.value_or(coproduct_default_sigma(n));
    if (sigma.n != n) throw_input("coproduct: sigma does not match n");
    if (k.empty()) return hu_dual(make_chain(2));  // dual of the initial algebra

    std::optional<DualStructure> prod;
    for (std::size_t i = 0; i < k.size(); ++i) {
        int vi = variety_index(*k[i]);
        if (vi > n)
            throw_variety("coproduct: component " + std::to_string(i) + " lies in G_" +
                              std::to_string(vi) + " but not in G_" + std::to_string(n),
                          "{\"component\":" + std::to_string(i) + "}");
        DualStructure d = G_sigma(hu_dual(*k[i]), sigma);
        prod = prod ? product_structure(*prod, d) : d;
    }
    return relabel_compact(F_sigma(*prod));
}

GodelAlgebra coproduct_in_Gn(const std::vector<AlgebraPtr>& k, int n,
                             std::optional<SigmaSignature> sigma_opt) {
    return vk_algebra(coproduct_dual_forest(k, n, std::move(sigma_opt)));
}

GodelAlgebra coproduct_in_G(const std::vector<AlgebraPtr>& k) {
    int m = 2;
    for (auto& a : k) m += variety_index(*a) - 2;
    m = std::max(m, 2);
    return coproduct_in_Gn(k, m);
}

FreeAlgebra free_algebra(int n, int gens) {
    if (n < 2) throw_input("free_algebra: n must be at least 2");
    if (gens < 0) throw_input("free_algebra: generator count must be nonnegative");
    const SigmaSignature sigma = full_sigma(n);
    unsigned long long npow = 1;
    for (int i = 0; i < gens; ++i) {
        npow *= static_cast<unsigned>(n);
        if (npow > enumeration_cap()) throw_resource("free_algebra: point cap exceeded");
    }

    DualStructure x = power_structure(sigma, gens);
    QuotientForest q = F_sigma_quotient(x);
    Forest compact = relabel_compact(q.forest);
    FreeAlgebra fr;
    fr.algebra = vk_algebra(compact);
    auto sets = vk_upsets(compact);

    const int npoints = x.size();
    auto digit = [&](int point, int s) {
        int div = 1;
        for (int j = gens - 1 - s; j > 0; --j) div *= n;
        return (point / div) % n;
    };
    for (int s = 0; s < gens; ++s) {
        std::uint64_t mask = 0;
        for (int p = 0; p < npoints; ++p)
            if (digit(p, s) == n - 1) mask |= std::uint64_t(1) << q.sim.class_of[p];
        fr.generators.push_back(vk_index(sets, mask));
    }

    // universal property: assignments of the generators into C_n correspond
    // exactly to homomorphisms into C_n
    AlgebraPtr fp = share(fr.algebra);
    auto homs = hom_set(fp, n);
    if (homs.size() != npow) throw_internal("free_algebra: |hom(F, C_n)| != n^gens");
    std::set<std::vector<int>> assignments;
    for (auto& h : homs) {
        std::vector<int> vals;
        for (int g : fr.generators) vals.push_back(h.map[g]);
        assignments.insert(vals);
    }
    if (assignments.size() != homs.size())
        throw_internal("free_algebra: two homomorphisms agree on the generators");
    return fr;
}

FullnessReport fullness_witness(int n, const SigmaSignature& sigma, int samples,
                                std::uint64_t seed) {
    if (n < 4) throw_input("fullness_witness: n must be at least 4");
    if (sigma.n != n) throw_input("fullness_witness: sigma does not match n");
    DualStructure ego = alter_ego(sigma);
    FullnessReport rep;

    auto realizes = [&](const DualStructure& x) {
        GodelAlgebra b = vk_algebra(F_sigma(x));
        DualSpace d = dual_space(share(std::move(b)), sigma);
        return structures_isomorphic(x, d.structure);
    };

    int last_f = 0;
    for (int i = 1; i <= sigma.partial_count(); ++i)
        if (sigma.use_f[i - 1]) last_f = i;

    if (last_f > 0) {
        // some f_j present: the tail {j+1,...,n-1} is closed but collapses to
        // a two-chain whose reconstruction has n-1 points
        std::vector<int> pts;
        for (int v = last_f + 1; v <= n - 1; ++v) pts.push_back(v);
        DualStructure x = substructure(ego, pts);
        DualStructure z = G_sigma(F_sigma(x), sigma);
        if (z.size() != n - 1) throw_internal("fullness: reconstruction size is off");
        if (structures_isomorphic(x, z))
            throw_internal("fullness: expected witness is isomorphic to its reconstruction");
        rep.witness = std::move(x);
        return rep;
    }
    if (sigma.endo_index != 1) {
        // all-g with h_j, j > 1: {1, n-1} is closed, its reconstruction has
        // the first partial operation defined everywhere
        DualStructure x = substructure(ego, {1, n - 1});
        DualStructure z = G_sigma(F_sigma(x), sigma);
        auto dom_size = [](const DualStructure& s) {
            int c = 0;
            for (int v : s.partial[0])
                if (v >= 0) ++c;
            return c;
        };
        if (dom_size(x) != 1 || dom_size(z) != 2)
            throw_internal("fullness: expected domain mismatch is off");
        if (structures_isomorphic(x, z))
            throw_internal("fullness: expected witness is isomorphic to its reconstruction");
        rep.witness = std::move(x);
        return rep;
    }

    // the full signature: sweep every closed substructure of the alter ego,
    // then sampled closed substructures of its square
    for (auto& pts : closed_substructures(ego)) {
        DualStructure x = substructure(ego, pts);
        if (!realizes(x)) throw_internal("fullness: substructure of the alter ego not realized");
        ++rep.substructures_checked;
    }
    DualStructure square = product_structure(ego, ego);
    std::mt19937_64 rng(seed);
    std::set<std::vector<int>> seen;
    int attempts = 0;
    while (static_cast<int>(seen.size()) < samples && attempts < samples * 50) {
        ++attempts;
        std::vector<int> seed_pts;
        for (int p = 0; p < square.size(); ++p)
            if (rng() & 1) seed_pts.push_back(p);
        auto closed = substructure_closure(square, seed_pts);
        if (!seen.insert(closed).second) continue;
        DualStructure x = substructure(square, closed);
        if (!realizes(x))
            throw_internal("fullness: sampled substructure of the square not realized");
        ++rep.substructures_checked;
    }
    rep.full = true;
    return rep;
}

}  // namespace godel
