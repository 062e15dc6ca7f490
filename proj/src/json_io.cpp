#include "godel/json_io.hpp"

#include <algorithm>
#include <set>

#include "godel/error.hpp"

namespace godel {

namespace {

std::vector<std::string> string_list(const json& j, const char* what) {
    if (!j.is_array()) throw_input(std::string(what) + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& v : j) {
        if (!v.is_string()) throw_input(std::string(what) + " must contain only strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

}  // namespace

json poset_to_json(const Poset& p) {
    json covers = json::array();
    for (auto [lo, hi] : p.covers) covers.push_back({p.labels[lo], p.labels[hi]});
    return json{{"nodes", p.labels}, {"covers", covers}};
}

Poset poset_from_json(const json& j) {
    auto labels = string_list(j.at("nodes"), "nodes");
    Poset tmp;
    tmp.labels = labels;
    std::vector<std::pair<int, int>> rel;
    for (const auto& pr : j.at("covers")) {
        if (!pr.is_array() || pr.size() != 2) throw_input("covers must be pairs");
        int lo = -1, hi = -1;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == pr[0].get<std::string>()) lo = static_cast<int>(i);
            if (labels[i] == pr[1].get<std::string>()) hi = static_cast<int>(i);
        }
        if (lo < 0 || hi < 0) throw_input("covers refer to an unknown node");
        rel.emplace_back(lo, hi);
    }
    return make_poset(std::move(labels), rel);
}

json forest_to_json(const Forest& f) {
    json parent = json::object();
    for (int i = 0; i < f.size(); ++i) {
        if (f.parent[i] < 0)
            parent[f.poset.labels[i]] = nullptr;
        else
            parent[f.poset.labels[i]] = f.poset.labels[f.parent[i]];
    }
    return json{{"nodes", f.poset.labels}, {"parent", parent}};
}

Forest forest_from_json(const json& j) {
    auto labels = string_list(j.at("nodes"), "nodes");
    const auto& pj = j.at("parent");
    if (!pj.is_object()) throw_input("parent must be an object");
    std::vector<int> parent(labels.size(), -1);
    auto index = [&](const std::string& s) {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == s) return static_cast<int>(i);
        throw_input("parent map refers to an unknown node '" + s + "'");
        return -1;
    };
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!pj.contains(labels[i])) throw_input("parent map is missing node '" + labels[i] + "'");
        const auto& v = pj.at(labels[i]);
        if (v.is_null()) continue;
        if (!v.is_string()) throw_input("parent entries must be node names or null");
        parent[i] = index(v.get<std::string>());
    }
    return make_forest(std::move(labels), parent);
}

json algebra_to_json(const GodelAlgebra& a) {
    return json{{"type", "table"}, {"elements", a.labels}, {"meet", a.meet},
                {"join", a.join},  {"impl", a.impl},       {"bot", a.bot},
                {"top", a.top}};
}

GodelAlgebra algebra_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type")) throw_input("algebra JSON needs a \"type\"");
    const std::string type = j.at("type").get<std::string>();
    if (type == "chain") {
        return make_chain(j.at("n").get<int>());
    }
    if (type == "forest") {
        return vk_algebra(forest_from_json(j));
    }
    if (type == "table") {
        auto labels = string_list(j.at("elements"), "elements");
        auto meet = j.at("meet").get<std::vector<std::vector<int>>>();
        auto join = j.at("join").get<std::vector<std::vector<int>>>();
        GodelAlgebra a = heyting_from_lattice(labels, meet, join, j.at("bot").get<int>(),
                                              j.at("top").get<int>());
        if (j.contains("impl")) {
            auto impl = j.at("impl").get<std::vector<std::vector<int>>>();
            if (impl != a.impl)
                throw_input("impl table is not the implication determined by the order");
        }
        return a;
    }
    throw_input("algebra type must be \"chain\", \"forest\" or \"table\"");
}

json hom_to_json(const Homomorphism& h) {
    json m = json::object();
    for (std::size_t i = 0; i < h.map.size(); ++i)
        m[h.source->labels[i]] = h.target->labels[h.map[i]];
    return json{{"map", m}};
}

std::vector<int> hom_map_from_json(const json& j, const GodelAlgebra& src,
                                   const GodelAlgebra& tgt) {
    const auto& m = j.at("map");
    if (!m.is_object()) throw_input("hom map must be an object");
    std::vector<int> map(src.size(), -1);
    for (int e = 0; e < src.size(); ++e) {
        if (!m.contains(src.labels[e]))
            throw_input("hom map is missing element '" + src.labels[e] + "'");
        int t = tgt.index_of(m.at(src.labels[e]).get<std::string>());
        if (t < 0) throw_input("hom map sends '" + src.labels[e] + "' to an unknown element");
        map[e] = t;
    }
    return map;
}

json structure_to_json(const DualStructure& x) {
    json ops = json::array();
    for (const auto& tab : x.partial) {
        json dom = json::array(), map = json::object();
        for (int p = 0; p < x.size(); ++p)
            if (tab[p] >= 0) {
                dom.push_back(x.labels[p]);
                map[x.labels[p]] = x.labels[tab[p]];
            }
        ops.push_back(json{{"dom", dom}, {"map", map}});
    }
    json endo;
    if (x.sigma.has_endo()) {
        endo = json::object();
        for (int p = 0; p < x.size(); ++p) endo[x.labels[p]] = x.labels[x.endo[p]];
    }
    return json{{"n", x.sigma.n},
                {"sigma", format_sigma(x.sigma)},
                {"points", x.labels},
                {"ops", ops},
                {"endo", endo}};
}

DualStructure structure_from_json(const json& j) {
    DualStructure x;
    std::optional<int> n;
    if (j.contains("n")) n = j.at("n").get<int>();
    x.sigma = parse_sigma(j.at("sigma").get<std::string>(), n);
    x.labels = string_list(j.at("points"), "points");
    {
        std::set<std::string> seen(x.labels.begin(), x.labels.end());
        if (seen.size() != x.labels.size()) throw_input("duplicate point labels");
    }
    const auto& ops = j.at("ops");
    if (!ops.is_array() || static_cast<int>(ops.size()) != x.sigma.partial_count())
        throw_input("ops must list exactly n-3 partial operations");
    auto table_from = [&](const json& map) {
        std::vector<int> tab(x.size(), -1);
        for (auto it = map.begin(); it != map.end(); ++it) {
            int p = x.index_of(it.key());
            int q = x.index_of(it.value().get<std::string>());
            if (p < 0 || q < 0) throw_input("operation map refers to an unknown point");
            tab[p] = q;
        }
        return tab;
    };
    for (const auto& op : ops) {
        auto tab = table_from(op.at("map"));
        auto dom = string_list(op.at("dom"), "dom");
        std::set<std::string> dom_set(dom.begin(), dom.end());
        for (int p = 0; p < x.size(); ++p)
            if ((tab[p] >= 0) != (dom_set.count(x.labels[p]) > 0))
                throw_input("operation dom does not match the map's keys");
        x.partial.push_back(std::move(tab));
    }
    if (x.sigma.has_endo()) {
        auto tab = table_from(j.at("endo"));
        for (int p = 0; p < x.size(); ++p)
            if (tab[p] < 0) throw_input("endo must be total");
        x.endo = std::move(tab);
    } else {
        if (j.contains("endo") && !j.at("endo").is_null() && !j.at("endo").empty())
            throw_input("n = 2 structures carry no endomorphism");
        x.endo.resize(x.size());
        for (int p = 0; p < x.size(); ++p) x.endo[p] = p;
    }
    return x;
}

json vformation_to_json(const VFormation& v) {
    return json{{"A", algebra_to_json(*v.a)}, {"B", algebra_to_json(*v.b)},
                {"C", algebra_to_json(*v.c)}, {"fB", hom_to_json(v.fb)},
                {"fC", hom_to_json(v.fc)}};
}

VFormation vformation_from_json(const json& j) {
    AlgebraPtr a = share(algebra_from_json(j.at("A")));
    AlgebraPtr b = share(algebra_from_json(j.at("B")));
    AlgebraPtr c = share(algebra_from_json(j.at("C")));
    Homomorphism fb{a, b, hom_map_from_json(j.at("fB"), *a, *b)};
    Homomorphism fc{a, c, hom_map_from_json(j.at("fC"), *a, *c)};
    return make_vformation(a, b, c, fb, fc);
}

json certificate_to_json(const AmalgamCertificate& cert) {
    json out{{"verdict", cert.admits ? "admits" : "fails"}};
    if (cert.admits) out["amalgamElements"] = cert.amalgam_size;
    if (cert.admits && cert.amalgam) {
        out["amalgam"] = algebra_to_json(cert.amalgam->algebra);
        out["hB"] = hom_to_json(cert.amalgam->pb);
        out["hC"] = hom_to_json(cert.amalgam->pc);
    } else if (!cert.admits) {
        out["witness"] = json{{"side", cert.witness_side},
                              {"point", cert.witness_point},
                              {"hom", cert.witness_hom}};
    }
    return out;
}

json error_to_json(const godel_error& e) {
    json out{{"error", errc_name(e.code())}, {"detail", e.detail()}};
    if (!e.witness_json().empty()) {
        json w = json::parse(e.witness_json(), nullptr, false);
        out["witness"] = w.is_discarded() ? json(e.witness_json()) : w;
    }
    return out;
}

}  // namespace godel
