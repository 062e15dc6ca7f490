#include "godel/dot.hpp"

#include <map>
#include <sstream>

namespace godel {

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

const char* partial_style(int index) {
    switch ((index - 1) % 3) {
        case 0: return "dashed";
        case 1: return "dotted";
        default: return "bold";
    }
}

void emit_rank_groups(std::ostream& os, const Poset& p, const std::string& prefix) {
    std::map<int, std::vector<int>> by_depth;
    for (int e = 0; e < p.size(); ++e) by_depth[depth_of(p, e)].push_back(e);
    for (auto& [d, elems] : by_depth) {
        os << "  { rank=same;";
        for (int e : elems) os << " " << prefix << e << ";";
        os << " }\n";
    }
}

void emit_structure_body(std::ostream& os, const DualStructure& x, const std::string& prefix) {
    for (int p = 0; p < x.size(); ++p)
        os << "  " << prefix << p << " [label=" << quote(x.labels[p]) << "];\n";
    const std::string hname = x.sigma.has_endo() ? "h" + std::to_string(x.sigma.endo_index) : "";
    if (x.sigma.has_endo())
        for (int p = 0; p < x.size(); ++p)
            os << "  " << prefix << p << " -> " << prefix << x.endo[p] << " [style=solid, label="
               << quote(hname) << "];\n";
    for (std::size_t i = 0; i < x.partial.size(); ++i) {
        std::string opname = (x.sigma.use_f[i] ? "f" : "g") + std::to_string(i + 1);
        for (int p = 0; p < x.size(); ++p)
            if (x.partial[i][p] >= 0)
                os << "  " << prefix << p << " -> " << prefix << x.partial[i][p]
                   << " [style=" << partial_style(static_cast<int>(i) + 1)
                   << ", label=" << quote(opname) << "];\n";
    }
}

}  // namespace

std::string dot_poset(const Poset& p, const std::string& name) {
    std::ostringstream os;
    os << "digraph " << quote(name) << " {\n  rankdir=BT;\n";
    for (int e = 0; e < p.size(); ++e)
        os << "  n" << e << " [label=" << quote(p.labels[e]) << "];\n";
    for (auto [lo, hi] : p.covers) os << "  n" << lo << " -> n" << hi << ";\n";
    emit_rank_groups(os, p, "n");
    os << "}\n";
    return os.str();
}

std::string dot_forest(const Forest& f, const std::string& name) { return dot_poset(f.poset, name); }

std::string dot_structure(const DualStructure& x, const std::string& name) {
    std::ostringstream os;
    os << "digraph " << quote(name) << " {\n";
    emit_structure_body(os, x, "p");
    os << "}\n";
    return os.str();
}

std::string dot_translation(const DualStructure& x, const QuotientForest& q,
                            const std::string& name) {
    std::ostringstream os;
    os << "digraph " << quote(name) << " {\n  compound=true;\n";
    // left: the structure, one labelled cluster per class
    for (int c = 0; c < q.sim.num_classes(); ++c) {
        os << "  subgraph cluster_" << c << " {\n    label=" << quote(q.forest.poset.labels[c])
           << ";\n";
        for (int p : q.sim.members[c]) os << "    p" << p << " [label=" << quote(x.labels[p]) << "];\n";
        os << "  }\n";
    }
    std::ostringstream body;
    emit_structure_body(body, x, "p");
    // strip the node lines already emitted inside the clusters
    std::istringstream in(body.str());
    std::string line;
    while (std::getline(in, line))
        if (line.find("->") != std::string::npos) os << line << "\n";
    // right: the quotient forest
    for (int c = 0; c < q.forest.size(); ++c)
        os << "  f" << c << " [shape=ellipse, label=" << quote(q.forest.poset.labels[c]) << "];\n";
    for (auto [lo, hi] : q.forest.poset.covers) os << "  f" << lo << " -> f" << hi << ";\n";
    os << "}\n";
    return os.str();
}

bool dot_is_valid(const std::string& text) {
    // tokenless scan: quoted strings may hide braces, so track them first
    int brace = 0, bracket = 0;
    bool in_quote = false, escaped = false, seen_header = false;
    std::size_t i = 0;
    while (i < text.size() && (text[i] == ' ' || text[i] == '\n' || text[i] == '\t')) ++i;
    if (text.compare(i, 7, "digraph") == 0 || text.compare(i, 5, "graph") == 0)
        seen_header = true;
    if (!seen_header) return false;
    for (char c : text) {
        if (in_quote) {
            if (escaped)
                escaped = false;
            else if (c == '\\')
                escaped = true;
            else if (c == '"')
                in_quote = false;
            continue;
        }
        switch (c) {
            case '"': in_quote = true; break;
            case '{': ++brace; break;
            case '}':
                if (--brace < 0) return false;
                break;
            case '[': ++bracket; break;
            case ']':
                if (--bracket < 0) return false;
                break;
            default: break;
        }
    }
    return !in_quote && brace == 0 && bracket == 0;
}

}  // namespace godel
