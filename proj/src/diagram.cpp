#include "splice/diagram.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "splice/jsonio.hpp"

namespace splice {

struct DiagramAssembler {
    static SpliceDiagram make(std::vector<SpliceDiagram::Vertex> vertices,
                              std::vector<SpliceDiagram::Edge> edges,
                              std::vector<size_t> leaf_order,
                              std::optional<size_t> root)
    {
        SpliceDiagram d;
        d.vertices_ = std::move(vertices);
        d.edges_ = std::move(edges);
        d.leaf_order_ = std::move(leaf_order);
        d.root_ = root;
        return d;
    }
};

// --- json helpers ------------------------------------------------------------

ordered_json int_to_json(const Int& v)
{
    static const Int kMax = Int(1) << 53;
    if (v <= kMax && v >= -kMax)
        return ordered_json(v.get_si());
    return ordered_json(v.get_str());
}

Int json_to_int(const ordered_json& j, const std::string& what)
{
    if (j.is_number_integer())
        return Int(static_cast<long>(j.get<long long>()));
    if (j.is_number_unsigned())
        return Int(static_cast<unsigned long>(j.get<unsigned long long>()));
    if (j.is_string())
        return parse_int(j.get<std::string>());
    throw ParseError(what + ": expected an integer, got " + std::string(j.type_name()));
}

Rat json_to_rat(const ordered_json& j, const std::string& what)
{
    if (j.is_object()) {
        if (!j.contains("num") || !j.contains("den"))
            throw ParseError(what + ": rational object needs num and den");
        return make_rat(json_to_int(j.at("num"), what + ".num"),
                        json_to_int(j.at("den"), what + ".den"));
    }
    if (j.is_string())
        return parse_rat(j.get<std::string>());
    return Rat(json_to_int(j, what));
}

std::pair<int, int> line_column_at(const std::string& text, size_t byte)
{
    int line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

ordered_json parse_json_document(const std::string& text)
{
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = line_column_at(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(std::string("JSON syntax error: ") + e.what(), line, col);
    }
}

// --- construction ------------------------------------------------------------

namespace {

struct BuildOutcome {
    std::optional<SpliceDiagram> diagram;
    CheckResult tree, valency, positivity, coprimality;
    bool ok() const { return tree.ok && valency.ok && positivity.ok && coprimality.ok; }
};

}  // namespace

size_t SpliceDiagram::index_of(const std::string& id) const
{
    for (size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i].id == id)
            return i;
    throw DomainError("unknown vertex '" + id + "'");
}

bool SpliceDiagram::has_vertex(const std::string& id) const
{
    for (const auto& v : vertices_)
        if (v.id == id)
            return true;
    return false;
}

std::vector<size_t> SpliceDiagram::node_indices() const
{
    std::vector<size_t> out;
    for (size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i].kind == VertexKind::Node)
            out.push_back(i);
    return out;
}

size_t SpliceDiagram::edge_between(size_t u, size_t v) const
{
    for (size_t e : vertices_[u].edges)
        if (other_end(e, u) == v)
            return e;
    throw DomainError("no edge between '" + vertices_[u].id + "' and '" + vertices_[v].id + "'");
}

size_t SpliceDiagram::other_end(size_t edge, size_t v) const
{
    const Edge& e = edges_[edge];
    return e.u == v ? e.v : e.u;
}

Int SpliceDiagram::decoration(size_t edge, size_t v) const
{
    const Edge& e = edges_[edge];
    const auto& dec = (e.u == v) ? e.dec_u : e.dec_v;
    return dec ? *dec : Int(1);
}

bool SpliceDiagram::edge_is_internal(size_t edge) const
{
    const Edge& e = edges_[edge];
    return is_node(e.u) && is_node(e.v);
}

size_t SpliceDiagram::leaf_position(size_t v) const
{
    for (size_t i = 0; i < leaf_order_.size(); ++i)
        if (leaf_order_[i] == v)
            return i;
    throw DomainError("'" + vertices_[v].id + "' is not a leaf");
}

std::vector<size_t> SpliceDiagram::path(size_t u, size_t v) const
{
    std::vector<size_t> parent(vertices_.size(), SIZE_MAX);
    std::vector<size_t> queue{u};
    parent[u] = u;
    for (size_t q = 0; q < queue.size(); ++q) {
        size_t x = queue[q];
        if (x == v)
            break;
        for (size_t e : vertices_[x].edges) {
            size_t y = other_end(e, x);
            if (parent[y] == SIZE_MAX) {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    std::vector<size_t> p;
    for (size_t x = v;; x = parent[x]) {
        p.push_back(x);
        if (x == u)
            break;
    }
    std::reverse(p.begin(), p.end());
    return p;
}

namespace {

BuildOutcome try_build(std::vector<std::pair<std::string, VertexKind>> vertex_decls,
                       std::vector<SpliceDiagram::Edge> edges,
                       std::vector<std::string> leaf_order,
                       std::optional<std::string> root_id);

}  // namespace

SpliceDiagram SpliceDiagram::build(std::vector<std::pair<std::string, VertexKind>> vertices,
                                   std::vector<Edge> edges,
                                   std::vector<std::string> leaf_order,
                                   std::optional<std::string> root_id)
{
    BuildOutcome out = try_build(std::move(vertices), std::move(edges),
                                 std::move(leaf_order), std::move(root_id));
    if (!out.ok()) {
        std::string msg;
        auto take = [&](const char* name, const CheckResult& c) {
            if (c.ok || !msg.empty())
                return;
            msg = std::string(name) + " check failed";
            if (!c.offenders.empty())
                msg += ": " + c.offenders.front();
        };
        take("tree", out.tree);
        take("valency", out.valency);
        take("positivity", out.positivity);
        take("coprimality", out.coprimality);
        throw DomainError(msg);
    }
    return *out.diagram;
}

namespace {

BuildOutcome try_build(std::vector<std::pair<std::string, VertexKind>> vertex_decls,
                       std::vector<SpliceDiagram::Edge> edges,
                       std::vector<std::string> leaf_order,
                       std::optional<std::string> root_id)
{
    BuildOutcome out;

    std::map<std::string, size_t> index;
    for (size_t i = 0; i < vertex_decls.size(); ++i) {
        if (vertex_decls[i].first.empty())
            throw DomainError("empty vertex id");
        if (!index.emplace(vertex_decls[i].first, i).second)
            throw DomainError("duplicate vertex id '" + vertex_decls[i].first + "'");
    }
    if (vertex_decls.empty())
        throw DomainError("diagram has no vertices");

    std::optional<size_t> root;
    if (root_id) {
        auto it = index.find(*root_id);
        if (it == index.end())
            throw DomainError("root '" + *root_id + "' is not a vertex");
        root = it->second;
    }

    // Adjacency, duplicate edge and self-loop detection.
    std::vector<std::vector<size_t>> incident(vertex_decls.size());
    std::set<std::pair<size_t, size_t>> seen;
    for (size_t e = 0; e < edges.size(); ++e) {
        size_t u = edges[e].u, v = edges[e].v;
        if (u >= vertex_decls.size() || v >= vertex_decls.size())
            throw DomainError("edge endpoint out of range");
        if (u == v) {
            out.tree.ok = false;
            out.tree.offenders.push_back("self-loop at '" + vertex_decls[u].first + "'");
            continue;
        }
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second) {
            out.tree.ok = false;
            out.tree.offenders.push_back("duplicate edge [" + vertex_decls[u].first + "," +
                                         vertex_decls[v].first + "]");
            continue;
        }
        incident[u].push_back(e);
        incident[v].push_back(e);
    }

    // Tree: connected and acyclic.
    if (edges.size() + 1 != vertex_decls.size()) {
        out.tree.ok = false;
        out.tree.offenders.push_back("edge count " + std::to_string(edges.size()) +
                                     " does not match vertex count " +
                                     std::to_string(vertex_decls.size()) + " minus one");
    }
    {
        std::vector<char> reached(vertex_decls.size(), 0);
        std::vector<size_t> queue{0};
        reached[0] = 1;
        for (size_t q = 0; q < queue.size(); ++q)
            for (size_t e : incident[queue[q]]) {
                size_t y = edges[e].u == queue[q] ? edges[e].v : edges[e].u;
                if (!reached[y]) {
                    reached[y] = 1;
                    queue.push_back(y);
                }
            }
        for (size_t i = 0; i < reached.size(); ++i)
            if (!reached[i]) {
                out.tree.ok = false;
                out.tree.offenders.push_back("vertex '" + vertex_decls[i].first +
                                             "' unreachable from '" + vertex_decls[0].first + "'");
                break;
            }
    }

    // Valency: declared kinds must match, no valency-2 vertex except the root.
    for (size_t i = 0; i < vertex_decls.size(); ++i) {
        size_t val = incident[i].size();
        VertexKind kind = vertex_decls[i].second;
        const std::string& id = vertex_decls[i].first;
        if (val == 2 && (!root || *root != i)) {
            out.valency.ok = false;
            out.valency.offenders.push_back("vertex '" + id + "' has valency 2");
        } else if (val <= 1 && kind != VertexKind::Leaf) {
            out.valency.ok = false;
            out.valency.offenders.push_back("vertex '" + id + "' declared node but has valency " +
                                            std::to_string(val));
        } else if (val >= 2 && kind != VertexKind::Node) {
            out.valency.ok = false;
            out.valency.offenders.push_back("vertex '" + id + "' declared leaf but has valency " +
                                            std::to_string(val));
        }
    }
    if (root && incident[*root].size() != 2) {
        out.valency.ok = false;
        out.valency.offenders.push_back("root '" + vertex_decls[*root].first +
                                        "' must have valency 2");
    }

    // Positivity of all decorations.
    for (const auto& e : edges) {
        for (auto [end, dec] : {std::pair{e.u, e.dec_u}, std::pair{e.v, e.dec_v}}) {
            if (dec && *dec <= 0) {
                out.positivity.ok = false;
                out.positivity.offenders.push_back("decoration " + dec->get_str() + " at '" +
                                                   vertex_decls[end].first + "'");
            }
        }
    }

    // Pairwise coprimality around each node.
    if (out.positivity.ok) {
        for (size_t i = 0; i < vertex_decls.size(); ++i) {
            if (vertex_decls[i].second != VertexKind::Node)
                continue;
            IVec decs;
            for (size_t e : incident[i]) {
                const auto& dec = edges[e].u == i ? edges[e].dec_u : edges[e].dec_v;
                if (dec)
                    decs.push_back(*dec);
            }
            for (size_t a = 0; a < decs.size(); ++a)
                for (size_t b = a + 1; b < decs.size(); ++b)
                    if (!coprime(decs[a], decs[b])) {
                        out.coprimality.ok = false;
                        out.coprimality.offenders.push_back(
                            "decorations " + decs[a].get_str() + " and " + decs[b].get_str() +
                            " at node '" + vertex_decls[i].first + "' are not coprime");
                    }
        }
    }

    // Leaf order: must enumerate exactly the leaves.
    std::vector<size_t> order;
    {
        std::set<size_t> leaves;
        for (size_t i = 0; i < vertex_decls.size(); ++i)
            if (vertex_decls[i].second == VertexKind::Leaf)
                leaves.insert(i);
        if (leaf_order.empty()) {
            for (size_t i = 0; i < vertex_decls.size(); ++i)
                if (leaves.count(i))
                    order.push_back(i);
        } else {
            std::set<size_t> used;
            for (const auto& id : leaf_order) {
                auto it = index.find(id);
                if (it == index.end())
                    throw DomainError("leaf_order mentions unknown vertex '" + id + "'");
                if (!leaves.count(it->second))
                    throw DomainError("leaf_order entry '" + id + "' is not a leaf");
                if (!used.insert(it->second).second)
                    throw DomainError("leaf_order repeats '" + id + "'");
                order.push_back(it->second);
            }
            if (order.size() != leaves.size())
                throw DomainError("leaf_order does not list every leaf");
        }
    }

    if (!out.ok())
        return out;

    std::vector<SpliceDiagram::Vertex> verts(vertex_decls.size());
    for (size_t i = 0; i < vertex_decls.size(); ++i) {
        verts[i].id = vertex_decls[i].first;
        verts[i].kind = vertex_decls[i].second;
        verts[i].edges = incident[i];
    }
    out.diagram = DiagramAssembler::make(std::move(verts), std::move(edges),
                                         std::move(order), root);
    return out;
}

BuildOutcome outcome_from_document(const std::string& text)
{
    ordered_json doc = parse_json_document(text);
    if (!doc.is_object())
        throw ParseError("diagram document must be a JSON object");
    if (!doc.contains("vertices") || !doc.at("vertices").is_array())
        throw ParseError("missing 'vertices' array");
    if (!doc.contains("edges") || !doc.at("edges").is_array())
        throw ParseError("missing 'edges' array");

    std::vector<std::pair<std::string, VertexKind>> decls;
    std::map<std::string, VertexKind> kind_of;
    for (const auto& jv : doc.at("vertices")) {
        if (!jv.is_object() || !jv.contains("id") || !jv.at("id").is_string())
            throw ParseError("vertex entries need a string 'id'");
        std::string id = jv.at("id").get<std::string>();
        std::string kind = jv.value("kind", std::string());
        VertexKind k;
        if (kind == "node")
            k = VertexKind::Node;
        else if (kind == "leaf")
            k = VertexKind::Leaf;
        else
            throw ParseError("vertex '" + id + "': kind must be \"node\" or \"leaf\"");
        decls.emplace_back(id, k);
        kind_of[id] = k;  // duplicates rejected later by try_build
    }

    std::map<std::string, size_t> index;
    for (size_t i = 0; i < decls.size(); ++i)
        index.emplace(decls[i].first, i);

    std::vector<SpliceDiagram::Edge> edges;
    for (const auto& je : doc.at("edges")) {
        if (!je.is_object() || !je.contains("u") || !je.contains("v"))
            throw ParseError("edge entries need 'u' and 'v'");
        std::string us = je.at("u").get<std::string>();
        std::string vs = je.at("v").get<std::string>();
        auto iu = index.find(us), iv = index.find(vs);
        if (iu == index.end())
            throw ParseError("edge endpoint '" + us + "' is not a declared vertex");
        if (iv == index.end())
            throw ParseError("edge endpoint '" + vs + "' is not a declared vertex");
        SpliceDiagram::Edge e;
        e.u = iu->second;
        e.v = iv->second;
        auto read_dec = [&](const char* key, const std::string& at,
                            VertexKind k) -> std::optional<Int> {
            bool has = je.contains(key);
            if (k == VertexKind::Node) {
                if (!has)
                    throw ParseError("edge [" + us + "," + vs + "]: missing " + key +
                                     " at node '" + at + "'");
                return json_to_int(je.at(key), key);
            }
            if (has)
                throw ParseError("edge [" + us + "," + vs + "]: decoration " + key +
                                 " at leaf '" + at + "' is not allowed");
            return std::nullopt;
        };
        e.dec_u = read_dec("dec_u", us, kind_of.at(us));
        e.dec_v = read_dec("dec_v", vs, kind_of.at(vs));
        edges.push_back(std::move(e));
    }

    std::vector<std::string> leaf_order;
    if (doc.contains("leaf_order")) {
        if (!doc.at("leaf_order").is_array())
            throw ParseError("'leaf_order' must be an array of leaf ids");
        for (const auto& j : doc.at("leaf_order")) {
            if (!j.is_string())
                throw ParseError("'leaf_order' must be an array of leaf ids");
            leaf_order.push_back(j.get<std::string>());
        }
    }

    std::optional<std::string> root_id;
    if (doc.contains("root")) {
        if (!doc.at("root").is_string())
            throw ParseError("'root' must be a vertex id");
        root_id = doc.at("root").get<std::string>();
    }

    return try_build(std::move(decls), std::move(edges), std::move(leaf_order),
                     std::move(root_id));
}

}  // namespace

SpliceDiagram parse_diagram(const std::string& text)
{
    BuildOutcome out = outcome_from_document(text);
    if (!out.ok()) {
        for (const auto* check : {&out.tree, &out.valency, &out.positivity, &out.coprimality})
            if (!check->ok)
                throw DomainError(check->offenders.empty() ? "invalid diagram"
                                                           : check->offenders.front());
    }
    return *out.diagram;
}

DiagramCheckOutcome check_diagram_text(const std::string& text)
{
    BuildOutcome out = outcome_from_document(text);
    DiagramCheckOutcome r;
    r.report.tree = std::move(out.tree);
    r.report.valency = std::move(out.valency);
    r.report.positivity = std::move(out.positivity);
    r.report.coprimality = std::move(out.coprimality);
    if (out.diagram) {
        r.diagram = std::move(out.diagram);
        r.report.determinant = check_determinant_condition(*r.diagram);
    }
    return r;
}

std::string emit_diagram(const SpliceDiagram& d)
{
    ordered_json doc;
    doc["vertices"] = ordered_json::array();
    for (const auto& v : d.vertices()) {
        ordered_json jv;
        jv["id"] = v.id;
        jv["kind"] = v.kind == VertexKind::Node ? "node" : "leaf";
        doc["vertices"].push_back(std::move(jv));
    }
    doc["edges"] = ordered_json::array();
    for (const auto& e : d.edges()) {
        ordered_json je;
        je["u"] = d.vertices()[e.u].id;
        je["v"] = d.vertices()[e.v].id;
        if (e.dec_u)
            je["dec_u"] = int_to_json(*e.dec_u);
        if (e.dec_v)
            je["dec_v"] = int_to_json(*e.dec_v);
        doc["edges"].push_back(std::move(je));
    }
    doc["leaf_order"] = ordered_json::array();
    for (size_t v : d.leaf_order())
        doc["leaf_order"].push_back(d.vertices()[v].id);
    if (d.root())
        doc["root"] = d.vertices()[*d.root()].id;
    return doc.dump();
}

std::string diagram_to_dot(const SpliceDiagram& d)
{
    std::ostringstream os;
    os << "graph splice {\n";
    for (const auto& v : d.vertices())
        os << "  \"" << v.id << "\" [shape="
           << (v.kind == VertexKind::Node ? "circle" : "plaintext") << "];\n";
    for (const auto& e : d.edges()) {
        os << "  \"" << d.vertices()[e.u].id << "\" -- \"" << d.vertices()[e.v].id << "\"";
        std::string attrs;
        if (e.dec_u)
            attrs += "taillabel=\"" + e.dec_u->get_str() + "\"";
        if (e.dec_v) {
            if (!attrs.empty())
                attrs += ", ";
            attrs += "headlabel=\"" + e.dec_v->get_str() + "\"";
        }
        if (!attrs.empty())
            os << " [" << attrs << "]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

// --- invariants --------------------------------------------------------------

Int linking_number_by_index(const SpliceDiagram& d, size_t u, size_t v)
{
    if (u == v) {
        if (!d.is_node(u))
            return 1;
        Int prod = 1;
        for (size_t e : d.vertices()[u].edges)
            prod *= d.decoration(e, u);
        return prod;
    }
    std::vector<size_t> p = d.path(u, v);
    std::set<size_t> on_path;
    for (size_t i = 0; i + 1 < p.size(); ++i)
        on_path.insert(d.edge_between(p[i], p[i + 1]));
    Int prod = 1;
    for (size_t x : p)
        for (size_t e : d.vertices()[x].edges)
            if (!on_path.count(e))
                prod *= d.decoration(e, x);
    return prod;
}

Int linking_number(const SpliceDiagram& d, const std::string& u, const std::string& v)
{
    return linking_number_by_index(d, d.index_of(u), d.index_of(v));
}

Int reduced_linking_number_by_index(const SpliceDiagram& d, size_t u, size_t v)
{
    if (u == v)
        return 1;
    std::vector<size_t> p = d.path(u, v);
    std::set<size_t> on_path;
    for (size_t i = 0; i + 1 < p.size(); ++i)
        on_path.insert(d.edge_between(p[i], p[i + 1]));
    Int prod = 1;
    for (size_t i = 1; i + 1 < p.size(); ++i)
        for (size_t e : d.vertices()[p[i]].edges)
            if (!on_path.count(e))
                prod *= d.decoration(e, p[i]);
    return prod;
}

Int reduced_linking_number(const SpliceDiagram& d, const std::string& u, const std::string& v)
{
    return reduced_linking_number_by_index(d, d.index_of(u), d.index_of(v));
}

Int node_degree_by_index(const SpliceDiagram& d, size_t v)
{
    if (!d.is_node(v))
        throw DomainError("'" + d.vertices()[v].id + "' is not a node");
    return linking_number_by_index(d, v, v);
}

Int node_degree(const SpliceDiagram& d, const std::string& v)
{
    return node_degree_by_index(d, d.index_of(v));
}

Int edge_determinant(const SpliceDiagram& d, const std::string& us, const std::string& vs)
{
    size_t u = d.index_of(us), v = d.index_of(vs);
    size_t e = d.edge_between(u, v);
    if (!d.edge_is_internal(e))
        throw DomainError("edge [" + us + "," + vs + "] is not internal");
    return d.decoration(e, u) * d.decoration(e, v) - linking_number_by_index(d, u, v);
}

EdgeDeterminantCheck check_determinant_condition(const SpliceDiagram& d)
{
    EdgeDeterminantCheck out;
    for (size_t idx = 0; idx < d.edges().size(); ++idx) {
        const auto& e = d.edges()[idx];
        if (!d.edge_is_internal(idx))
            continue;
        EdgeDeterminantCheck::Entry entry;
        entry.u = d.vertices()[e.u].id;
        entry.v = d.vertices()[e.v].id;
        entry.value = d.decoration(idx, e.u) * d.decoration(idx, e.v) -
                      linking_number_by_index(d, e.u, e.v);
        entry.positive = entry.value > 0;
        if (!entry.positive)
            out.ok = false;
        out.entries.push_back(std::move(entry));
    }
    return out;
}

IVec seifert_data(const SpliceDiagram& d, const std::string& vs)
{
    size_t v = d.index_of(vs);
    if (!d.is_node(v))
        throw DomainError("'" + vs + "' is not a node");
    IVec out;
    for (size_t e : d.vertices()[v].edges) {
        Int dec = d.decoration(e, v);
        if (dec != 1)
            out.push_back(dec);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// --- surgeries ---------------------------------------------------------------

SpliceDiagram splice(const SpliceDiagram& d1, const std::string& leaf1,
                     const SpliceDiagram& d2, const std::string& leaf2)
{
    if (d1.enriched_mode() || d2.enriched_mode())
        throw DomainError("splice is not defined on enriched diagrams");
    size_t l1 = d1.index_of(leaf1), l2 = d2.index_of(leaf2);
    if (d1.is_node(l1))
        throw DomainError("'" + leaf1 + "' is not a leaf");
    if (d2.is_node(l2))
        throw DomainError("'" + leaf2 + "' is not a leaf");
    if (d1.vertices()[l1].edges.empty() || d2.vertices()[l2].edges.empty())
        throw DomainError("cannot splice at an isolated leaf");
    size_t e1 = d1.vertices()[l1].edges[0];
    size_t e2 = d2.vertices()[l2].edges[0];
    size_t x1 = d1.other_end(e1, l1), x2 = d2.other_end(e2, l2);
    if (!d1.is_node(x1) || !d2.is_node(x2))
        throw DomainError("spliced edge must join two nodes");

    for (const auto& v : d2.vertices())
        if (v.id != leaf2 && d1.has_vertex(v.id))
            throw DomainError("duplicate vertex id '" + v.id + "' across spliced diagrams");

    std::vector<std::pair<std::string, VertexKind>> decls;
    std::map<std::pair<int, size_t>, size_t> remap;  // (which diagram, old index) -> new
    auto add_all = [&](const SpliceDiagram& d, size_t skip, int tag) {
        for (size_t i = 0; i < d.vertices().size(); ++i) {
            if (i == skip)
                continue;
            remap[{tag, i}] = decls.size();
            decls.emplace_back(d.vertices()[i].id, d.vertices()[i].kind);
        }
    };
    add_all(d1, l1, 1);
    add_all(d2, l2, 2);

    std::vector<SpliceDiagram::Edge> edges;
    auto add_edges = [&](const SpliceDiagram& d, size_t skip_edge, int tag) {
        for (size_t i = 0; i < d.edges().size(); ++i) {
            if (i == skip_edge)
                continue;
            const auto& e = d.edges()[i];
            edges.push_back({remap.at({tag, e.u}), remap.at({tag, e.v}), e.dec_u, e.dec_v});
        }
    };
    add_edges(d1, e1, 1);
    add_edges(d2, e2, 2);
    SpliceDiagram::Edge joint;
    joint.u = remap.at({1, x1});
    joint.v = remap.at({2, x2});
    joint.dec_u = d1.decoration(e1, x1);
    joint.dec_v = d2.decoration(e2, x2);
    edges.push_back(std::move(joint));

    std::vector<std::string> leaf_order;
    for (size_t v : d1.leaf_order())
        if (v != l1)
            leaf_order.push_back(d1.vertices()[v].id);
    for (size_t v : d2.leaf_order())
        if (v != l2)
            leaf_order.push_back(d2.vertices()[v].id);

    return SpliceDiagram::build(std::move(decls), std::move(edges), std::move(leaf_order));
}

namespace {

std::string fresh_id(const SpliceDiagram& d, std::string base)
{
    while (d.has_vertex(base))
        base += "'";
    return base;
}

SpliceDiagram side_diagram(const SpliceDiagram& d, size_t keep_root, size_t cut_edge,
                           const std::string& fresh_leaf)
{
    // Vertices reachable from keep_root without crossing cut_edge.
    std::vector<char> in_side(d.vertices().size(), 0);
    std::vector<size_t> queue{keep_root};
    in_side[keep_root] = 1;
    for (size_t q = 0; q < queue.size(); ++q)
        for (size_t e : d.vertices()[queue[q]].edges) {
            if (e == cut_edge)
                continue;
            size_t y = d.other_end(e, queue[q]);
            if (!in_side[y]) {
                in_side[y] = 1;
                queue.push_back(y);
            }
        }

    std::vector<std::pair<std::string, VertexKind>> decls;
    std::map<size_t, size_t> remap;
    for (size_t i = 0; i < d.vertices().size(); ++i)
        if (in_side[i]) {
            remap[i] = decls.size();
            decls.emplace_back(d.vertices()[i].id, d.vertices()[i].kind);
        }
    size_t fresh_index = decls.size();
    decls.emplace_back(fresh_leaf, VertexKind::Leaf);

    std::vector<SpliceDiagram::Edge> edges;
    for (size_t i = 0; i < d.edges().size(); ++i) {
        if (i == cut_edge)
            continue;
        const auto& e = d.edges()[i];
        if (in_side[e.u] && in_side[e.v])
            edges.push_back({remap.at(e.u), remap.at(e.v), e.dec_u, e.dec_v});
    }
    SpliceDiagram::Edge stub;
    stub.u = remap.at(keep_root);
    stub.v = fresh_index;
    stub.dec_u = d.decoration(cut_edge, keep_root);
    edges.push_back(std::move(stub));

    std::vector<std::string> leaf_order;
    for (size_t v : d.leaf_order())
        if (in_side[v])
            leaf_order.push_back(d.vertices()[v].id);
    leaf_order.push_back(fresh_leaf);

    return SpliceDiagram::build(std::move(decls), std::move(edges), std::move(leaf_order));
}

}  // namespace

SplitResult split_edge(const SpliceDiagram& d, const std::string& as, const std::string& bs)
{
    if (d.enriched_mode())
        throw DomainError("split_edge is not defined on enriched diagrams");
    size_t a = d.index_of(as), b = d.index_of(bs);
    size_t e = d.edge_between(a, b);
    if (!d.edge_is_internal(e))
        throw DomainError("edge [" + as + "," + bs + "] is not internal");
    SplitResult r;
    r.root_a = fresh_id(d, "r_" + as);
    r.root_b = fresh_id(d, "r_" + bs);
    r.side_a = side_diagram(d, a, e, r.root_a);
    r.side_b = side_diagram(d, b, e, r.root_b);
    return r;
}

// --- isomorphism -------------------------------------------------------------

namespace {

std::string encode_subtree(const SpliceDiagram& d, size_t v, size_t parent_edge)
{
    std::vector<std::string> children;
    for (size_t e : d.vertices()[v].edges) {
        if (e == parent_edge)
            continue;
        size_t c = d.other_end(e, v);
        children.push_back("(" + d.decoration(e, v).get_str() + "|" +
                           d.decoration(e, c).get_str() + ":" + encode_subtree(d, c, e) + ")");
    }
    std::sort(children.begin(), children.end());
    std::string out = d.is_node(v) ? "N[" : "L[";
    for (const auto& c : children)
        out += c;
    out += "]";
    return out;
}

// Tree centers by leaf peeling; one or two of them.
std::vector<size_t> tree_centers(const SpliceDiagram& d)
{
    size_t n = d.vertices().size();
    std::vector<size_t> degree(n);
    std::vector<size_t> frontier;
    for (size_t i = 0; i < n; ++i) {
        degree[i] = d.vertices()[i].edges.size();
        if (degree[i] <= 1)
            frontier.push_back(i);
    }
    size_t remaining = n;
    std::vector<char> removed(n, 0);
    while (remaining > 2) {
        std::vector<size_t> next;
        for (size_t v : frontier) {
            removed[v] = 1;
            --remaining;
            for (size_t e : d.vertices()[v].edges) {
                size_t u = d.other_end(e, v);
                if (!removed[u] && --degree[u] == 1)
                    next.push_back(u);
            }
        }
        frontier = std::move(next);
    }
    std::vector<size_t> centers;
    for (size_t i = 0; i < n; ++i)
        if (!removed[i])
            centers.push_back(i);
    return centers;
}

}  // namespace

std::string canonical_form(const SpliceDiagram& d)
{
    std::string best;
    for (size_t c : tree_centers(d)) {
        std::string enc = encode_subtree(d, c, SIZE_MAX);
        if (best.empty() || enc < best)
            best = enc;
    }
    return best;
}

bool isomorphic(const SpliceDiagram& d1, const SpliceDiagram& d2)
{
    return canonical_form(d1) == canonical_form(d2);
}

}  // namespace splice
