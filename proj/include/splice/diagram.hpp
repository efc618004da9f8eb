#ifndef SPLICE_DIAGRAM_HPP
#define SPLICE_DIAGRAM_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "splice/numeric.hpp"

namespace splice {

enum class VertexKind { Leaf, Node };

// A splice diagram: a decorated tree whose node-edge incidences carry positive
// integers, pairwise coprime around each node. Leaves carry no decorations.
// Immutable after construction; all operations are pure.
class SpliceDiagram {
public:
    struct Vertex {
        std::string id;
        VertexKind kind = VertexKind::Leaf;
        std::vector<size_t> edges;  // indices into edges_
    };
    struct Edge {
        size_t u = 0, v = 0;
        std::optional<Int> dec_u, dec_v;  // present exactly at node ends
    };

    // Builds and validates; throws DomainError on any structural violation.
    // root_id marks the single valency-2 vertex allowed in enriched mode.
    static SpliceDiagram build(std::vector<std::pair<std::string, VertexKind>> vertices,
                               std::vector<Edge> edges,
                               std::vector<std::string> leaf_order,
                               std::optional<std::string> root_id = std::nullopt);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<size_t>& leaf_order() const { return leaf_order_; }
    std::optional<size_t> root() const { return root_; }
    bool enriched_mode() const { return root_.has_value(); }

    size_t leaf_count() const { return leaf_order_.size(); }
    size_t index_of(const std::string& id) const;  // throws on unknown id
    bool has_vertex(const std::string& id) const;
    // Nodes in document order; includes the enriched root when present.
    std::vector<size_t> node_indices() const;
    bool is_node(size_t v) const { return vertices_[v].kind == VertexKind::Node; }

    size_t edge_between(size_t u, size_t v) const;  // throws if absent
    size_t other_end(size_t edge, size_t v) const;
    // Decoration at vertex v's end of the given edge; 1 at leaf ends.
    Int decoration(size_t edge, size_t v) const;
    bool edge_is_internal(size_t edge) const;

    // Position of a leaf in the leaf order.
    size_t leaf_position(size_t v) const;

    // Tree path between two vertices, endpoints included.
    std::vector<size_t> path(size_t u, size_t v) const;

    // A default-constructed diagram is an empty placeholder; every populated
    // instance comes from build()/parse_diagram and satisfies the invariants.
    SpliceDiagram() = default;

private:
    friend struct DiagramAssembler;

    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<size_t> leaf_order_;
    std::optional<size_t> root_;
};

struct CheckResult {
    bool ok = true;
    std::vector<std::string> offenders;
};

struct EdgeDeterminantCheck {
    bool ok = true;
    // One entry per internal edge: ids, determinant value.
    struct Entry {
        std::string u, v;
        Int value;
        bool positive;
    };
    std::vector<Entry> entries;
};

// Aggregated per-check verdicts. determinant/semigroup are only populated when
// the structural checks pass (the quantities are undefined otherwise).
struct ValidationReport {
    CheckResult tree, valency, positivity, coprimality;
    std::optional<EdgeDeterminantCheck> determinant;
    bool semigroup_checked = false;
    bool semigroup_ok = false;
    bool structurally_valid() const
    {
        return tree.ok && valency.ok && positivity.ok && coprimality.ok;
    }
};

// --- parsing / serialization -------------------------------------------------

// Parses the JSON diagram document; throws ParseError (syntax, schema) or
// DomainError (structural invariant) with offending locations.
SpliceDiagram parse_diagram(const std::string& text);

// Lenient variant for validation reporting: schema errors still throw, but
// structural violations land in the report instead. The diagram is present
// exactly when the structural checks pass.
struct DiagramCheckOutcome {
    std::optional<SpliceDiagram> diagram;
    ValidationReport report;
};
DiagramCheckOutcome check_diagram_text(const std::string& text);

std::string emit_diagram(const SpliceDiagram& d);
std::string diagram_to_dot(const SpliceDiagram& d);

// --- invariants --------------------------------------------------------------

// Product of decorations adjacent to the path [u,v]; l_vv is the node degree,
// and 1 for a leaf.
Int linking_number(const SpliceDiagram& d, const std::string& u, const std::string& v);
Int linking_number_by_index(const SpliceDiagram& d, size_t u, size_t v);

// Same product, excluding decorations at the two endpoints.
Int reduced_linking_number(const SpliceDiagram& d, const std::string& u, const std::string& v);
Int reduced_linking_number_by_index(const SpliceDiagram& d, size_t u, size_t v);

Int node_degree(const SpliceDiagram& d, const std::string& v);
Int node_degree_by_index(const SpliceDiagram& d, size_t v);

// d_{u,e} d_{v,e} - l_uv for an internal edge e = [u,v].
Int edge_determinant(const SpliceDiagram& d, const std::string& u, const std::string& v);

EdgeDeterminantCheck check_determinant_condition(const SpliceDiagram& d);

// Decorations around a node with the 1s removed, sorted ascending.
IVec seifert_data(const SpliceDiagram& d, const std::string& v);

// --- surgeries ---------------------------------------------------------------

// Joins two diagrams by identifying the edges at two leaves into one internal
// edge. Leaf orders are concatenated (minus the two spliced leaves).
SpliceDiagram splice(const SpliceDiagram& d1, const std::string& leaf1,
                     const SpliceDiagram& d2, const std::string& leaf2);

// Cuts an internal edge [a,b]; each side keeps its subtree plus one fresh
// undecorated leaf (the root r_a resp. r_b).
struct SplitResult {
    SpliceDiagram side_a, side_b;
    std::string root_a, root_b;
};
SplitResult split_edge(const SpliceDiagram& d, const std::string& a, const std::string& b);

// --- isomorphism -------------------------------------------------------------

// Canonical encoding of the decorated tree with the leaf order forgotten.
std::string canonical_form(const SpliceDiagram& d);
bool isomorphic(const SpliceDiagram& d1, const SpliceDiagram& d2);

}  // namespace splice

#endif
