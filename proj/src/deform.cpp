#include "splice/deform.hpp"

#include <algorithm>

#include "splice/jsonio.hpp"
#include "splice/semigroup.hpp"

namespace splice {

TripleInterval triple_interval(const SpliceDiagram& d, const std::string& as,
                               const std::string& bs)
{
    size_t a = d.index_of(as), b = d.index_of(bs);
    size_t e = d.edge_between(a, b);
    if (!d.edge_is_internal(e))
        throw DomainError("edge [" + as + "," + bs + "] is not internal");
    Int deca = d.decoration(e, a), decb = d.decoration(e, b);
    TripleInterval iv;
    iv.lo = make_rat(node_degree_by_index(d, a), deca * deca);
    iv.hi = make_rat(decb * decb, node_degree_by_index(d, b));
    return iv;
}

Rat simplest_fraction_between(const Rat& lo, const Rat& hi)
{
    if (!(Rat(0) < lo && lo < hi))
        throw DomainError("simplest_fraction_between: need 0 < lo < hi");
    // Continued-fraction descent along the Stern-Brocot tree.
    Int fl = lo.get_num() / lo.get_den();  // floor, lo > 0
    if (Rat(fl + 1) < hi)
        return Rat(fl + 1);
    Rat lo_frac = lo - Rat(fl);
    Rat hi_frac = hi - Rat(fl);
    if (lo_frac == 0) {
        // lo itself is the excluded integer: the denominator-minimal choice
        // is fl + 1/q for the smallest q with 1/q < hi - fl.
        Int q = hi_frac.get_den() / hi_frac.get_num() + 1;
        return Rat(fl) + make_rat(Int(1), q);
    }
    // No integer inside: both bounds share the integer part fl.
    Rat inner = simplest_fraction_between(Rat(1) / hi_frac, Rat(1) / lo_frac);
    return Rat(fl) + Rat(1) / inner;
}

namespace {

std::string fresh_root_id(const SpliceDiagram& d)
{
    std::string id = "r";
    while (d.has_vertex(id))
        id += "'";
    return id;
}

SpliceDiagram subdivide(const SpliceDiagram& d, const std::string& as, const std::string& bs,
                        const Int& ka, const Int& kb, const std::string& root_id)
{
    size_t a = d.index_of(as), b = d.index_of(bs);
    size_t cut = d.edge_between(a, b);
    std::vector<std::pair<std::string, VertexKind>> decls;
    for (const auto& v : d.vertices())
        decls.emplace_back(v.id, v.kind);
    size_t root_index = decls.size();
    decls.emplace_back(root_id, VertexKind::Node);

    std::vector<SpliceDiagram::Edge> edges;
    for (size_t i = 0; i < d.edges().size(); ++i) {
        if (i == cut)
            continue;
        edges.push_back(d.edges()[i]);
    }
    SpliceDiagram::Edge ar;
    ar.u = a;
    ar.v = root_index;
    ar.dec_u = d.decoration(cut, a);
    ar.dec_v = ka;
    edges.push_back(std::move(ar));
    SpliceDiagram::Edge rb;
    rb.u = root_index;
    rb.v = b;
    rb.dec_u = kb;
    rb.dec_v = d.decoration(cut, b);
    edges.push_back(std::move(rb));

    std::vector<std::string> leaf_order;
    for (size_t v : d.leaf_order())
        leaf_order.push_back(d.vertices()[v].id);
    return SpliceDiagram::build(std::move(decls), std::move(edges), std::move(leaf_order),
                                root_id);
}

// Decoration at node u on the first edge of the path from u to the root.
Int toward_root_decoration(const SpliceDiagram& enriched, size_t u, size_t root)
{
    auto p = enriched.path(u, root);
    return enriched.decoration(enriched.edge_between(p[0], p[1]), u);
}

Int least_valid_d(const SpliceDiagram& enriched, size_t root)
{
    Int l = 1;
    for (size_t u : enriched.node_indices()) {
        if (u == root)
            continue;
        l = int_lcm(l, toward_root_decoration(enriched, u, root));
    }
    return l;
}

}  // namespace

AdaptedTriple adapted_triple(const SpliceDiagram& d, const std::string& as,
                             const std::string& bs, const TriplePolicy& policy)
{
    TripleInterval iv = triple_interval(d, as, bs);
    if (!(iv.lo < iv.hi))
        throw DomainError("the interval for (ka,kb) is empty: the edge determinant of [" + as +
                          "," + bs + "] is not positive");
    AdaptedTriple t;
    if (std::holds_alternative<MinDenominatorPolicy>(policy)) {
        Rat f = simplest_fraction_between(iv.lo, iv.hi);
        t.ka = f.get_num();
        t.kb = f.get_den();
    } else {
        const auto& ex = std::get<ExplicitPolicy>(policy);
        if (ex.ka <= 0 || ex.kb <= 0)
            throw DomainError("ka and kb must be positive");
        if (!coprime(ex.ka, ex.kb))
            throw DomainError("ka and kb must be coprime");
        Rat f = make_rat(ex.ka, ex.kb);
        if (!(iv.lo < f && f < iv.hi))
            throw DomainError("ka/kb = " + rat_to_string(f) + " lies outside the open interval (" +
                              rat_to_string(iv.lo) + ", " + rat_to_string(iv.hi) + ")");
        t.ka = ex.ka;
        t.kb = ex.kb;
    }
    std::string root_id = fresh_root_id(d);
    SpliceDiagram enriched = subdivide(d, as, bs, t.ka, t.kb, root_id);
    Int least = least_valid_d(enriched, enriched.index_of(root_id));
    if (const auto* ex = std::get_if<ExplicitPolicy>(&policy); ex && ex->D) {
        if (*ex->D <= 0 || *ex->D % least != 0)
            throw DomainError("D = " + ex->D->get_str() +
                              " is not divisible by every toward-root decoration (lcm " +
                              least.get_str() + ")");
        t.D = *ex->D;
    } else {
        t.D = least;
    }
    return t;
}

EnrichedDiagram enrich(const SpliceDiagram& d, const std::string& as, const std::string& bs,
                       const AdaptedTriple& triple)
{
    // Re-validate the triple against this diagram and edge.
    ExplicitPolicy pol{triple.ka, triple.kb, triple.D};
    adapted_triple(d, as, bs, pol);

    EnrichedDiagram ed;
    ed.base = d;
    ed.a = as;
    ed.b = bs;
    ed.root = fresh_root_id(d);
    ed.ka = triple.ka;
    ed.kb = triple.kb;
    ed.D = triple.D;
    ed.enriched = subdivide(d, as, bs, triple.ka, triple.kb, ed.root);
    // Lemma guarantee: the two new edges satisfy the determinant condition.
    if (!check_determinant_condition(ed.enriched).ok)
        throw DomainError("internal error: enrichment violates the determinant condition");
    return ed;
}

Int extended_weight_scalar(const EnrichedDiagram& ed, const std::string& us)
{
    size_t u = ed.enriched.index_of(us);
    size_t r = ed.enriched.index_of(ed.root);
    if (!ed.enriched.is_node(u))
        throw DomainError("'" + us + "' is not a node of the enrichment");
    Int lru = linking_number_by_index(ed.enriched, r, u);
    return exact_div(ed.D * lru, node_degree_by_index(ed.enriched, u));
}

IVec extended_weight_vector(const EnrichedDiagram& ed, const std::string& us)
{
    Int scalar = extended_weight_scalar(ed, us);
    IVec wu = node_weight_vector(ed.enriched, us);
    IVec out;
    out.reserve(wu.size() + 1);
    out.push_back(1);
    for (const Int& x : wu)
        out.push_back(scalar * x);
    return out;
}

std::vector<Polynomial> DeformedSystem::all_equations() const
{
    std::vector<Polynomial> out;
    for (const auto& n : nodes)
        out.insert(out.end(), n.equations.begin(), n.equations.end());
    return out;
}

DeformedSystem edge_deformation(const SpliceSystem& system, const EnrichedDiagram& ed,
                                const DeformCoefficients& coefficients)
{
    if (emit_diagram(system.diagram) != emit_diagram(ed.base))
        throw DomainError("the system was not built on the enrichment's base diagram");
    DeformedSystem ds;
    ds.enrichment = ed;
    ds.strict = system;
    ds.nvars = system.nvars + 1;
    size_t r = ed.enriched.index_of(ed.root);
    for (const auto& block : system.nodes) {
        DeformedNode dn;
        dn.node = block.node;
        size_t v = ed.enriched.index_of(block.node);
        dn.z0_exponent = ed.D * linking_number_by_index(ed.enriched, r, v);
        QVec coeffs(block.equations.size(), Rat(1));
        if (auto it = coefficients.find(block.node); it != coefficients.end()) {
            if (it->second.size() != block.equations.size())
                throw DomainError("deformation coefficient count mismatch at node '" +
                                  block.node + "'");
            coeffs = it->second;
        }
        for (size_t i = 0; i < block.equations.size(); ++i) {
            if (coeffs[i] == 0)
                throw DomainError("deformation coefficients must be non-zero");
            Polynomial f = block.equations[i].prepend_var();
            Exponents z0(ds.nvars, 0);
            z0[0] = dn.z0_exponent;
            f.add_term(z0, -coeffs[i]);
            dn.equations.push_back(std::move(f));
        }
        dn.coefficients = std::move(coeffs);
        ds.nodes.push_back(std::move(dn));
    }
    return ds;
}

SideSplit side_systems(const DeformedSystem& ds)
{
    const SpliceDiagram& d = ds.enrichment.base;
    size_t a = d.index_of(ds.enrichment.a);
    size_t b = d.index_of(ds.enrichment.b);
    size_t cut = d.edge_between(a, b);
    // Vertices on the a-side of the cut edge.
    std::vector<char> a_side(d.vertices().size(), 0);
    std::vector<size_t> queue{a};
    a_side[a] = 1;
    for (size_t q = 0; q < queue.size(); ++q)
        for (size_t e : d.vertices()[queue[q]].edges) {
            if (e == cut)
                continue;
            size_t y = d.other_end(e, queue[q]);
            if (!a_side[y]) {
                a_side[y] = 1;
                queue.push_back(y);
            }
        }
    SideSplit out;
    for (const auto& dn : ds.nodes) {
        bool on_a = a_side[d.index_of(dn.node)] != 0;
        auto& nodes = on_a ? out.a_nodes : out.b_nodes;
        auto& eqs = on_a ? out.a_equations : out.b_equations;
        nodes.push_back(dn.node);
        eqs.insert(eqs.end(), dn.equations.begin(), dn.equations.end());
    }
    return out;
}

std::vector<Polynomial> equations_at_z0_zero(const DeformedSystem& ds)
{
    std::vector<Polynomial> out;
    for (const auto& dn : ds.nodes)
        for (const auto& f : dn.equations)
            out.push_back(f.set_var_zero(0));
    return out;
}

// --- serialization -------------------------------------------------------------

namespace {

ordered_json polynomial_terms_json(const Polynomial& f)
{
    ordered_json terms = ordered_json::array();
    for (const auto& [e, c] : f.terms()) {
        ordered_json t;
        t["exp"] = ordered_json::array();
        for (const Int& x : e)
            t["exp"].push_back(int_to_json(x));
        t["num"] = c.get_num().get_str();
        t["den"] = c.get_den().get_str();
        terms.push_back(std::move(t));
    }
    return terms;
}

}  // namespace

std::string emit_deformed_system(const DeformedSystem& ds)
{
    ordered_json doc;
    doc["diagram"] = ordered_json::parse(emit_diagram(ds.enrichment.base));
    ordered_json je;
    je["edge"] = ordered_json::array({ds.enrichment.a, ds.enrichment.b});
    je["root"] = ds.enrichment.root;
    je["ka"] = int_to_json(ds.enrichment.ka);
    je["kb"] = int_to_json(ds.enrichment.kb);
    je["D"] = int_to_json(ds.enrichment.D);
    doc["enrichment"] = std::move(je);
    doc["variables"] = ordered_json::array();
    doc["variables"].push_back("z0");
    for (size_t v : ds.enrichment.base.leaf_order())
        doc["variables"].push_back(ds.enrichment.base.vertices()[v].id);

    ordered_json strict = ordered_json::parse(emit_system(ds.strict));
    doc["nodes"] = ordered_json::array();
    for (size_t i = 0; i < ds.nodes.size(); ++i) {
        ordered_json jn = strict.at("nodes").at(i);
        jn["z0_exponent"] = int_to_json(ds.nodes[i].z0_exponent);
        ordered_json jc = ordered_json::array();
        for (const Rat& c : ds.nodes[i].coefficients)
            jc.push_back(rat_to_string(c));
        jn["deform_coeffs"] = std::move(jc);
        jn["equations"] = ordered_json::array();
        for (const auto& f : ds.nodes[i].equations)
            jn["equations"].push_back(polynomial_terms_json(f));
        doc["nodes"].push_back(std::move(jn));
    }
    return doc.dump();
}

DeformedSystem parse_deformed_system(const std::string& text)
{
    ordered_json doc = parse_json_document(text);
    if (!doc.is_object() || !doc.contains("diagram") || !doc.contains("enrichment"))
        throw ParseError("deformed system document needs 'diagram' and 'enrichment'");
    SpliceDiagram base = parse_diagram(doc.at("diagram").dump());
    const auto& je = doc.at("enrichment");
    std::string a = je.at("edge").at(0).get<std::string>();
    std::string b = je.at("edge").at(1).get<std::string>();
    AdaptedTriple triple{json_to_int(je.at("ka"), "ka"), json_to_int(je.at("kb"), "kb"),
                         json_to_int(je.at("D"), "D")};
    EnrichedDiagram ed = enrich(base, a, b, triple);

    // The strict part is recovered by dropping the deformation fields.
    ordered_json strict_doc;
    strict_doc["diagram"] = doc.at("diagram");
    strict_doc["nodes"] = ordered_json::array();
    DeformCoefficients coeffs;
    for (const auto& jn : doc.at("nodes")) {
        ordered_json sn;
        for (const auto& key : {"node", "edges", "exponents", "matrix"})
            if (jn.contains(key))
                sn[key] = jn.at(key);
        sn["equations"] = ordered_json::array();
        size_t nvars = base.leaf_count() + 1;
        std::vector<Polynomial> eqs;
        for (const auto& jeq : jn.at("equations")) {
            Polynomial f(nvars);
            for (const auto& t : jeq) {
                Exponents e;
                for (const auto& x : t.at("exp"))
                    e.push_back(json_to_int(x, "exp"));
                if (e.size() != nvars)
                    throw ParseError("deformed term arity must be n+1");
                f.add_term(e, json_to_rat(t, "term"));
            }
            eqs.push_back(std::move(f));
        }
        QVec cs;
        if (jn.contains("deform_coeffs"))
            for (const auto& c : jn.at("deform_coeffs"))
                cs.push_back(json_to_rat(c, "deform_coeffs"));
        // Strict equations: set z0 = 0.
        for (const auto& f : eqs)
            sn["equations"].push_back(polynomial_terms_json(f.set_var_zero(0)));
        if (!cs.empty())
            coeffs[jn.at("node").get<std::string>()] = cs;
        strict_doc["nodes"].push_back(std::move(sn));
    }
    SpliceSystem strict = parse_system(strict_doc.dump());
    return edge_deformation(strict, ed, coeffs);
}

}  // namespace splice
