#include "splice/polysys.hpp"

#include <algorithm>
#include <sstream>

#include "splice/jsonio.hpp"
#include "splice/semigroup.hpp"

namespace splice {

void Polynomial::add_term(const Exponents& exp, const Rat& coeff)
{
    if (exp.size() != nvars_)
        throw DomainError("polynomial term arity mismatch");
    for (const Int& e : exp)
        if (e < 0)
            throw DomainError("negative exponent");
    if (coeff == 0)
        return;
    auto it = terms_.find(exp);
    if (it == terms_.end()) {
        terms_.emplace(exp, coeff);
        return;
    }
    it->second += coeff;
    if (it->second == 0)
        terms_.erase(it);
}

Polynomial Polynomial::operator+(const Polynomial& o) const
{
    if (nvars_ != o.nvars_)
        throw DomainError("polynomial arity mismatch");
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_)
        r.add_term(e, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const
{
    if (nvars_ != o.nvars_)
        throw DomainError("polynomial arity mismatch");
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_)
        r.add_term(e, -c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const
{
    if (nvars_ != o.nvars_)
        throw DomainError("polynomial arity mismatch");
    Polynomial r(nvars_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            Exponents e(nvars_);
            for (size_t i = 0; i < nvars_; ++i)
                e[i] = e1[i] + e2[i];
            r.add_term(e, c1 * c2);
        }
    return r;
}

Polynomial Polynomial::set_var_zero(size_t var) const
{
    if (var >= nvars_)
        throw DomainError("variable index out of range");
    Polynomial r(nvars_ - 1);
    for (const auto& [e, c] : terms_) {
        if (e[var] != 0)
            continue;
        Exponents proj;
        proj.reserve(nvars_ - 1);
        for (size_t i = 0; i < nvars_; ++i)
            if (i != var)
                proj.push_back(e[i]);
        r.add_term(proj, c);
    }
    return r;
}

Polynomial Polynomial::prepend_var() const
{
    Polynomial r(nvars_ + 1);
    for (const auto& [e, c] : terms_) {
        Exponents ext;
        ext.reserve(nvars_ + 1);
        ext.push_back(0);
        ext.insert(ext.end(), e.begin(), e.end());
        r.add_term(ext, c);
    }
    return r;
}

Polynomial Polynomial::monomial(size_t nvars, const Exponents& exp, const Rat& coeff)
{
    Polynomial p(nvars);
    p.add_term(exp, coeff);
    return p;
}

IVec node_weight_vector_by_index(const SpliceDiagram& d, size_t v)
{
    if (!d.is_node(v))
        throw DomainError("'" + d.vertices()[v].id + "' is not a node");
    IVec w;
    w.reserve(d.leaf_count());
    for (size_t leaf : d.leaf_order())
        w.push_back(linking_number_by_index(d, v, leaf));
    return w;
}

IVec node_weight_vector(const SpliceDiagram& d, const std::string& v)
{
    return node_weight_vector_by_index(d, d.index_of(v));
}

HammVerdict hamm_check(const QMatrix& rows)
{
    HammVerdict verdict;
    const size_t k = rows.size();
    if (k == 0)
        return verdict;
    const size_t m = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != m)
            throw DomainError("hamm_check: ragged matrix");
    if (k > m)
        throw DomainError("hamm_check: more rows than columns");

    std::vector<size_t> cols(k);
    for (size_t i = 0; i < k; ++i)
        cols[i] = i;
    while (true) {
        QMatrix minor(k, QVec(k));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j)
                minor[i][j] = rows[i][cols[j]];
        if (rational_det(minor) == 0) {
            verdict.ok = false;
            verdict.failing_columns = cols;
            return verdict;
        }
        // next k-combination of {0..m-1}
        size_t i = k;
        while (i-- > 0) {
            if (cols[i] != i + m - k) {
                ++cols[i];
                for (size_t j = i + 1; j < k; ++j)
                    cols[j] = cols[j - 1] + 1;
                break;
            }
            if (i == 0)
                return verdict;  // all combinations checked
        }
    }
}

namespace {

// Admissible exponent vector for (v,e): the lexicographically minimal solution
// of d_{v,e} = sum a_lambda l'_{v,lambda} over the leaves beyond e, placed in
// leaf order. For a leaf edge this is the pure power d_{v,e} at that leaf.
Exponents admissible_exponent(const SpliceDiagram& d, size_t v, size_t e)
{
    auto leaves = leaves_beyond(d, v, e);
    IVec gens;
    gens.reserve(leaves.size());
    for (size_t leaf : leaves)
        gens.push_back(reduced_linking_number_by_index(d, v, leaf));
    auto coeffs = membership(d.decoration(e, v), gens);
    if (!coeffs)
        throw DomainError("semigroup condition fails at node '" + d.vertices()[v].id +
                          "' toward '" + d.vertices()[d.other_end(e, v)].id + "'");
    Exponents exp(d.leaf_count(), 0);
    for (size_t i = 0; i < leaves.size(); ++i)
        exp[d.leaf_position(leaves[i])] = (*coeffs)[i];
    return exp;
}

QMatrix vandermonde_matrix(size_t valency, unsigned long offset)
{
    QMatrix m(valency, QVec(valency - 2));
    for (size_t e = 0; e < valency; ++e) {
        Rat t(static_cast<unsigned long>(offset + e + 1));
        Rat p = 1;
        for (size_t i = 0; i + 2 < valency; ++i) {
            m[e][i] = p;
            p *= t;
        }
    }
    return m;
}

QMatrix transpose(const QMatrix& m)
{
    if (m.empty())
        return {};
    QMatrix t(m[0].size(), QVec(m.size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j)
            t[j][i] = m[i][j];
    return t;
}

}  // namespace

std::vector<Polynomial> SpliceSystem::all_equations() const
{
    std::vector<Polynomial> out;
    for (const auto& n : nodes)
        out.insert(out.end(), n.equations.begin(), n.equations.end());
    return out;
}

bool SpliceSystem::operator==(const SpliceSystem& o) const
{
    if (nvars != o.nvars || nodes.size() != o.nodes.size())
        return false;
    if (emit_diagram(diagram) != emit_diagram(o.diagram))
        return false;
    for (size_t i = 0; i < nodes.size(); ++i) {
        const auto& a = nodes[i];
        const auto& b = o.nodes[i];
        if (a.node != b.node || a.edge_toward != b.edge_toward ||
            a.admissible != b.admissible || a.matrix != b.matrix ||
            a.equations != b.equations)
            return false;
    }
    return true;
}

SpliceSystem strict_splice_system(const SpliceDiagram& d, const CoefficientSource& source)
{
    if (d.enriched_mode())
        throw DomainError("strict splice systems are built on the base diagram, not the enrichment");
    ValidationReport report = full_validation(d);
    if (report.determinant && !report.determinant->ok)
        throw DomainError("edge determinant condition fails");
    if (!report.semigroup_ok)
        throw DomainError("semigroup condition fails");

    SpliceSystem sys;
    sys.diagram = d;
    sys.nvars = d.leaf_count();
    size_t total_equations = 0;
    for (size_t v : d.node_indices()) {
        const size_t valency = d.vertices()[v].edges.size();
        SystemNode block;
        block.node = d.vertices()[v].id;
        auto order = canonical_edge_order(d, v);
        for (size_t e : order) {
            block.edge_toward.push_back(d.vertices()[d.other_end(e, v)].id);
            block.admissible.push_back(admissible_exponent(d, v, e));
        }
        if (const auto* vand = std::get_if<VandermondeCoefficients>(&source)) {
            block.matrix = vandermonde_matrix(valency, vand->offset);
        } else {
            const auto& by_node = std::get<ExplicitCoefficients>(source);
            auto it = by_node.find(block.node);
            if (it == by_node.end())
                throw DomainError("no coefficient matrix supplied for node '" + block.node + "'");
            block.matrix = it->second;
            if (block.matrix.size() != valency)
                throw DomainError("coefficient matrix for node '" + block.node + "' must have " +
                                  std::to_string(valency) + " rows (one per edge)");
            for (const auto& row : block.matrix)
                if (row.size() != valency - 2)
                    throw DomainError("coefficient matrix for node '" + block.node + "' must have " +
                                      std::to_string(valency - 2) + " columns");
        }
        HammVerdict hamm = hamm_check(transpose(block.matrix));
        if (!hamm.ok)
            throw DomainError("coefficient matrix for node '" + block.node +
                              "' fails the Hamm determinant condition");
        for (size_t i = 0; i + 2 < valency; ++i) {
            Polynomial f(sys.nvars);
            for (size_t e = 0; e < valency; ++e)
                f.add_term(block.admissible[e], block.matrix[e][i]);
            block.equations.push_back(std::move(f));
        }
        total_equations += valency - 2;
        sys.nodes.push_back(std::move(block));
    }
    if (d.leaf_count() >= 2 && total_equations != d.leaf_count() - 2)
        throw DomainError("internal error: equation count is not n-2");
    return sys;
}

SpliceSystem bph_system(const IVec& degrees, const QMatrix& equations_matrix)
{
    const size_t n = degrees.size();
    if (n < 3)
        throw DomainError("a Pham-Brieskorn-Hamm system needs at least 3 variables");
    if (equations_matrix.size() != n - 2)
        throw DomainError("coefficient matrix must have n-2 rows");
    for (const auto& row : equations_matrix)
        if (row.size() != n)
            throw DomainError("coefficient matrix must have n columns");

    // The star diagram with decorations p_i; leaves are z1..zn.
    std::vector<std::pair<std::string, VertexKind>> decls;
    decls.emplace_back("v", VertexKind::Node);
    std::vector<SpliceDiagram::Edge> edges;
    std::vector<std::string> order;
    for (size_t i = 0; i < n; ++i) {
        std::string id = "z" + std::to_string(i + 1);
        decls.emplace_back(id, VertexKind::Leaf);
        SpliceDiagram::Edge e;
        e.u = 0;
        e.v = i + 1;
        e.dec_u = degrees[i];
        edges.push_back(std::move(e));
        order.push_back(id);
    }
    SpliceDiagram star = SpliceDiagram::build(std::move(decls), std::move(edges), std::move(order));
    ExplicitCoefficients coeffs;
    coeffs["v"] = transpose(equations_matrix);
    return strict_splice_system(star, coeffs);
}

std::optional<Rat> min_weight(const Polynomial& f, const QVec& w)
{
    std::optional<Rat> best;
    for (const auto& [e, c] : f.terms()) {
        Rat val = dot(w, e);
        if (!best || val < *best)
            best = val;
    }
    return best;
}

Polynomial initial_form(const Polynomial& f, const QVec& w)
{
    if (w.size() != f.nvars())
        throw DomainError("initial_form: dimension mismatch");
    Polynomial out(f.nvars());
    auto best = min_weight(f, w);
    if (!best)
        return out;
    for (const auto& [e, c] : f.terms())
        if (dot(w, e) == *best)
            out.add_term(e, c);
    return out;
}

std::optional<Int> homogeneous_degree(const Polynomial& f, const IVec& w)
{
    if (w.size() != f.nvars())
        throw DomainError("homogeneous_degree: dimension mismatch");
    std::optional<Int> deg;
    for (const auto& [e, c] : f.terms()) {
        Int val = dot(w, e);
        if (!deg)
            deg = val;
        else if (*deg != val)
            return std::nullopt;
    }
    return deg;
}

bool validate_higher_order(const Polynomial& g, const SpliceDiagram& d, const std::string& v)
{
    IVec w = node_weight_vector(d, v);
    if (g.nvars() != w.size())
        throw DomainError("validate_higher_order: dimension mismatch");
    Int dv = node_degree(d, v);
    for (const auto& [e, c] : g.terms())
        if (dot(w, e) <= dv)  // equality counts as failure: the bound is strict
            return false;
    return true;
}

InitialSystem initial_system(const std::vector<Polynomial>& generators, const QVec& w)
{
    InitialSystem out;
    out.generators_monomial_free = true;
    for (const auto& f : generators) {
        Polynomial form = initial_form(f, w);
        if (form.term_count() < 2)
            out.generators_monomial_free = false;
        out.forms.push_back(std::move(form));
    }
    return out;
}

// --- serialization -------------------------------------------------------------

namespace {

ordered_json polynomial_to_json(const Polynomial& f)
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

Polynomial polynomial_from_json(const ordered_json& j, size_t nvars)
{
    Polynomial f(nvars);
    if (!j.is_array())
        throw ParseError("equation must be an array of terms");
    for (const auto& t : j) {
        if (!t.is_object() || !t.contains("exp"))
            throw ParseError("term must be an object with exp/num/den");
        Exponents e;
        for (const auto& x : t.at("exp"))
            e.push_back(json_to_int(x, "exp"));
        if (e.size() != nvars)
            throw ParseError("term arity does not match the variable list");
        f.add_term(e, json_to_rat(t, "term"));
    }
    return f;
}

}  // namespace

std::string emit_system(const SpliceSystem& s)
{
    ordered_json doc;
    doc["diagram"] = ordered_json::parse(emit_diagram(s.diagram));
    doc["variables"] = ordered_json::array();
    for (size_t v : s.diagram.leaf_order())
        doc["variables"].push_back(s.diagram.vertices()[v].id);
    doc["nodes"] = ordered_json::array();
    for (const auto& block : s.nodes) {
        ordered_json jn;
        jn["node"] = block.node;
        jn["edges"] = block.edge_toward;
        jn["exponents"] = ordered_json::array();
        for (const auto& e : block.admissible) {
            ordered_json je = ordered_json::array();
            for (const Int& x : e)
                je.push_back(int_to_json(x));
            jn["exponents"].push_back(std::move(je));
        }
        jn["matrix"] = ordered_json::array();
        for (const auto& row : block.matrix) {
            ordered_json jr = ordered_json::array();
            for (const Rat& q : row)
                jr.push_back(rat_to_string(q));
            jn["matrix"].push_back(std::move(jr));
        }
        jn["equations"] = ordered_json::array();
        for (const auto& f : block.equations)
            jn["equations"].push_back(polynomial_to_json(f));
        doc["nodes"].push_back(std::move(jn));
    }
    return doc.dump();
}

SpliceSystem parse_system(const std::string& text)
{
    ordered_json doc = parse_json_document(text);
    if (!doc.is_object() || !doc.contains("diagram") || !doc.contains("nodes"))
        throw ParseError("system document needs 'diagram' and 'nodes'");
    SpliceSystem s;
    s.diagram = parse_diagram(doc.at("diagram").dump());
    s.nvars = s.diagram.leaf_count();
    if (doc.contains("variables") && doc.at("variables").size() != s.nvars)
        throw ParseError("variable list does not match the diagram's leaves");
    for (const auto& jn : doc.at("nodes")) {
        SystemNode block;
        block.node = jn.at("node").get<std::string>();
        size_t v = s.diagram.index_of(block.node);
        if (!s.diagram.is_node(v))
            throw ParseError("'" + block.node + "' is not a node of the diagram");
        const size_t valency = s.diagram.vertices()[v].edges.size();
        if (jn.contains("edges"))
            for (const auto& t : jn.at("edges"))
                block.edge_toward.push_back(t.get<std::string>());
        if (jn.contains("exponents"))
            for (const auto& je : jn.at("exponents")) {
                Exponents e;
                for (const auto& x : je)
                    e.push_back(json_to_int(x, "exponents"));
                block.admissible.push_back(std::move(e));
            }
        if (jn.contains("matrix"))
            for (const auto& jr : jn.at("matrix")) {
                QVec row;
                for (const auto& q : jr)
                    row.push_back(json_to_rat(q, "matrix"));
                block.matrix.push_back(std::move(row));
            }
        if (!jn.contains("equations"))
            throw ParseError("node '" + block.node + "' has no equations");
        for (const auto& je : jn.at("equations"))
            block.equations.push_back(polynomial_from_json(je, s.nvars));
        if (block.equations.size() != valency - 2)
            throw ParseError("node '" + block.node + "' must carry valency-2 equations");
        s.nodes.push_back(std::move(block));
    }
    return s;
}

}  // namespace splice
