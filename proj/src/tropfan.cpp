#include "splice/tropfan.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "splice/jsonio.hpp"
#include "splice/polysys.hpp"
#include "splice/semigroup.hpp"

namespace splice {

bool cone_contains(const Cone& c, const QVec& x)
{
    if (x.size() != c.dim)
        throw DomainError("cone_contains: dimension mismatch");
    if (c.generators.empty()) {
        for (const Rat& q : x)
            if (q != 0)
                return false;
        return true;
    }
    QMatrix a(c.dim, QVec(c.generators.size()));
    for (size_t j = 0; j < c.generators.size(); ++j) {
        if (c.generators[j].size() != c.dim)
            throw DomainError("cone generator has wrong dimension");
        for (size_t i = 0; i < c.dim; ++i)
            a[i][j] = Rat(c.generators[j][i]);
    }
    return nonneg_solve(a, x).has_value();
}

bool cone_contains(const Cone& c, const IVec& x) { return cone_contains(c, to_qvec(x)); }

size_t cone_rank(const Cone& c)
{
    QMatrix rows;
    for (const auto& g : c.generators)
        rows.push_back(to_qvec(g));
    return matrix_rank(std::move(rows));
}

Cone Fan::cone_at(size_t index) const
{
    if (index >= cones.size())
        throw DomainError("cone index out of range");
    Cone c;
    c.dim = dim;
    for (size_t r : cones[index])
        c.generators.push_back(rays[r]);
    return c;
}

bool fan_supports(const Fan& f, const QVec& x)
{
    // Maximal cones suffice, but the lists here are tiny.
    for (size_t i = 0; i < f.cones.size(); ++i)
        if (cone_contains(f.cone_at(i), x))
            return true;
    return false;
}

namespace {

void push_unique_cone(std::vector<std::vector<size_t>>& cones, std::vector<size_t> c)
{
    std::sort(c.begin(), c.end());
    if (std::find(cones.begin(), cones.end(), c) == cones.end())
        cones.push_back(std::move(c));
}

}  // namespace

Fan surface_trop_fan(const SpliceDiagram& d)
{
    ValidationReport report = full_validation(d);
    if (report.determinant && !report.determinant->ok)
        throw DomainError("edge determinant condition fails");
    if (!report.semigroup_ok)
        throw DomainError("semigroup condition fails");

    Fan f;
    f.dim = d.leaf_count();
    std::map<size_t, size_t> ray_of_vertex;
    for (size_t i = 0; i < d.leaf_count(); ++i) {
        IVec e(f.dim, 0);
        e[i] = 1;
        ray_of_vertex[d.leaf_order()[i]] = f.rays.size();
        f.rays.push_back(std::move(e));
    }
    for (size_t v : d.node_indices()) {
        ray_of_vertex[v] = f.rays.size();
        f.rays.push_back(primitivized(node_weight_vector_by_index(d, v)));
    }

    f.cones.push_back({});  // the zero cone
    for (size_t r = 0; r < f.rays.size(); ++r)
        f.cones.push_back({r});
    for (const auto& e : d.edges())
        push_unique_cone(f.cones, {ray_of_vertex.at(e.u), ray_of_vertex.at(e.v)});
    return f;
}

std::vector<IVec> deformation_trop_rays(const EnrichedDiagram& ed)
{
    const SpliceDiagram& g = ed.enriched;
    std::vector<IVec> rays;
    IVec e0(g.leaf_count() + 1, 0);
    e0[0] = 1;
    rays.push_back(std::move(e0));
    for (size_t i = 0; i < g.leaf_count(); ++i) {
        IVec e(g.leaf_count() + 1, 0);
        e[i + 1] = 1;
        rays.push_back(std::move(e));
    }
    for (size_t v : g.node_indices())
        rays.push_back(primitivized(extended_weight_vector(ed, g.vertices()[v].id)));
    return rays;
}

Fan deformation_trop_fan(const EnrichedDiagram& ed)
{
    const SpliceDiagram& g = ed.enriched;
    Fan f;
    f.dim = g.leaf_count() + 1;
    f.partial = true;
    f.rays = deformation_trop_rays(ed);

    std::map<size_t, size_t> ray_of_vertex;  // enriched vertex -> ray index
    for (size_t i = 0; i < g.leaf_count(); ++i)
        ray_of_vertex[g.leaf_order()[i]] = 1 + i;
    {
        size_t next = 1 + g.leaf_count();
        for (size_t v : g.node_indices())
            ray_of_vertex[v] = next++;
    }

    f.cones.push_back({});
    for (size_t r = 0; r < f.rays.size(); ++r)
        f.cones.push_back({r});
    // Tree-adjacency cones of the enrichment.
    for (const auto& e : g.edges())
        push_unique_cone(f.cones, {ray_of_vertex.at(e.u), ray_of_vertex.at(e.v)});
    // e_0 faces of the central cone.
    size_t ray_a = ray_of_vertex.at(g.index_of(ed.a));
    size_t ray_b = ray_of_vertex.at(g.index_of(ed.b));
    size_t ray_r = ray_of_vertex.at(g.index_of(ed.root));
    push_unique_cone(f.cones, {0, ray_a});
    push_unique_cone(f.cones, {0, ray_b});
    // The unique non-simplicial top-dimensional cone.
    push_unique_cone(f.cones, {0, ray_a, ray_b, ray_r});
    return f;
}

ConeStructureReport analyze_cone(size_t dim, std::vector<IVec> generators)
{
    ConeStructureReport rep;
    rep.cone.dim = dim;
    for (auto& gvec : generators) {
        IVec p = primitivized(std::move(gvec));
        if (std::find(rep.cone.generators.begin(), rep.cone.generators.end(), p) !=
            rep.cone.generators.end()) {
            rep.duplicates_removed = true;
            continue;
        }
        rep.cone.generators.push_back(std::move(p));
    }
    rep.rank = cone_rank(rep.cone);
    size_t extreme_count = 0;
    for (size_t i = 0; i < rep.cone.generators.size(); ++i) {
        Cone others;
        others.dim = dim;
        for (size_t j = 0; j < rep.cone.generators.size(); ++j)
            if (j != i)
                others.generators.push_back(rep.cone.generators[j]);
        bool ext = !cone_contains(others, rep.cone.generators[i]);
        rep.extreme.push_back(ext ? 1 : 0);
        if (ext)
            ++extreme_count;
    }
    rep.non_simplicial = extreme_count > rep.rank;
    return rep;
}

ConeStructureReport central_cone(const EnrichedDiagram& ed)
{
    size_t dim = ed.enriched.leaf_count() + 1;
    IVec e0(dim, 0);
    e0[0] = 1;
    std::vector<IVec> gens;
    gens.push_back(std::move(e0));
    gens.push_back(extended_weight_vector(ed, ed.a));
    gens.push_back(extended_weight_vector(ed, ed.b));
    gens.push_back(extended_weight_vector(ed, ed.root));
    return analyze_cone(dim, std::move(gens));
}

DualComplex dual_complex(const EnrichedDiagram& ed)
{
    const SpliceDiagram& g = ed.enriched;
    DualComplex out;
    std::map<size_t, size_t> pos;
    for (size_t v : g.node_indices()) {
        pos[v] = out.vertices.size();
        out.vertices.push_back(g.vertices()[v].id);
    }
    for (size_t e = 0; e < g.edges().size(); ++e)
        if (g.edge_is_internal(e)) {
            const auto& ed_ = g.edges()[e];
            out.edges.emplace_back(pos.at(ed_.u), pos.at(ed_.v));
        }
    return out;
}

std::string dual_complex_to_dot(const DualComplex& g)
{
    std::ostringstream os;
    os << "graph dual_complex {\n";
    for (const auto& v : g.vertices)
        os << "  \"" << v << "\";\n";
    for (const auto& [u, v] : g.edges)
        os << "  \"" << g.vertices[u] << "\" -- \"" << g.vertices[v] << "\";\n";
    os << "}\n";
    return os.str();
}

Fan stellar_subdivide(const Fan& f, const IVec& ray_in)
{
    IVec ray = primitivized(ray_in);
    QVec qray = to_qvec(ray);
    if (!fan_supports(f, qray))
        throw DomainError("stellar subdivision: the ray lies outside the fan support");

    Fan out;
    out.dim = f.dim;
    out.partial = f.partial;
    out.rays = f.rays;
    size_t rho = SIZE_MAX;
    for (size_t i = 0; i < out.rays.size(); ++i)
        if (out.rays[i] == ray)
            rho = i;
    if (rho == SIZE_MAX) {
        rho = out.rays.size();
        out.rays.push_back(ray);
    }

    for (const auto& cone_rays : f.cones) {
        Cone sigma;
        sigma.dim = f.dim;
        for (size_t r : cone_rays)
            sigma.generators.push_back(f.rays[r]);
        if (!cone_contains(sigma, qray)) {
            push_unique_cone(out.cones, cone_rays);
            continue;
        }
        // The ray meets this cone: replace by joins with faces avoiding it.
        if (cone_rank(sigma) != sigma.generators.size())
            throw DomainError("stellar subdivision of a non-simplicial cone is not supported");
        const size_t k = cone_rays.size();
        for (size_t mask = 0; mask < (size_t(1) << k); ++mask) {
            Cone face;
            face.dim = f.dim;
            std::vector<size_t> face_rays;
            for (size_t i = 0; i < k; ++i)
                if (mask & (size_t(1) << i)) {
                    face.generators.push_back(f.rays[cone_rays[i]]);
                    face_rays.push_back(cone_rays[i]);
                }
            if (cone_contains(face, qray))
                continue;
            face_rays.push_back(rho);
            push_unique_cone(out.cones, std::move(face_rays));
        }
    }
    return out;
}

bool fan_cones_compatible(const Fan& f, std::string* why)
{
    auto describe = [&](size_t i, size_t j) {
        if (!why)
            return;
        std::ostringstream os;
        os << "cones #" << i << " and #" << j << " do not meet in a common face";
        *why = os.str();
    };
    for (size_t i = 0; i < f.cones.size(); ++i) {
        for (size_t j = i + 1; j < f.cones.size(); ++j) {
            std::set<size_t> si(f.cones[i].begin(), f.cones[i].end());
            std::set<size_t> sj(f.cones[j].begin(), f.cones[j].end());
            std::vector<size_t> shared;
            std::set_intersection(si.begin(), si.end(), sj.begin(), sj.end(),
                                  std::back_inserter(shared));
            // Find l with l.g = 0 on shared rays, l.g >= 1 on the rest of
            // cone i and l.g <= -1 on the rest of cone j. Such a functional
            // certifies that the cones meet exactly in the shared face.
            std::vector<LinConstraint> cons;
            for (size_t r : shared)
                cons.push_back({to_qvec(f.rays[r]), 0, Rat(0)});
            for (size_t r : si)
                if (!std::count(shared.begin(), shared.end(), r))
                    cons.push_back({to_qvec(f.rays[r]), 1, Rat(1)});
            for (size_t r : sj)
                if (!std::count(shared.begin(), shared.end(), r))
                    cons.push_back({to_qvec(f.rays[r]), -1, Rat(-1)});
            if (!feasible_point(cons, f.dim)) {
                describe(i, j);
                return false;
            }
        }
    }
    return true;
}

FiberGroup rounding_fiber_group(const MonoidPresentation& p)
{
    for (const auto& row : p.relations)
        if (row.size() != p.generators)
            throw DomainError("relation arity does not match the generator count");
    FiberGroup out;
    if (p.relations.empty()) {
        out.rank = p.generators;
        return out;
    }
    SmithResult snf = smith_normal_form(p.relations);
    // Verify U A V = D and unimodularity on every call; the sizes here are
    // small and the factorization is the whole point of the computation.
    if (multiply(multiply(snf.u, p.relations), snf.v) != snf.d)
        throw DomainError("Smith verification failed: U*A*V != D");
    if (!is_unimodular(snf.u) || !is_unimodular(snf.v))
        throw DomainError("Smith verification failed: transform not unimodular");
    for (size_t i = 0; i + 1 < snf.invariant_factors.size(); ++i)
        if (snf.invariant_factors[i + 1] % snf.invariant_factors[i] != 0)
            throw DomainError("Smith verification failed: divisibility chain broken");

    out.rank = p.generators - snf.invariant_factors.size();
    for (const Int& d : snf.invariant_factors)
        if (d > 1) {
            out.torsion.push_back(d);
            out.components *= d;
        }
    return out;
}

size_t orbit_fiber_dimension(const Fan& f, size_t cone_index)
{
    return cone_rank(f.cone_at(cone_index));
}

std::string emit_fan(const Fan& f)
{
    ordered_json doc;
    doc["dim"] = f.dim;
    doc["rays"] = ordered_json::array();
    for (const auto& r : f.rays) {
        ordered_json jr = ordered_json::array();
        for (const Int& x : r)
            jr.push_back(int_to_json(x));
        doc["rays"].push_back(std::move(jr));
    }
    doc["cones"] = ordered_json::array();
    for (const auto& c : f.cones)
        doc["cones"].push_back(c);
    doc["partial"] = f.partial;
    return doc.dump();
}

Fan parse_fan(const std::string& text)
{
    ordered_json doc = parse_json_document(text);
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("rays") ||
        !doc.contains("cones"))
        throw ParseError("fan document needs dim, rays, cones");
    Fan f;
    f.dim = doc.at("dim").get<size_t>();
    for (const auto& jr : doc.at("rays")) {
        IVec r;
        for (const auto& x : jr)
            r.push_back(json_to_int(x, "ray"));
        if (r.size() != f.dim)
            throw ParseError("ray dimension mismatch");
        f.rays.push_back(std::move(r));
    }
    for (const auto& jc : doc.at("cones")) {
        std::vector<size_t> c;
        for (const auto& x : jc) {
            size_t idx = x.get<size_t>();
            if (idx >= f.rays.size())
                throw ParseError("cone refers to a missing ray");
            c.push_back(idx);
        }
        f.cones.push_back(std::move(c));
    }
    f.partial = doc.value("partial", false);
    return f;
}

}  // namespace splice
