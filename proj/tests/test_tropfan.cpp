#include <random>

#include "corpus.hpp"
#include "diagram_gen.hpp"
#include "doctest.h"
#include "splice/tropfan.hpp"

using namespace splice;

namespace {

IVec ivec(std::vector<long> v)
{
    IVec out;
    for (long x : v)
        out.push_back(Int(x));
    return out;
}

QVec qvec(std::vector<long> v)
{
    QVec out;
    for (long x : v)
        out.push_back(Rat(x));
    return out;
}

size_t count_dim(const Fan& f, size_t d)
{
    size_t n = 0;
    for (const auto& c : f.cones)
        if (c.size() == d)
            ++n;
    return n;
}

}  // namespace

TEST_SUITE_BEGIN("tropfan");

TEST_CASE("cone membership")
{
    Cone c{3, {ivec({1, 0, 0}), ivec({0, 1, 0})}};
    CHECK(cone_contains(c, qvec({1, 1, 0})));
    CHECK(cone_contains(c, qvec({0, 0, 0})));
    CHECK_FALSE(cone_contains(c, qvec({1, 1, 1})));
    CHECK_FALSE(cone_contains(c, qvec({-1, 0, 0})));

    Cone e8{3, {ivec({15, 10, 6}), ivec({1, 0, 0})}};
    CHECK(cone_contains(e8, qvec({16, 10, 6})));
    CHECK_FALSE(cone_contains(e8, qvec({15, 10, 7})));
    CHECK_THROWS_AS(cone_contains(e8, qvec({1, 0})), DomainError);
}

TEST_CASE("surface fan of the star diagram")
{
    Fan f = surface_trop_fan(parse_diagram(corpus::e8));
    REQUIRE(f.rays.size() == 4);
    CHECK(f.rays[0] == ivec({1, 0, 0}));
    CHECK(f.rays[1] == ivec({0, 1, 0}));
    CHECK(f.rays[2] == ivec({0, 0, 1}));
    CHECK(f.rays[3] == ivec({15, 10, 6}));
    CHECK(count_dim(f, 2) == 3);
    CHECK_FALSE(f.partial);
    for (const auto& c : f.cones)
        if (c.size() == 2)
            CHECK(std::count(c.begin(), c.end(), 3) == 1);  // every 2-cone meets w
    std::string why;
    CHECK(fan_cones_compatible(f, &why));
}

TEST_CASE("surface fan cone count equals the edge count")
{
    diagram_gen::Rng rng(61);
    for (int it = 0; it < 20; ++it) {
        SpliceDiagram d = diagram_gen::random_valid_diagram(rng);
        Fan f = surface_trop_fan(d);
        CHECK(count_dim(f, 2) == d.edges().size());
        CHECK(f.rays.size() == d.vertices().size());
        for (const auto& r : f.rays)
            CHECK(primitivized(r) == r);
        // adjacent weight vectors lie in their 2-cone
        for (const auto& c : f.cones) {
            if (c.size() != 2)
                continue;
            Cone cone = f.cone_at(&c - f.cones.data());
            QVec mid(f.dim, Rat(0));
            for (size_t i = 0; i < f.dim; ++i)
                mid[i] = Rat(cone.generators[0][i]) + Rat(2) * Rat(cone.generators[1][i]) / Rat(3);
            CHECK(cone_contains(cone, mid));
        }
    }
}

TEST_CASE("transversal section of the surface fan is the diagram")
{
    // rays correspond to vertices and 2-cones to edges, so the incidence
    // graph of the fan is the tree itself
    SpliceDiagram d = parse_diagram(corpus::figure2);
    Fan f = surface_trop_fan(d);
    CHECK(f.rays.size() == 6);
    CHECK(count_dim(f, 2) == 5);
}

TEST_CASE("deformation rays")
{
    SpliceDiagram f3 = parse_diagram(corpus::figure3);
    EnrichedDiagram ed = enrich(f3, "a", "b", {Int(1), Int(7), Int(539)});
    auto rays = deformation_trop_rays(ed);
    REQUIRE(rays.size() == 9);  // e0 + 5 leaves + nodes a, b, r
    CHECK(rays[0] == ivec({1, 0, 0, 0, 0, 0}));
    for (size_t i = 1; i <= 5; ++i) {
        CHECK(rays[i][0] == 0);
        CHECK(rays[i][i] == 1);
    }
    // node rays have strictly positive coordinates; coordinate rays lie on
    // the boundary of the orthant
    for (size_t i = 6; i < rays.size(); ++i)
        for (const Int& x : rays[i])
            CHECK(x > 0);
    for (const auto& r : rays)
        CHECK(primitivized(r) == r);
}

TEST_CASE("central cone of the corpus enrichment")
{
    SpliceDiagram f3 = parse_diagram(corpus::figure3);
    EnrichedDiagram ed = enrich(f3, "a", "b", {Int(1), Int(7), Int(539)});
    ConeStructureReport rep = central_cone(ed);
    CHECK(rep.rank == 3);
    REQUIRE(rep.cone.generators.size() == 4);
    for (char e : rep.extreme)
        CHECK(e == 1);
    CHECK(rep.non_simplicial);
    CHECK_FALSE(rep.duplicates_removed);
}

TEST_CASE("duplicate generators are deduped with a simplicial verdict")
{
    ConeStructureReport rep = analyze_cone(
        3, {ivec({1, 0, 0}), ivec({2, 0, 0}), ivec({0, 1, 0}), ivec({0, 0, 1})});
    CHECK(rep.duplicates_removed);  // (2,0,0) primitivizes to (1,0,0)
    CHECK(rep.cone.generators.size() == 3);
    CHECK(rep.rank == 3);
    CHECK_FALSE(rep.non_simplicial);
}

TEST_CASE("deformation fan: structure and pairwise compatibility")
{
    SpliceDiagram f3 = parse_diagram(corpus::figure3);
    EnrichedDiagram ed = enrich(f3, "a", "b", {Int(1), Int(7), Int(539)});
    Fan f = deformation_trop_fan(ed);
    CHECK(f.partial);
    CHECK(f.rays.size() == 9);
    CHECK(count_dim(f, 4) == 1);  // the central cone
    std::string why;
    CHECK(fan_cones_compatible(f, &why));

    SpliceDiagram cat = parse_diagram(corpus::caterpillar);
    AdaptedTriple t = adapted_triple(cat, "a", "b", MinDenominatorPolicy{});
    EnrichedDiagram ced = enrich(cat, "a", "b", t);
    Fan cf = deformation_trop_fan(ced);
    CHECK(fan_cones_compatible(cf, &why));
}

TEST_CASE("dual complex is the node-induced subtree of the enrichment")
{
    SpliceDiagram f3 = parse_diagram(corpus::figure3);
    EnrichedDiagram ed = enrich(f3, "a", "b", {Int(1), Int(7), Int(539)});
    DualComplex g = dual_complex(ed);
    REQUIRE(g.vertices.size() == 3);
    REQUIRE(g.edges.size() == 2);
    // path a - r - b: the root has degree 2, the others degree 1
    std::vector<size_t> deg(3, 0);
    for (auto [u, v] : g.edges) {
        ++deg[u];
        ++deg[v];
    }
    for (size_t i = 0; i < 3; ++i) {
        if (g.vertices[i] == ed.root)
            CHECK(deg[i] == 2);
        else
            CHECK(deg[i] == 1);
    }

    // caterpillar: 4 nodes in a path
    SpliceDiagram cat = parse_diagram(corpus::caterpillar);
    AdaptedTriple t = adapted_triple(cat, "a", "b", MinDenominatorPolicy{});
    DualComplex cg = dual_complex(enrich(cat, "a", "b", t));
    CHECK(cg.vertices.size() == 4);
    CHECK(cg.edges.size() == 3);

    std::string dot = dual_complex_to_dot(g);
    CHECK(dot.find("graph dual_complex") != std::string::npos);
}

TEST_CASE("dual complex equals the node adjacency of the enrichment on random diagrams")
{
    diagram_gen::Rng rng(71);
    for (int it = 0; it < 20; ++it) {
        SpliceDiagram d = diagram_gen::random_valid_diagram(rng, true);
        auto det = check_determinant_condition(d);
        REQUIRE(!det.entries.empty());
        const auto& entry = det.entries[it % det.entries.size()];
        AdaptedTriple t = adapted_triple(d, entry.u, entry.v, MinDenominatorPolicy{});
        EnrichedDiagram ed = enrich(d, entry.u, entry.v, t);
        DualComplex g = dual_complex(ed);
        CHECK(g.vertices.size() == ed.enriched.node_indices().size());
        // edges of the complex = internal edges of the enrichment
        size_t internal = 0;
        for (size_t e = 0; e < ed.enriched.edges().size(); ++e)
            if (ed.enriched.edge_is_internal(e))
                ++internal;
        CHECK(g.edges.size() == internal);
        // connected: a tree on k vertices has k-1 edges
        CHECK(g.edges.size() + 1 == g.vertices.size());
    }
}

TEST_CASE("stellar subdivision")
{
    // textbook case: split the quadrant along the diagonal
    Fan quadrant;
    quadrant.dim = 2;
    quadrant.rays = {ivec({1, 0}), ivec({0, 1})};
    quadrant.cones = {{}, {0}, {1}, {0, 1}};
    Fan split = stellar_subdivide(quadrant, ivec({1, 1}));
    REQUIRE(split.rays.size() == 3);
    CHECK(split.rays[2] == ivec({1, 1}));
    size_t two_cones = 0;
    bool saw_e1_diag = false, saw_diag_e2 = false, saw_original = false;
    for (const auto& c : split.cones) {
        if (c.size() == 2) {
            ++two_cones;
            saw_e1_diag = saw_e1_diag || (c == std::vector<size_t>{0, 2});
            saw_diag_e2 = saw_diag_e2 || (c == std::vector<size_t>{1, 2});
            saw_original = saw_original || (c == std::vector<size_t>{0, 1});
        }
    }
    CHECK(two_cones == 2);
    CHECK(saw_e1_diag);
    CHECK(saw_diag_e2);
    CHECK_FALSE(saw_original);
    std::string why;
    CHECK(fan_cones_compatible(split, &why));

    // subdividing along an existing ray is the identity
    Fan same = stellar_subdivide(quadrant, ivec({0, 1}));
    CHECK(same.rays == quadrant.rays);
    CHECK(same.cones.size() == quadrant.cones.size());

    Fan e8 = surface_trop_fan(parse_diagram(corpus::e8));
    Fan e8same = stellar_subdivide(e8, ivec({15, 10, 6}));
    CHECK(e8same.rays == e8.rays);
    CHECK(e8same.cones.size() == e8.cones.size());

    // a ray outside the support is rejected
    CHECK_THROWS_AS(stellar_subdivide(e8, ivec({-1, 0, 0})), DomainError);
}

TEST_CASE("stellar subdivision preserves support")
{
    Fan e8 = surface_trop_fan(parse_diagram(corpus::e8));
    Fan split = stellar_subdivide(e8, ivec({16, 10, 6}));  // interior of <w,e1>
    std::mt19937_64 rng(83);
    std::uniform_int_distribution<long> num(-8, 30);
    std::uniform_int_distribution<long> den(1, 7);
    for (int it = 0; it < 1000; ++it) {
        QVec x = {Rat(num(rng), den(rng)), Rat(num(rng), den(rng)), Rat(num(rng), den(rng))};
        for (auto& q : x)
            q.canonicalize();
        CHECK(fan_supports(e8, x) == fan_supports(split, x));
    }
}

TEST_CASE("rounding fiber groups")
{
    FiberGroup free2 = rounding_fiber_group({2, {}});
    CHECK(free2.rank == 2);
    CHECK(free2.torsion.empty());
    CHECK(free2.components == 1);

    FiberGroup halfturn = rounding_fiber_group({2, {ivec({2, -2})}});
    CHECK(halfturn.rank == 1);
    REQUIRE(halfturn.torsion.size() == 1);
    CHECK(halfturn.torsion[0] == 2);
    CHECK(halfturn.components == 2);

    FiberGroup point = rounding_fiber_group({1, {ivec({1})}});
    CHECK(point.rank == 0);
    CHECK(point.torsion.empty());
    CHECK(point.components == 1);

    // torsion multiplies across factors
    FiberGroup both = rounding_fiber_group({3, {ivec({2, 0, 0}), ivec({0, 3, 0})}});
    CHECK(both.rank == 1);
    CHECK(both.components == 6);

    CHECK_THROWS_AS(rounding_fiber_group({2, {ivec({1, 2, 3})}}), DomainError);
}

TEST_CASE("orbit fiber dimensions")
{
    Fan e8 = surface_trop_fan(parse_diagram(corpus::e8));
    CHECK(orbit_fiber_dimension(e8, 0) == 0);  // zero cone
    CHECK(orbit_fiber_dimension(e8, 1) == 1);  // a ray
    // a 2-cone has a 2-dimensional fiber
    for (size_t i = 0; i < e8.cones.size(); ++i)
        if (e8.cones[i].size() == 2)
            CHECK(orbit_fiber_dimension(e8, i) == 2);

    SpliceDiagram f3 = parse_diagram(corpus::figure3);
    EnrichedDiagram ed = enrich(f3, "a", "b", {Int(1), Int(7), Int(539)});
    Fan df = deformation_trop_fan(ed);
    for (size_t i = 0; i < df.cones.size(); ++i)
        if (df.cones[i].size() == 4)
            CHECK(orbit_fiber_dimension(df, i) == 3);  // the central cone
}

TEST_CASE("fan serialization round-trips")
{
    Fan e8 = surface_trop_fan(parse_diagram(corpus::e8));
    Fan back = parse_fan(emit_fan(e8));
    CHECK(emit_fan(back) == emit_fan(e8));
    CHECK(back.rays == e8.rays);
    CHECK(back.cones == e8.cones);
    CHECK(back.partial == e8.partial);

    SpliceDiagram f3 = parse_diagram(corpus::figure3);
    EnrichedDiagram ed = enrich(f3, "a", "b", {Int(1), Int(7), Int(539)});
    Fan df = deformation_trop_fan(ed);
    CHECK(emit_fan(parse_fan(emit_fan(df))) == emit_fan(df));
}

TEST_SUITE_END();
