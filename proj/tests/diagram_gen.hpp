#ifndef SPLICE_TESTS_DIAGRAM_GEN_HPP
#define SPLICE_TESTS_DIAGRAM_GEN_HPP

// Deterministic random generators for diagrams satisfying the determinant and
// semigroup conditions. Candidates are always re-checked with
// full_validation; only validated diagrams are returned.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "splice/diagram.hpp"
#include "splice/semigroup.hpp"

namespace diagram_gen {

using splice::Int;
using splice::SpliceDiagram;
using splice::VertexKind;

using Rng = std::mt19937_64;

struct TwoNodeParams {
    unsigned long p1, p2;  // leaf decorations at a
    unsigned long qa;      // internal decoration at a
    unsigned long q1, q2;  // leaf decorations at b
    unsigned long qb;      // internal decoration at b
};

inline SpliceDiagram make_two_node(const TwoNodeParams& t)
{
    std::vector<std::pair<std::string, VertexKind>> decls = {
        {"a", VertexKind::Node}, {"b", VertexKind::Node},
        {"l1", VertexKind::Leaf}, {"l2", VertexKind::Leaf},
        {"l3", VertexKind::Leaf}, {"l4", VertexKind::Leaf}};
    std::vector<SpliceDiagram::Edge> edges(5);
    edges[0] = {0, 2, Int(t.p1), std::nullopt};
    edges[1] = {0, 3, Int(t.p2), std::nullopt};
    edges[2] = {0, 1, Int(t.qa), Int(t.qb)};
    edges[3] = {1, 4, Int(t.q1), std::nullopt};
    edges[4] = {1, 5, Int(t.q2), std::nullopt};
    return SpliceDiagram::build(decls, edges, {"l1", "l2", "l3", "l4"});
}

inline bool fully_valid(const SpliceDiagram& d)
{
    splice::ValidationReport r = splice::full_validation(d);
    return (!r.determinant || r.determinant->ok) && r.semigroup_ok;
}

// Every valid two-node diagram with all six decorations <= max_dec.
inline const std::vector<TwoNodeParams>& small_two_node_family(unsigned long max_dec = 13)
{
    static std::vector<TwoNodeParams> family = [max_dec] {
        std::vector<TwoNodeParams> out;
        auto cop = [](unsigned long a, unsigned long b) {
            while (b) {
                unsigned long t = a % b;
                a = b;
                b = t;
            }
            return a == 1;
        };
        for (unsigned long p1 = 2; p1 <= max_dec; ++p1)
            for (unsigned long p2 = p1 + 1; p2 <= max_dec; ++p2) {
                if (!cop(p1, p2))
                    continue;
                for (unsigned long q1 = 2; q1 <= max_dec; ++q1)
                    for (unsigned long q2 = q1 + 1; q2 <= max_dec; ++q2) {
                        if (!cop(q1, q2))
                            continue;
                        for (unsigned long qa = 2; qa <= max_dec; ++qa) {
                            if (!cop(qa, p1) || !cop(qa, p2))
                                continue;
                            for (unsigned long qb = 2; qb <= max_dec; ++qb) {
                                if (!cop(qb, q1) || !cop(qb, q2))
                                    continue;
                                if (qa * qb <= p1 * p2 * q1 * q2)
                                    continue;  // determinant condition
                                TwoNodeParams t{p1, p2, qa, q1, q2, qb};
                                SpliceDiagram d = make_two_node(t);
                                if (fully_valid(d))
                                    out.push_back(t);
                            }
                        }
                    }
            }
        return out;
    }();
    return family;
}

// A valid two-node diagram with every decoration <= 13.
inline SpliceDiagram random_small_two_node(Rng& rng)
{
    const auto& family = small_two_node_family();
    std::uniform_int_distribution<size_t> pick(0, family.size() - 1);
    return make_two_node(family[pick(rng)]);
}

// Caterpillar u{2,3} -7/x- a{5} -7/z- b{2,3} with x > 30 coprime to 35 and
// z > 30x/7 built from the semigroup generators at b.
inline SpliceDiagram make_caterpillar(unsigned long x, unsigned long z)
{
    std::vector<std::pair<std::string, VertexKind>> decls = {
        {"u", VertexKind::Node}, {"a", VertexKind::Node}, {"b", VertexKind::Node},
        {"m1", VertexKind::Leaf}, {"m2", VertexKind::Leaf}, {"m3", VertexKind::Leaf},
        {"m4", VertexKind::Leaf}, {"m5", VertexKind::Leaf}};
    std::vector<SpliceDiagram::Edge> edges(7);
    edges[0] = {0, 3, Int(2), std::nullopt};
    edges[1] = {0, 4, Int(3), std::nullopt};
    edges[2] = {0, 1, Int(7), Int(x)};
    edges[3] = {1, 5, Int(5), std::nullopt};
    edges[4] = {1, 2, Int(7), Int(z)};
    edges[5] = {2, 6, Int(2), std::nullopt};
    edges[6] = {2, 7, Int(3), std::nullopt};
    return SpliceDiagram::build(decls, edges, {"m1", "m2", "m3", "m4", "m5"});
}

inline SpliceDiagram random_caterpillar(Rng& rng)
{
    auto cop = [](unsigned long a, unsigned long b) {
        while (b) {
            unsigned long t = a % b;
            a = b;
            b = t;
        }
        return a == 1;
    };
    for (int attempt = 0; attempt < 1000; ++attempt) {
        // x in <3,2> automatically (any value >= 2), coprime to 5 and 7.
        std::uniform_int_distribution<unsigned long> xd(31, 60);
        unsigned long x = xd(rng);
        if (!cop(x, 35))
            continue;
        // z = 15 alpha + 10 beta lies in the semigroup at (b, toward a);
        // it must exceed 30x/7 for the determinant and be coprime to 6.
        std::uniform_int_distribution<unsigned long> ad(1, 40), bd(1, 40);
        unsigned long z = 15 * ad(rng) + 10 * bd(rng);
        if (7 * z <= 30 * x || !cop(z, 6))
            continue;
        SpliceDiagram d = make_caterpillar(x, z);
        if (fully_valid(d))
            return d;
    }
    return make_caterpillar(31, 935);
}

// General valid diagram: a star, a two-node splice, or a caterpillar.
inline SpliceDiagram random_valid_diagram(Rng& rng, bool multi_node_only = false)
{
    std::uniform_int_distribution<int> kind(multi_node_only ? 1 : 0, 2);
    switch (kind(rng)) {
        case 0: {
            // Star with 3..6 distinct prime decorations (pairwise coprime).
            std::vector<unsigned long> primes{2, 3, 5, 7, 11, 13};
            std::shuffle(primes.begin(), primes.end(), rng);
            std::uniform_int_distribution<size_t> nd(3, 6);
            size_t n = nd(rng);
            std::vector<std::pair<std::string, VertexKind>> decls;
            decls.emplace_back("v", VertexKind::Node);
            std::vector<SpliceDiagram::Edge> edges;
            std::vector<std::string> order;
            for (size_t i = 0; i < n; ++i) {
                std::string id = "l" + std::to_string(i + 1);
                decls.emplace_back(id, VertexKind::Leaf);
                edges.push_back({0, i + 1, Int(primes[i]), std::nullopt});
                order.push_back(id);
            }
            return SpliceDiagram::build(decls, edges, order);
        }
        case 1:
            return random_small_two_node(rng);
        default:
            return random_caterpillar(rng);
    }
}

}  // namespace diagram_gen

#endif
