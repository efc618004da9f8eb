#ifndef SPLICE_DEFORM_HPP
#define SPLICE_DEFORM_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "splice/diagram.hpp"
#include "splice/polysys.hpp"

namespace splice {

struct AdaptedTriple {
    Int ka, kb, D;
};

// Open interval d_a/(d_{a,e})^2 < ka/kb < (d_{b,e})^2/d_b from the positivity
// of the edge determinant; exact rational endpoints.
struct TripleInterval {
    Rat lo, hi;
};

TripleInterval triple_interval(const SpliceDiagram& d, const std::string& a,
                               const std::string& b);

struct MinDenominatorPolicy {};
struct ExplicitPolicy {
    Int ka, kb;
    std::optional<Int> D;  // validated for divisibility; defaults to the lcm
};
using TriplePolicy = std::variant<MinDenominatorPolicy, ExplicitPolicy>;

// Coprime (ka,kb) strictly inside the interval plus the least valid D (the lcm
// of the toward-root decorations d_{u,r} over the nodes of the base diagram).
// The min-denominator policy picks the unique fraction of smallest kb (ties:
// smallest ka) by Stern-Brocot descent.
AdaptedTriple adapted_triple(const SpliceDiagram& d, const std::string& a,
                             const std::string& b, const TriplePolicy& policy);

// Simplest fraction in the open interval (lo, hi): minimal denominator, then
// minimal numerator. Requires 0 < lo < hi.
Rat simplest_fraction_between(const Rat& lo, const Rat& hi);

// Gamma~ : the base diagram with [a,b] subdivided at a valency-2 root r
// decorated (ka, kb), plus the supplementary integer D.
struct EnrichedDiagram {
    SpliceDiagram base;
    SpliceDiagram enriched;
    std::string a, b, root;
    Int ka, kb, D;
};

EnrichedDiagram enrich(const SpliceDiagram& d, const std::string& a, const std::string& b,
                       const AdaptedTriple& triple);

// w-bar_u = w_0 + (D l_{ru} / d_u) w_u, indexed {z0} + leaves; the scalar is an
// exact integer. u ranges over nodes of the enrichment, including the root.
IVec extended_weight_vector(const EnrichedDiagram& ed, const std::string& u);

// Exact integer scalar D l_{ru} / d_u.
Int extended_weight_scalar(const EnrichedDiagram& ed, const std::string& u);

struct DeformedNode {
    std::string node;
    Int z0_exponent;  // D l_{rv}
    QVec coefficients;
    std::vector<Polynomial> equations;  // n+1 variables, z0 first
};

struct DeformedSystem {
    EnrichedDiagram enrichment;
    SpliceSystem strict;  // the undeformed system on the base diagram
    std::vector<DeformedNode> nodes;
    size_t nvars = 0;  // n + 1

    std::vector<Polynomial> all_equations() const;
};

// F-bar_{v,i} = F_{v,i} - c_{v,i} z0^{D l_{rv}}. Coefficients default to 1;
// zero coefficients are rejected.
using DeformCoefficients = std::map<std::string, QVec>;
DeformedSystem edge_deformation(const SpliceSystem& system, const EnrichedDiagram& ed,
                                const DeformCoefficients& coefficients = {});

// Partition of the deformed equations by the side of [a,b] their node lies on.
struct SideSplit {
    std::vector<std::string> a_nodes, b_nodes;
    std::vector<Polynomial> a_equations, b_equations;
};
SideSplit side_systems(const DeformedSystem& ds);

// Substitutes z0 = 0 into every equation (drops the deformation terms).
std::vector<Polynomial> equations_at_z0_zero(const DeformedSystem& ds);

std::string emit_deformed_system(const DeformedSystem& ds);
DeformedSystem parse_deformed_system(const std::string& text);

}  // namespace splice

#endif
