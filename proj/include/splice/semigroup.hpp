#ifndef SPLICE_SEMIGROUP_HPP
#define SPLICE_SEMIGROUP_HPP

#include <optional>
#include <string>
#include <vector>

#include "splice/diagram.hpp"
#include "splice/numeric.hpp"

namespace splice {

// Decides target in N<generators> and returns the lexicographically minimal
// coefficient tuple in the given generator order, if any. Bounded coin-problem
// dynamic programming over residues (one Apery-style table per generator
// suffix, table size = smallest generator).
std::optional<IVec> membership(const Int& target, const IVec& generators);

// All representations in strictly increasing lexicographic order, truncated at
// cap. The result is complete iff fewer than cap entries are returned.
std::vector<IVec> enumerate_representations(const Int& target, const IVec& generators,
                                            size_t cap = 64);

// One entry per (node v, incident edge e), in document/canonical-edge order.
struct SemigroupWitness {
    std::string node;
    std::string toward;              // other endpoint of e
    std::vector<std::string> leaves;  // L(v,e) in leaf order
    Int target_reduced;              // d_{v,e}
    IVec gens_reduced;               // l'_{v,lambda}
    Int target_full;                 // d_v
    IVec gens_full;                  // l_{v,lambda}
    bool satisfied = false;
    std::optional<IVec> coefficients;
};

struct SemigroupReport {
    bool satisfied = true;
    std::vector<SemigroupWitness> entries;
};

// The semigroup condition: d_v in N<l_{v,lambda} : lambda in L(v,e)> for every
// node v and incident edge e. Witnesses are computed through the equivalent
// reduced form d_{v,e} in N<l'_{v,lambda}> and re-verified against the
// unreduced one exactly.
SemigroupReport check_semigroup_condition(const SpliceDiagram& d);

// Edges at v sorted by the smallest leaf position visible through each edge.
// This is the canonical edge order used for coefficient matrices and reports.
std::vector<size_t> canonical_edge_order(const SpliceDiagram& d, size_t v);

// Leaves seen from v through e, in leaf order.
std::vector<size_t> leaves_beyond(const SpliceDiagram& d, size_t v, size_t e);

// Structural report plus determinant and semigroup verdicts.
ValidationReport full_validation(const SpliceDiagram& d);

}  // namespace splice

#endif
