#ifndef SPLICE_TROPFAN_HPP
#define SPLICE_TROPFAN_HPP

#include <string>
#include <vector>

#include "splice/deform.hpp"
#include "splice/diagram.hpp"
#include "splice/linalg.hpp"
#include "splice/numeric.hpp"

namespace splice {

// Finitely generated rational cone; generators are primitive integer vectors.
struct Cone {
    size_t dim = 0;
    std::vector<IVec> generators;
};

// Exact decision whether x is a non-negative rational combination of the
// generators (linear feasibility over Q).
bool cone_contains(const Cone& c, const QVec& x);
bool cone_contains(const Cone& c, const IVec& x);

size_t cone_rank(const Cone& c);

// Fan as a ray list plus cones given by ray index sets (faces listed too).
// partial marks fans whose full cone structure is not enumerated; support
// queries are then restricted to the listed cones.
struct Fan {
    size_t dim = 0;
    std::vector<IVec> rays;
    std::vector<std::vector<size_t>> cones;
    bool partial = false;

    Cone cone_at(size_t index) const;
};

// x lies in some listed cone.
bool fan_supports(const Fan& f, const QVec& x);

// Standard tropicalizing fan of the surface germ: rays e_lambda per leaf and
// (primitivized) w_v per node; one 2-cone per edge of the diagram.
Fan surface_trop_fan(const SpliceDiagram& d);

// Rays of the deformation tropicalization: e_0, e-bar_lambda, and w-bar_u for
// every node u of the enrichment.
std::vector<IVec> deformation_trop_rays(const EnrichedDiagram& ed);

// The documented sub-fan of the deformation tropicalization (rays, the edge
// 2-cones of the enrichment, the e_0 faces of the central cone, the central
// cone). Flagged partial: the complete cone structure is not enumerated.
Fan deformation_trop_fan(const EnrichedDiagram& ed);

struct ConeStructureReport {
    Cone cone;
    size_t rank = 0;
    std::vector<char> extreme;     // per stored generator
    bool non_simplicial = false;   // more extreme generators than the rank
    bool duplicates_removed = false;
};

// Primitivizes, dedupes, and analyzes a generator list.
ConeStructureReport analyze_cone(size_t dim, std::vector<IVec> generators);

// The cone generated by {e_0, w-bar_a, w-bar_b, w-bar_r}.
ConeStructureReport central_cone(const EnrichedDiagram& ed);

struct DualComplex {
    std::vector<std::string> vertices;              // node ids of the enrichment
    std::vector<std::pair<size_t, size_t>> edges;   // node adjacencies
};

// Dual complex of the exceptional divisor: the node-induced subtree of the
// enrichment.
DualComplex dual_complex(const EnrichedDiagram& ed);

std::string dual_complex_to_dot(const DualComplex& g);

// Stellar subdivision along a ray inside the support. Cones containing the ray
// are replaced by joins of the ray with their faces not containing it.
Fan stellar_subdivide(const Fan& f, const IVec& ray);

// Certifies that listed cones pairwise intersect in common faces, via exact
// separating functionals. Used by the fan consistency tests.
bool fan_cones_compatible(const Fan& f, std::string* why = nullptr);

// --- rounding fibers ----------------------------------------------------------

// Monoid presentation: g generators, integer relation rows among them.
struct MonoidPresentation {
    size_t generators = 0;
    IMatrix relations;
};

struct FiberGroup {
    size_t rank = 0;      // dimension of each torus component
    IVec torsion;         // invariant factors > 1
    Int components = 1;   // product of the torsion factors
};

// Structure of Hom((M/M*)^gp, S^1) through the Smith normal form of the
// relation matrix. The factorization is re-verified exactly on every call.
FiberGroup rounding_fiber_group(const MonoidPresentation& p);

// Dimension of the rounding-fiber torus over the orbit of a cone.
size_t orbit_fiber_dimension(const Fan& f, size_t cone_index);

// --- serialization -------------------------------------------------------------

std::string emit_fan(const Fan& f);
Fan parse_fan(const std::string& text);

}  // namespace splice

#endif
