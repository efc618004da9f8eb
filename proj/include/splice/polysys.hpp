#ifndef SPLICE_POLYSYS_HPP
#define SPLICE_POLYSYS_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "splice/diagram.hpp"
#include "splice/linalg.hpp"
#include "splice/numeric.hpp"

namespace splice {

// Exponent vectors are dense integer vectors in the diagram's leaf order
// (length n), or with the deformation variable prepended (length n+1).
using Exponents = IVec;

// Finite map from exponent vectors to non-zero exact rational coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(size_t nvars) : nvars_(nvars) {}

    size_t nvars() const { return nvars_; }
    const std::map<Exponents, Rat>& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }

    void add_term(const Exponents& exp, const Rat& coeff);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    bool operator==(const Polynomial& o) const = default;

    // Substitutes 0 for variable var and removes that coordinate.
    Polynomial set_var_zero(size_t var) const;
    // Inserts a fresh variable with exponent 0 at position 0.
    Polynomial prepend_var() const;

    static Polynomial monomial(size_t nvars, const Exponents& exp, const Rat& coeff = Rat(1));

private:
    std::map<Exponents, Rat> terms_;
    size_t nvars_ = 0;
};

// w_v = sum_lambda l_{v,lambda} e_lambda in leaf order; all entries positive.
IVec node_weight_vector(const SpliceDiagram& d, const std::string& v);
IVec node_weight_vector_by_index(const SpliceDiagram& d, size_t v);

// --- Hamm determinant condition ----------------------------------------------

struct HammVerdict {
    bool ok = true;
    std::vector<size_t> failing_columns;  // first vanishing maximal minor
};

// All k x k minors of a k x m matrix (k <= m) must be non-zero; exact
// fraction-free evaluation per column choice.
HammVerdict hamm_check(const QMatrix& rows);

// --- splice type systems -------------------------------------------------------

struct VandermondeCoefficients {
    unsigned long offset = 0;  // column parameters are offset+1, offset+2, ...
};
// Per node id, a (valency x (valency-2)) matrix, rows in canonical edge order.
using ExplicitCoefficients = std::map<std::string, QMatrix>;
using CoefficientSource = std::variant<VandermondeCoefficients, ExplicitCoefficients>;

struct SystemNode {
    std::string node;
    std::vector<std::string> edge_toward;   // canonical edge order, neighbor ids
    std::vector<Exponents> admissible;      // m_{v,e} per edge
    QMatrix matrix;                         // valency x (valency-2); rows follow edges
    std::vector<Polynomial> equations;      // valency-2 polynomials
};

struct SpliceSystem {
    SpliceDiagram diagram;
    std::vector<SystemNode> nodes;
    size_t nvars = 0;

    std::vector<Polynomial> all_equations() const;
    bool operator==(const SpliceSystem& o) const;
};

// Builds the strict splice type system of a diagram satisfying the determinant
// and semigroup conditions. Default coefficients are Vandermonde columns, so
// every maximal minor is a product of Vandermonde determinants.
SpliceSystem strict_splice_system(const SpliceDiagram& d,
                                  const CoefficientSource& source = VandermondeCoefficients{});

// Pham-Brieskorn-Hamm system: rows of the (n-2) x n matrix are equations
// sum_j c_{i,j} z_j^{p_j}. Coincides with strict_splice_system on the star.
SpliceSystem bph_system(const IVec& degrees, const QMatrix& equations_matrix);

// --- initial forms -------------------------------------------------------------

// Sum of the terms attaining the minimum of w.m over the support.
Polynomial initial_form(const Polynomial& f, const QVec& w);

// Minimal w-weight over the support (nullopt for the zero polynomial).
std::optional<Rat> min_weight(const Polynomial& f, const QVec& w);

// The common value of w.m over the support if constant, else nullopt.
std::optional<Int> homogeneous_degree(const Polynomial& f, const IVec& w);

// True iff every exponent m of g satisfies w_v . m > d_v strictly.
bool validate_higher_order(const Polynomial& g, const SpliceDiagram& d, const std::string& v);

struct InitialSystem {
    std::vector<Polynomial> forms;
    // Generator-level necessary condition for tropical membership: every
    // initial form has at least two terms. Not the ideal-level condition.
    bool generators_monomial_free = false;
};

InitialSystem initial_system(const std::vector<Polynomial>& generators, const QVec& w);

// --- serialization -------------------------------------------------------------

std::string emit_system(const SpliceSystem& s);
SpliceSystem parse_system(const std::string& text);

}  // namespace splice

#endif
