#ifndef SPLICE_NUMERIC_HPP
#define SPLICE_NUMERIC_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "splice/errors.hpp"

namespace splice {

// All arithmetic in this project is exact: arbitrary-precision integers and
// rationals from GMP. No floating point anywhere.
using Int = mpz_class;
using Rat = mpq_class;

using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

inline Int int_gcd(const Int& a, const Int& b)
{
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int int_lcm(const Int& a, const Int& b)
{
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline bool coprime(const Int& a, const Int& b) { return int_gcd(a, b) == 1; }

// Exact quotient; throws if b does not divide a.
inline Int exact_div(const Int& a, const Int& b)
{
    if (b == 0 || a % b != 0)
        throw DomainError("exact_div: " + b.get_str() + " does not divide " + a.get_str());
    return a / b;
}

inline Rat make_rat(const Int& num, const Int& den)
{
    if (den == 0)
        throw DomainError("zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p" or "p/q" in base 10.
Rat parse_rat(const std::string& text);

Int parse_int(const std::string& text);

// Divides by the gcd of the entries. The zero vector is rejected.
IVec primitivized(IVec v);

inline QVec to_qvec(const IVec& v)
{
    QVec q(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        q[i] = Rat(v[i]);
    return q;
}

// Exact dot products between exponent vectors and weight vectors.
Int dot(const IVec& a, const IVec& b);
Rat dot(const QVec& a, const IVec& b);

std::string rat_to_string(const Rat& q);

}  // namespace splice

#endif
