#ifndef SPLICE_BATCH_HPP
#define SPLICE_BATCH_HPP

#include <optional>
#include <vector>

#include "splice/polysys.hpp"
#include "splice/tropfan.hpp"

namespace splice {
namespace batch {

// Data-parallel batch kernels. Every operation of the library is a pure
// function over immutable inputs, so batches parallelize over instances with
// OpenMP. Each kernel keeps a serial reference implementation used by the
// tests and the benchmark.

struct MembershipInstance {
    Int target;
    IVec generators;
};

std::vector<std::optional<IVec>> membership_batch(
    const std::vector<MembershipInstance>& instances);
std::vector<std::optional<IVec>> membership_batch_serial(
    const std::vector<MembershipInstance>& instances);

std::vector<char> cone_contains_batch(const Cone& c, const std::vector<QVec>& points);
std::vector<char> cone_contains_batch_serial(const Cone& c, const std::vector<QVec>& points);

std::vector<char> fan_supports_batch(const Fan& f, const std::vector<QVec>& points);
std::vector<char> fan_supports_batch_serial(const Fan& f, const std::vector<QVec>& points);

// Initial forms of every generator at every sample weight; forms[s][g] is the
// form of generator g at sample s.
std::vector<std::vector<Polynomial>> initial_forms_batch(
    const std::vector<Polynomial>& generators, const std::vector<QVec>& samples);
std::vector<std::vector<Polynomial>> initial_forms_batch_serial(
    const std::vector<Polynomial>& generators, const std::vector<QVec>& samples);

// True iff for every generator the initial form is the same polynomial at
// every sample.
bool initial_forms_constant(const std::vector<Polynomial>& generators,
                            const std::vector<QVec>& samples);

}  // namespace batch
}  // namespace splice

#endif
