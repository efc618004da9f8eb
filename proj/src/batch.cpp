#include "splice/batch.hpp"

#include "splice/semigroup.hpp"

namespace splice {
namespace batch {

// GMP values are independent objects per instance; concurrent reads of shared
// inputs are safe, and every result slot is written by exactly one iteration.

std::vector<std::optional<IVec>> membership_batch(
    const std::vector<MembershipInstance>& instances)
{
    std::vector<std::optional<IVec>> out(instances.size());
    const long n = static_cast<long>(instances.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i)
        out[i] = membership(instances[i].target, instances[i].generators);
    return out;
}

std::vector<std::optional<IVec>> membership_batch_serial(
    const std::vector<MembershipInstance>& instances)
{
    std::vector<std::optional<IVec>> out(instances.size());
    for (size_t i = 0; i < instances.size(); ++i)
        out[i] = membership(instances[i].target, instances[i].generators);
    return out;
}

std::vector<char> cone_contains_batch(const Cone& c, const std::vector<QVec>& points)
{
    std::vector<char> out(points.size());
    const long n = static_cast<long>(points.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i)
        out[i] = cone_contains(c, points[i]) ? 1 : 0;
    return out;
}

std::vector<char> cone_contains_batch_serial(const Cone& c, const std::vector<QVec>& points)
{
    std::vector<char> out(points.size());
    for (size_t i = 0; i < points.size(); ++i)
        out[i] = cone_contains(c, points[i]) ? 1 : 0;
    return out;
}

std::vector<char> fan_supports_batch(const Fan& f, const std::vector<QVec>& points)
{
    std::vector<char> out(points.size());
    const long n = static_cast<long>(points.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i)
        out[i] = fan_supports(f, points[i]) ? 1 : 0;
    return out;
}

std::vector<char> fan_supports_batch_serial(const Fan& f, const std::vector<QVec>& points)
{
    std::vector<char> out(points.size());
    for (size_t i = 0; i < points.size(); ++i)
        out[i] = fan_supports(f, points[i]) ? 1 : 0;
    return out;
}

std::vector<std::vector<Polynomial>> initial_forms_batch(
    const std::vector<Polynomial>& generators, const std::vector<QVec>& samples)
{
    std::vector<std::vector<Polynomial>> out(samples.size());
    const long n = static_cast<long>(samples.size());
#pragma omp parallel for schedule(dynamic)
    for (long s = 0; s < n; ++s) {
        std::vector<Polynomial> forms;
        forms.reserve(generators.size());
        for (const auto& g : generators)
            forms.push_back(initial_form(g, samples[s]));
        out[s] = std::move(forms);
    }
    return out;
}

std::vector<std::vector<Polynomial>> initial_forms_batch_serial(
    const std::vector<Polynomial>& generators, const std::vector<QVec>& samples)
{
    std::vector<std::vector<Polynomial>> out(samples.size());
    for (size_t s = 0; s < samples.size(); ++s) {
        std::vector<Polynomial> forms;
        forms.reserve(generators.size());
        for (const auto& g : generators)
            forms.push_back(initial_form(g, samples[s]));
        out[s] = std::move(forms);
    }
    return out;
}

bool initial_forms_constant(const std::vector<Polynomial>& generators,
                            const std::vector<QVec>& samples)
{
    if (samples.empty())
        return true;
    auto forms = initial_forms_batch(generators, samples);
    for (size_t s = 1; s < forms.size(); ++s)
        if (forms[s] != forms[0])
            return false;
    return true;
}

}  // namespace batch
}  // namespace splice
