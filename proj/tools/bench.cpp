// Benchmark comparing the OpenMP batch kernels against their serial
// references on synthetic workloads. Results must agree exactly; times are
// wall-clock.

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "splice/batch.hpp"

using namespace splice;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename F>
double timed(F&& f)
{
    auto t0 = std::chrono::steady_clock::now();
    f();
    return seconds_since(t0);
}

}  // namespace

int main(int argc, char** argv)
{
    size_t n = argc > 1 ? std::stoul(argv[1]) : 20000;
    std::mt19937_64 rng(12345);

    std::vector<batch::MembershipInstance> instances;
    instances.reserve(n);
    std::uniform_int_distribution<unsigned long> tgt(1, 10000), gen(2, 500), cnt(2, 5);
    for (size_t i = 0; i < n; ++i) {
        batch::MembershipInstance inst;
        inst.target = Int(tgt(rng));
        size_t k = cnt(rng);
        for (size_t j = 0; j < k; ++j)
            inst.generators.push_back(Int(gen(rng)));
        instances.push_back(std::move(inst));
    }

    Cone c;
    c.dim = 3;
    c.generators = {{15, 10, 6}, {1, 0, 0}};
    std::vector<QVec> points;
    std::uniform_int_distribution<long> coord(0, 40);
    for (size_t i = 0; i < n; ++i)
        points.push_back({Rat(coord(rng)), Rat(coord(rng)), Rat(coord(rng))});

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif

    std::vector<std::optional<IVec>> m_par, m_ser;
    double t_mp = timed([&] { m_par = batch::membership_batch(instances); });
    double t_ms = timed([&] { m_ser = batch::membership_batch_serial(instances); });
    std::printf("membership      n=%zu  parallel %.3fs  serial %.3fs  %s\n", n, t_mp, t_ms,
                m_par == m_ser ? "match" : "MISMATCH");

    std::vector<char> c_par, c_ser;
    double t_cp = timed([&] { c_par = batch::cone_contains_batch(c, points); });
    double t_cs = timed([&] { c_ser = batch::cone_contains_batch_serial(c, points); });
    std::printf("cone_contains   n=%zu  parallel %.3fs  serial %.3fs  %s\n", n, t_cp, t_cs,
                c_par == c_ser ? "match" : "MISMATCH");

    std::vector<Polynomial> gens;
    {
        Polynomial f(3);
        f.add_term({2, 0, 0}, Rat(1));
        f.add_term({0, 3, 0}, Rat(1));
        f.add_term({0, 0, 5}, Rat(1));
        gens.push_back(std::move(f));
    }
    std::vector<QVec> samples;
    std::uniform_int_distribution<long> wcoord(1, 60);
    for (size_t i = 0; i < n; ++i)
        samples.push_back({Rat(wcoord(rng)), Rat(wcoord(rng)), Rat(wcoord(rng))});
    std::vector<std::vector<Polynomial>> f_par, f_ser;
    double t_fp = timed([&] { f_par = batch::initial_forms_batch(gens, samples); });
    double t_fs = timed([&] { f_ser = batch::initial_forms_batch_serial(gens, samples); });
    std::printf("initial_forms   n=%zu  parallel %.3fs  serial %.3fs  %s\n", n, t_fp, t_fs,
                f_par == f_ser ? "match" : "MISMATCH");
    return 0;
}
