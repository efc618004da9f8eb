#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "splice/batch.hpp"

using namespace splice;

TEST_SUITE_BEGIN("batch");

TEST_CASE("parallel kernels agree with their serial references")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<unsigned long> tgt(0, 5000), gen(1, 400), cnt(1, 5);

    std::vector<batch::MembershipInstance> instances;
    for (int i = 0; i < 500; ++i) {
        batch::MembershipInstance inst;
        inst.target = Int(tgt(rng));
        size_t k = cnt(rng);
        for (size_t j = 0; j < k; ++j)
            inst.generators.push_back(Int(gen(rng)));
        instances.push_back(std::move(inst));
    }
    CHECK(batch::membership_batch(instances) == batch::membership_batch_serial(instances));

    Cone c;
    c.dim = 3;
    c.generators = {{Int(15), Int(10), Int(6)}, {Int(1), Int(0), Int(0)}};
    std::uniform_int_distribution<long> coord(-5, 30);
    std::vector<QVec> points;
    for (int i = 0; i < 400; ++i)
        points.push_back({Rat(coord(rng)), Rat(coord(rng)), Rat(coord(rng))});
    CHECK(batch::cone_contains_batch(c, points) == batch::cone_contains_batch_serial(c, points));

    Fan f = surface_trop_fan(parse_diagram(corpus::e8));
    CHECK(batch::fan_supports_batch(f, points) == batch::fan_supports_batch_serial(f, points));

    std::vector<Polynomial> gens;
    {
        Polynomial g(3);
        g.add_term({Int(2), Int(0), Int(0)}, Rat(1));
        g.add_term({Int(0), Int(3), Int(0)}, Rat(1));
        g.add_term({Int(0), Int(0), Int(5)}, Rat(1));
        gens.push_back(std::move(g));
    }
    std::uniform_int_distribution<long> w(1, 50);
    std::vector<QVec> samples;
    for (int i = 0; i < 300; ++i)
        samples.push_back({Rat(w(rng)), Rat(w(rng)), Rat(w(rng))});
    CHECK(batch::initial_forms_batch(gens, samples) ==
          batch::initial_forms_batch_serial(gens, samples));
}

TEST_CASE("initial form constancy detector")
{
    Polynomial g(2);
    g.add_term({Int(2), Int(0)}, Rat(1));
    g.add_term({Int(0), Int(2)}, Rat(-1));
    // along the diagonal both terms tie; off it the forms differ
    std::vector<QVec> diag = {{Rat(1), Rat(1)}, {Rat(3), Rat(3)}, {Rat(7, 2), Rat(7, 2)}};
    CHECK(batch::initial_forms_constant({g}, diag));
    std::vector<QVec> mixed = {{Rat(1), Rat(1)}, {Rat(1), Rat(2)}};
    CHECK_FALSE(batch::initial_forms_constant({g}, mixed));
    CHECK(batch::initial_forms_constant({g}, {}));
}

TEST_SUITE_END();
