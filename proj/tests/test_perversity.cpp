#include "tsic/perversity.hpp"
#include "tsic/random_instances.hpp"
#include "tsic/rng.hpp"

#include <doctest.h>

using namespace tsic;

namespace {

// the worked strongly constrained example table, codimensions 1..11
TsPerversity example_table()
{
    return TsPerversity::codim_table({
        {-1, PrimeSet::empty()},       // 1
        {0, PrimeSet::empty()},        // 2
        {0, PrimeSet::of({2})},        // 3
        {0, PrimeSet::of({2, 3})},     // 4
        {1, PrimeSet::empty()},        // 5
        {1, PrimeSet::empty()},        // 6
        {1, PrimeSet::of({2, 5})},     // 7
        {2, PrimeSet::of({5})},        // 8
        {3, PrimeSet::of({5})},        // 9
        {3, PrimeSet::of({2, 5, 7})},  // 10
        {4, PrimeSet::empty()},        // 11
    });
}

}  // namespace

TEST_CASE("dual complements both components")
{
    TsPerversity zero = TsPerversity::codim_table(
        {{0, PrimeSet::empty()}, {0, PrimeSet::empty()}, {0, PrimeSet::empty()}});
    TsPerversity d = dual(zero);
    CHECK(d.at_codim(2).p1 == 0);
    CHECK(d.at_codim(3).p1 == 1);
    CHECK(d.at_codim(3).p2 == PrimeSet::all_primes());
    CHECK(dual(d) == zero);

    // the codimension-7 row of the example table
    TsPerversity ex = example_table();
    CHECK(dual(ex).at_codim(7) == PervValue{4, PrimeSet::cofinite({2, 5})});
    CHECK(dual(dual(ex)) == ex);
}

TEST_CASE("dual on per-stratum perversities uses the supplied codimensions")
{
    TsPerversity p = TsPerversity::per_stratum({{"/cone", {1, PrimeSet::of({2})}}});
    TsPerversity d = dual_per_stratum(p, {{"/cone", 5}});
    CHECK(d.at_stratum("/cone", 5) == PervValue{2, PrimeSet::cofinite({2})});
    CHECK_THROWS_AS(dual_per_stratum(p, {}), error);
}

TEST_CASE("classify grades the constrained conditions")
{
    CHECK(classify(example_table()).label == PervClass::strongly_constrained);

    TsPerversity zero = TsPerversity::codim_table(
        {{0, PrimeSet::empty()}, {0, PrimeSet::empty()}, {0, PrimeSet::empty()}});
    CHECK(classify(zero).label == PervClass::strongly_constrained);

    // {3} at codimension 3 is not a superset of {2}: condition 5 fails
    TsPerversity bad = TsPerversity::codim_table(
        {{0, PrimeSet::empty()}, {0, PrimeSet::of({2})}, {1, PrimeSet::of({3})}});
    auto rep = classify(bad);
    CHECK(rep.label == PervClass::general);
    REQUIRE(rep.failures.size() == 1);
    CHECK(rep.failures[0].condition == 5);
    CHECK(rep.failures[0].codim == 2);

    // growth violation
    TsPerversity jump = TsPerversity::codim_table(
        {{0, PrimeSet::empty()}, {0, PrimeSet::empty()}, {2, PrimeSet::empty()}});
    CHECK(classify(jump).label == PervClass::general);
    CHECK(!classify(jump).growth);

    // constrained but not strongly: p1(2) = 1
    TsPerversity one = TsPerversity::codim_table(
        {{0, PrimeSet::empty()}, {1, PrimeSet::empty()}, {1, PrimeSet::empty()}});
    CHECK(classify(one).label == PervClass::constrained);

    // weakly constrained only: p1(2) = 3
    TsPerversity super_p = TsPerversity::codim_table(
        {{3, PrimeSet::empty()}, {3, PrimeSet::empty()}, {4, PrimeSet::empty()}});
    CHECK(classify(super_p).label == PervClass::weakly_constrained);

    // efficiency flags
    auto eff = classify(TsPerversity::codim_table(
        {{0, PrimeSet::empty()}, {0, PrimeSet::empty()}, {-1, PrimeSet::empty()}}));
    CHECK(!eff.growth);
    CHECK(eff.all_efficient);
    auto ineff = classify(TsPerversity::codim_table(
        {{2, PrimeSet::empty()}, {3, PrimeSet::empty()}, {4, PrimeSet::empty()}}));
    CHECK(!ineff.all_efficient);
}

TEST_CASE("strong constraint is preserved by duality")
{
    SplitMix64 rng(101);
    const std::vector<Int> primes{2, 3, 5, 7};
    int strongly = 0;
    for (int trial = 0; trial < 300; ++trial) {
        TsPerversity p = rng.flip() ? gen::random_codim_table(rng, 8, -2, 6, primes)
                                    : gen::random_strongly_constrained(rng, 8, primes);
        CHECK(dual(dual(p)) == p);
        bool s1 = classify(p).label == PervClass::strongly_constrained;
        bool s2 = classify(dual(p)).label == PervClass::strongly_constrained;
        CHECK(s1 == s2);
        strongly += s1;
    }
    CHECK(strongly > 50);  // the generator really produces strongly constrained tables
}

TEST_CASE("coefficient data validates its invariants")
{
    CHECK_NOTHROW(CoefficientData(FgModule::free_of_rank(1), FgModule::cyclic(4)));
    CHECK_THROWS_AS(CoefficientData(FgModule::zero(), FgModule::free_of_rank(1)), error);
    CHECK_THROWS_AS(CoefficientData(FgModule::cyclic(2), FgModule::cyclic(4)), error);
    CHECK_THROWS_AS(CoefficientData(direct_sum(FgModule::free_of_rank(1), FgModule::cyclic(3)),
                                    FgModule::cyclic(12)),
                    error);
}

TEST_CASE("adaptedness follows the three cutoff cases")
{
    auto table = [](Int p12, PrimeSet ps) {
        return TsPerversity::codim_table({{p12, PrimeSet::empty()}, {p12, ps}});
    };
    CoefficientData e1(FgModule::free_of_rank(1), FgModule::cyclic(4));
    CHECK(is_adapted(table(0, PrimeSet::of({2})), e1).adapted);
    CHECK(!is_adapted(table(0, PrimeSet::of({3})), e1).adapted);

    CoefficientData e2(FgModule::free_of_rank(1), FgModule::zero());
    CHECK(is_adapted(table(0, PrimeSet::empty()), e2).adapted);
    CHECK(!is_adapted(table(1, PrimeSet::empty()), e2).adapted);   // h0 nonzero
    CHECK(!is_adapted(table(-1, PrimeSet::empty()), e2).adapted);  // h0 not torsion

    CoefficientData e3(FgModule::zero(), FgModule::cyclic(2));
    CHECK(is_adapted(table(1, PrimeSet::of({3})), e3).adapted);
    CHECK(!is_adapted(table(1, PrimeSet::of({2})), e3).adapted);
    CHECK(is_adapted(table(-1, PrimeSet::of({2})),
                     CoefficientData(FgModule::cyclic(2), FgModule::zero()))
              .adapted);

    CHECK_THROWS_AS(is_adapted(table(2, PrimeSet::empty()), e2), error);
}

TEST_CASE("p_inverse on the example table matches the worked values")
{
    TsPerversity p = example_table();
    CHECK(p_inverse(p, 1, ProbePrime::prime(2)) == PInv{3});
    CHECK(p_inverse(p, 1, ProbePrime::prime(5)) == PInv{5});
    CHECK(p_inverse(p, 0, ProbePrime::prime(2)) == PInv{2});
    CHECK(p_inverse(p, 0, ProbePrime::prime(3)) == PInv{2});
    CHECK(p_inverse(p, 0, ProbePrime::f()) == PInv{2});
    CHECK(p_inverse(p, 1, ProbePrime::f()) == PInv{5});
    CHECK(p_inverse(p, 2, ProbePrime::prime(2)) == PInv{7});  // 2 in p2(7), p1(7) = 1
    CHECK(p_inverse(p, 4, ProbePrime::prime(5)) == PInv{9});
    CHECK(p_inverse(p, 4, ProbePrime::prime(3)) == PInv{11});
    CHECK(p_inverse(p, 5, ProbePrime::prime(3)).infinite());
    CHECK(p_inverse(p, 6, ProbePrime::prime(3)).infinite());

    TsPerversity flat = TsPerversity::codim_table(
        {{0, PrimeSet::empty()}, {0, PrimeSet::empty()}, {0, PrimeSet::empty()}});
    CHECK(p_inverse(flat, 0, ProbePrime::prime(7)) == PInv{2});

    CHECK_THROWS_AS(
        p_inverse(TsPerversity::codim_table({{0, PrimeSet::empty()}, {5, PrimeSet::empty()}}), 0,
                  ProbePrime::f()),
        error);
}

TEST_CASE("p_inverse satisfies the monotone characterization")
{
    SplitMix64 rng(211);
    const std::vector<Int> primes{2, 3, 5};
    for (int trial = 0; trial < 200; ++trial) {
        TsPerversity p = gen::random_strongly_constrained(rng, 8, primes);
        Int top = p.at_codim(8).p1;
        for (Int m = 0; m <= top + 2; ++m) {
            for (Int q : primes) {
                PInv v = p_inverse(p, m, ProbePrime::prime(q));
                for (int k = 2; k <= 8; ++k) {
                    bool rhs = p.at_codim(k).p1 >= m ||
                               (p.at_codim(k).p1 == m - 1 && p.at_codim(k).p2.contains(q));
                    bool lhs = !v.infinite() && k >= *v.codim;
                    CHECK(lhs == rhs);
                }
            }
            // with the formal element the characterization drops the torsion clause
            PInv vf = p_inverse(p, m, ProbePrime::f());
            for (int k = 2; k <= 8; ++k) {
                bool rhs = p.at_codim(k).p1 >= m;
                bool lhs = !vf.infinite() && k >= *vf.codim;
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("p_inverse weakly constrained extension reaches codimension one")
{
    TsPerversity super_p = TsPerversity::codim_table(
        {{3, PrimeSet::empty()}, {3, PrimeSet::empty()}, {4, PrimeSet::empty()}});
    CHECK(p_inverse(super_p, 2, ProbePrime::prime(2)) == PInv{1});
    CHECK(p_inverse(super_p, 0, ProbePrime::f()) == PInv{1});
    CHECK(p_inverse(super_p, 3, ProbePrime::f()) == PInv{2});
    CHECK(p_inverse(super_p, 4, ProbePrime::f()) == PInv{3});
}

TEST_CASE("perversity text forms")
{
    TsPerversity p =
        TsPerversity::codim_table({{-1, PrimeSet::empty()}, {0, PrimeSet::of({2})}});
    CHECK(p.to_text() == "perversity { 1 = (-1, {}); 2 = (0, {2}) }");
    CHECK(dual(p).to_text() == "perversity { 1 = (0, all); 2 = (0, all \\ {2}) }");
    CHECK_THROWS_AS(TsPerversity::codim_table({{0, PrimeSet::just_f()}}), error);
}
