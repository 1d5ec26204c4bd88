#include "tsic/compat.hpp"

#include "tsic/random_instances.hpp"
#include "tsic/rng.hpp"

#include <doctest.h>

using namespace tsic;

namespace {

SpacePtr leaf_z_z6()
{
    return SpaceExpr::leaf(
        "L", 1, GradedModule{{0, FgModule::free_of_rank(1)}, {1, FgModule::cyclic(6)}});
}

CoefficientData unit_coeff()
{
    return CoefficientData(FgModule::free_of_rank(1), FgModule::zero());
}

CoarseningMap one_pair(int src_codim, int dst_codim, bool dst_singular)
{
    CoarseningMap m;
    m.pairs.push_back({{"/s", src_codim, true}, {"/t", dst_singular ? dst_codim : 0, dst_singular}});
    return m;
}

TsPerversity single(const std::string& id, PervValue v)
{
    return TsPerversity::per_stratum({{id, v}});
}

}  // namespace

TEST_CASE("compatibility over a singular target")
{
    CoefficientData e = unit_coeff();
    // equal codimension and equal values: both inclusion clauses apply
    auto r = check_E_compatible(single("/s", {0, PrimeSet::empty()}),
                                single("/t", {0, PrimeSet::empty()}), one_pair(2, 2, true), e);
    CHECK(r.compatible);

    // {3} vs {2} on a proper coarsening with maximal cutoff: clause 1b fails
    auto r2 = check_E_compatible(single("/s", {2, PrimeSet::of({3})}),
                                 single("/t", {0, PrimeSet::of({2})}), one_pair(4, 2, true), e);
    CHECK(!r2.compatible);
    bool b_failed = false;
    for (const auto& c : r2.conditions)
        if (c.clause == "1b" && !c.pass)
            b_failed = true;
    CHECK(b_failed);

    // cutoff outside the band: condition 1 fails
    auto r3 = check_E_compatible(single("/s", {5, PrimeSet::empty()}),
                                 single("/t", {0, PrimeSet::empty()}), one_pair(4, 2, true), e);
    CHECK(!r3.compatible);

    // equal cutoffs with growing prime sets: compatible
    auto r4 = check_E_compatible(single("/s", {0, PrimeSet::of({2, 3})}),
                                 single("/t", {0, PrimeSet::of({2})}), one_pair(4, 2, true), e);
    CHECK(r4.compatible);

    // equal cutoffs with {3} not containing {2}: clause 1a fails
    auto r5 = check_E_compatible(single("/s", {0, PrimeSet::of({3})}),
                                 single("/t", {0, PrimeSet::of({2})}), one_pair(4, 2, true), e);
    CHECK(!r5.compatible);
    bool a_failed = false;
    for (const auto& c : r5.conditions)
        if (c.clause == "1a" && !c.pass)
            a_failed = true;
    CHECK(a_failed);
}

TEST_CASE("compatibility over a regular target")
{
    CoefficientData e = unit_coeff();
    // p1 below -1 fails condition 2
    auto r = check_E_compatible(single("/s", {-2, PrimeSet::empty()}),
                                single("/t", {0, PrimeSet::empty()}), one_pair(3, 0, false), e);
    CHECK(!r.compatible);

    // interior cutoff with free coefficients: fine
    auto r2 = check_E_compatible(single("/s", {1, PrimeSet::empty()}),
                                 single("/t", {0, PrimeSet::empty()}), one_pair(4, 0, false), e);
    CHECK(r2.compatible);

    // cutoff at codim-2 needs h0 torsion-free by p2
    CoefficientData torsion_h0(FgModule::cyclic(2), FgModule::zero());
    auto r3 = check_E_compatible(single("/s", {2, PrimeSet::of({2})}),
                                 single("/t", {0, PrimeSet::empty()}), one_pair(4, 0, false),
                                 torsion_h0);
    CHECK(!r3.compatible);
    auto r4 = check_E_compatible(single("/s", {2, PrimeSet::of({3})}),
                                 single("/t", {0, PrimeSet::empty()}), one_pair(4, 0, false),
                                 torsion_h0);
    CHECK(r4.compatible);

    // top cutoff needs h0 = 0
    CoefficientData h1_only(FgModule::zero(), FgModule::cyclic(2));
    auto r5 = check_E_compatible(single("/s", {3, PrimeSet::of({3})}),
                                 single("/t", {0, PrimeSet::empty()}), one_pair(4, 0, false),
                                 h1_only);
    CHECK(r5.compatible);
    auto r6 = check_E_compatible(single("/s", {3, PrimeSet::of({2})}),
                                 single("/t", {0, PrimeSet::empty()}), one_pair(4, 0, false),
                                 h1_only);
    CHECK(!r6.compatible);  // h1 not torsion-free by {2}
}

TEST_CASE("pullback copies singular values and synthesizes regular ones")
{
    CoefficientData e(FgModule::free_of_rank(1), FgModule::cyclic(12));
    CoarseningMap m;
    m.pairs.push_back({{"/a", 2, true}, {"/x", 2, true}});
    m.pairs.push_back({{"/b", 3, true}, {"/y", 0, false}});
    TsPerversity bar = TsPerversity::per_stratum({{"/x", {1, PrimeSet::of({5})}}});

    TsPerversity pulled = pullback(bar, m, e);
    CHECK(pulled.at_stratum("/a", 2) == PervValue{1, PrimeSet::of({5})});
    CHECK(pulled.at_stratum("/b", 3) == PervValue{0, PrimeSet::of({2, 3})});

    // the result is always compatible with the coarse perversity
    CHECK(check_E_compatible(pulled, bar, m, e).compatible);

    // codimension-one into regular is rejected
    CoarseningMap bad;
    bad.pairs.push_back({{"/c", 1, true}, {"/y", 0, false}});
    CHECK_THROWS_AS(pullback(bar, bad, e), error);
}

TEST_CASE("pullback compatibility holds on random instances")
{
    SplitMix64 rng(909);
    const std::vector<Int> primes{2, 3, 5};
    for (int trial = 0; trial < 100; ++trial) {
        CoefficientData e = gen::random_coefficients(rng, primes);
        CoarseningMap m;
        std::map<std::string, PervValue> bar_vals;
        int pairs = 1 + static_cast<int>(rng.below(4));
        for (int i = 0; i < pairs; ++i) {
            std::string src = "/s" + std::to_string(i);
            int src_codim = static_cast<int>(rng.range(2, 6));
            if (rng.flip()) {
                std::string dst = "/t" + std::to_string(i);
                int dst_codim = static_cast<int>(rng.range(1, src_codim));
                m.pairs.push_back({{src, src_codim, true}, {dst, dst_codim, true}});
                bar_vals[dst] = {rng.range(-2, 5), gen::random_prime_set(rng, primes, true, false)};
            } else {
                m.pairs.push_back({{src, src_codim, true}, {"/reg", 0, false}});
            }
        }
        TsPerversity bar = TsPerversity::per_stratum(bar_vals);
        TsPerversity pulled = pullback(bar, m, e);
        CHECK(check_E_compatible(pulled, bar, m, e).compatible);
    }
}

TEST_CASE("pushforward needs agreement among same-dimension sources")
{
    // codimension-based tables always push
    TsPerversity table = TsPerversity::codim_table({{0, PrimeSet::empty()}, {0, PrimeSet::of({2})}});
    CoarseningMap m = one_pair(2, 2, true);
    auto r = pushforward(table, m);
    CHECK(r.pushable);
    CHECK(*r.result == table);

    // a single stratum of matching dimension defines the value
    CoarseningMap m2;
    m2.pairs.push_back({{"/a", 2, true}, {"/x", 2, true}});
    auto r2 = pushforward(single("/a", {1, PrimeSet::of({3})}), m2);
    CHECK(r2.pushable);
    CHECK(r2.result->at_stratum("/x", 2) == PervValue{1, PrimeSet::of({3})});

    // two same-dimension sources with different values: witnesses reported
    CoarseningMap m3;
    m3.pairs.push_back({{"/a", 2, true}, {"/x", 2, true}});
    m3.pairs.push_back({{"/b", 2, true}, {"/x", 2, true}});
    auto r3 = pushforward(TsPerversity::per_stratum({{"/a", {1, PrimeSet::empty()}},
                                                     {"/b", {2, PrimeSet::empty()}}}),
                          m3);
    CHECK(!r3.pushable);
    REQUIRE(r3.witnesses.size() == 1);
    CHECK(r3.witnesses[0].first == "/a");
    CHECK(r3.witnesses[0].second == "/b");

    // a singular target with no equal-dimension source cannot receive a value
    CoarseningMap m4;
    m4.pairs.push_back({{"/a", 4, true}, {"/x", 2, true}});
    auto r4 = pushforward(single("/a", {1, PrimeSet::empty()}), m4);
    CHECK(!r4.pushable);
}

TEST_CASE("constrained self-compatibility picks its route")
{
    const std::vector<Int> primes{2, 3, 5};
    CoefficientData e(FgModule::free_of_rank(1), FgModule::cyclic(4));

    TsPerversity constrained = TsPerversity::codim_table({{-1, PrimeSet::of({2})},
                                                          {0, PrimeSet::of({2})},
                                                          {0, PrimeSet::of({2})},
                                                          {1, PrimeSet::of({2})}});
    REQUIRE(classify(constrained).label == PervClass::strongly_constrained);
    REQUIRE(is_adapted(constrained, e).adapted);

    CoarseningMap mixed;
    mixed.pairs.push_back({{"/a", 4, true}, {"/x", 2, true}});
    mixed.pairs.push_back({{"/b", 3, true}, {"/reg", 0, false}});
    auto r = self_compat_constrained(constrained, mixed, e);
    CHECK(r.route == 1);
    CHECK(r.compatible);

    // weakly constrained with everything singular-to-singular: route 2
    TsPerversity weakly = TsPerversity::codim_table({{2, PrimeSet::empty()},
                                                     {2, PrimeSet::of({2})},
                                                     {3, PrimeSet::empty()},
                                                     {3, PrimeSet::empty()}});
    REQUIRE(classify(weakly).label == PervClass::weakly_constrained);
    CoarseningMap sing_only;
    sing_only.pairs.push_back({{"/a", 4, true}, {"/x", 2, true}});
    auto r2 = self_compat_constrained(weakly, sing_only, e);
    CHECK(r2.route == 2);
    CHECK(r2.compatible);

    // weakly constrained over a regular target: no route, condition 2 fails
    TsPerversity high = TsPerversity::codim_table({{3, PrimeSet::empty()},
                                                   {3, PrimeSet::empty()},
                                                   {3, PrimeSet::empty()},
                                                   {3, PrimeSet::empty()}});
    auto r3 = self_compat_constrained(high, mixed, e);
    CHECK(r3.route == 0);
    CHECK(!r3.compatible);
}

TEST_CASE("join against iterated suspension, with the induced coarsening")
{
    auto rep = demo_join_vs_susp(1, leaf_z_z6(), 0, PrimeSet::of({3}));
    CHECK(rep.equal);
    CHECK(rep.induced_compat.compatible);
    CHECK(rep.join_side == GradedModule{{0, FgModule::free_of_rank(1)},
                                        {1, FgModule::cyclic(3)},
                                        {3, FgModule::cyclic(2)}});

    // inactive truncation: both sides give the unshifted answer
    auto rep2 = demo_join_vs_susp(2, leaf_z_z6(), leaf_z_z6()->dim() + 1, PrimeSet::empty());
    CHECK(rep2.equal);

    // a point as base: everything collapses to a single class
    SpacePtr pt = SpaceExpr::leaf("pt", 0, GradedModule{{0, FgModule::free_of_rank(1)}});
    auto rep3 = demo_join_vs_susp(1, pt, 0, PrimeSet::empty());
    CHECK(rep3.equal);
    CHECK(rep3.join_side == GradedModule{{0, FgModule::free_of_rank(1)}});

    // a base with its own singular stratum, values taken from a table
    TsPerversity base = TsPerversity::codim_table({{0, PrimeSet::empty()},
                                                   {0, PrimeSet::of({2})},
                                                   {0, PrimeSet::of({2})},
                                                   {1, PrimeSet::of({2})},
                                                   {1, PrimeSet::of({2})}});
    auto rep4 = demo_join_vs_susp(2, SpaceExpr::susp(leaf_z_z6()), 1, PrimeSet::of({2}), &base);
    CHECK(rep4.equal);
    CHECK(rep4.induced_compat.compatible);
}

TEST_CASE("necessity demo in the singular-in-singular setting")
{
    PervValue bar{0, PrimeSet::of({2})};

    // compatible vertex value: the stalks agree
    auto ok = demo_necessity_sing_in_sing(1, leaf_z_z6(), {2, PrimeSet::of({2})}, bar);
    CHECK(ok.match);
    CHECK(ok.condition1);
    CHECK(ok.coarse_stalk ==
          GradedModule{{0, FgModule::free_of_rank(1)}, {1, FgModule::cyclic(2)}});
    CHECK(ok.refined_stalk == ok.coarse_stalk);

    // clause 1b violated: extra torsion survives in degree 3
    auto bad_b = demo_necessity_sing_in_sing(1, leaf_z_z6(), {2, PrimeSet::of({2, 3})}, bar);
    CHECK(!bad_b.match);
    CHECK(!bad_b.condition1);
    CHECK(!bad_b.clause_1b);
    CHECK(bad_b.refined_stalk == GradedModule{{0, FgModule::free_of_rank(1)},
                                              {1, FgModule::cyclic(2)},
                                              {3, FgModule::cyclic(3)}});
    CHECK(bad_b.coarse_stalk ==
          GradedModule{{0, FgModule::free_of_rank(1)}, {1, FgModule::cyclic(2)}});

    // lower bound violated: the truncation kills surviving torsion
    auto bad_lo = demo_necessity_sing_in_sing(1, leaf_z_z6(), {-1, PrimeSet::of({2})}, bar);
    CHECK(!bad_lo.match);
    CHECK(!bad_lo.lower_bound);
    CHECK(bad_lo.refined_stalk.is_zero());
    CHECK(std::find(bad_lo.mismatch_degrees.begin(), bad_lo.mismatch_degrees.end(), 1) !=
          bad_lo.mismatch_degrees.end());

    // k = 0 goes through the plain suspension
    auto k0 = demo_necessity_sing_in_sing(0, leaf_z_z6(), {1, PrimeSet::of({2})}, bar);
    CHECK(k0.match);
}

TEST_CASE("sufficiency direction on random singular-in-singular instances")
{
    SplitMix64 rng(31337);
    const std::vector<Int> primes{2, 3, 5};
    int mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
        SpacePtr L = gen::random_leaf(rng, 3, primes);
        int k = static_cast<int>(rng.range(0, 2));
        PervValue bar{rng.range(-1, L->dim()), gen::random_prime_set(rng, primes, false, false)};
        PervValue vertex{rng.range(bar.p1 - 1, bar.p1 + k + 2),
                         gen::random_prime_set(rng, primes, false, false)};
        auto rep = demo_necessity_sing_in_sing(k, L, vertex, bar);
        if (rep.condition1)
            CHECK(rep.match);
        if (!rep.match)
            ++mismatches;
    }
    CHECK(mismatches > 20);  // violations really do produce witnesses
}

TEST_CASE("necessity demo in the singular-in-regular setting")
{
    // interior cutoff away from the sphere degrees: match
    CoefficientData free1(FgModule::free_of_rank(1), FgModule::zero());
    auto good = demo_necessity_sing_in_reg(4, free1, {1, PrimeSet::empty()});
    CHECK(good.match);
    CHECK(good.scenario == 3);

    // cutoff -1 with free h0: the truncation empties the stalk
    auto bad = demo_necessity_sing_in_reg(3, free1, {-1, PrimeSet::of({2})});
    CHECK(!bad.match);
    CHECK(bad.scenario == 0);
    CHECK(bad.refined_stalk.is_zero());

    // a zero-sphere link doubles the coefficients: never a match
    CoefficientData with_torsion(FgModule::free_of_rank(1), FgModule::cyclic(2));
    for (Int p1 = -2; p1 <= 2; ++p1) {
        auto rep = demo_necessity_sing_in_reg(1, with_torsion, {p1, PrimeSet::of({2})});
        CHECK(!rep.match);
    }

    // k = 2 square: cutoff 0 needs h1 torsion and h0 torsion-free
    CoefficientData mixed(direct_sum(FgModule::free_of_rank(1), FgModule::cyclic(3)),
                          FgModule::cyclic(2));
    auto k2 = demo_necessity_sing_in_reg(2, mixed, {0, PrimeSet::of({2})});
    CHECK(k2.match);
    CHECK(k2.scenario == 2);
    auto k2bad = demo_necessity_sing_in_reg(2, mixed, {0, PrimeSet::of({2, 3})});
    CHECK(!k2bad.match);  // h0 has 3-torsion
}

TEST_CASE("singular-in-regular matches exactly on the five scenarios")
{
    std::vector<CoefficientData> family = {
        CoefficientData(FgModule::free_of_rank(1), FgModule::zero()),
        CoefficientData(FgModule::free_of_rank(1), FgModule::cyclic(2)),
        CoefficientData(FgModule::zero(), FgModule::cyclic(2)),
        CoefficientData(direct_sum(FgModule::free_of_rank(1), FgModule::cyclic(3)),
                        FgModule::cyclic(2)),
    };
    std::vector<PrimeSet> sets = {PrimeSet::empty(), PrimeSet::of({2}), PrimeSet::of({3}),
                                  PrimeSet::of({2, 3}), PrimeSet::all_primes()};
    for (int k : {3, 4})
        for (const auto& e : family)
            for (Int p1 = -2; p1 <= k + 1; ++p1)
                for (const auto& ps : sets) {
                    auto rep = demo_necessity_sing_in_reg(k, e, {p1, ps});
                    bool expected =
                        (p1 == -1 && e.h1().is_zero() && e.h0().torsion_by(ps)) ||
                        (p1 == 0 && e.h1().torsion_by(ps)) || (1 <= p1 && p1 <= k - 3) ||
                        (p1 == k - 2 && e.h0().torsion_free_by(ps)) ||
                        (p1 == k - 1 && e.h0().is_zero() && e.h1().torsion_free_by(ps));
                    CHECK(rep.match == expected);
                    CHECK((rep.scenario != 0) == expected);
                }
}
