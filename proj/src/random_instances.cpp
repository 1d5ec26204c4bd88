#include "tsic/random_instances.hpp"

#include <algorithm>

namespace tsic::gen {

FgModule random_module(SplitMix64& rng, Int max_rank, const std::vector<Int>& primes, int max_exp,
                       int max_summands)
{
    std::vector<PrimePower> torsion;
    int summands = static_cast<int>(rng.below(max_summands + 1));
    for (int i = 0; i < summands; ++i)
        torsion.push_back({primes[rng.below(primes.size())],
                           static_cast<int>(rng.range(1, max_exp))});
    return FgModule(rng.range(0, max_rank), std::move(torsion));
}

PrimeSet random_prime_set(SplitMix64& rng, const std::vector<Int>& primes, bool allow_cofinite,
                          bool allow_f)
{
    std::vector<Int> chosen;
    for (Int p : primes)
        if (rng.flip())
            chosen.push_back(p);
    bool with_f = allow_f && rng.flip();
    if (allow_cofinite && rng.flip())
        return PrimeSet::cofinite(std::move(chosen), with_f);
    return PrimeSet::finite(std::move(chosen), with_f);
}

GradedModule random_graded(SplitMix64& rng, int max_degree, Int max_rank,
                           const std::vector<Int>& primes, int max_exp)
{
    GradedModule g;
    g.set(0, direct_sum(FgModule::free_of_rank(1),
                        random_module(rng, 0, primes, max_exp, 1)));
    for (int d = 1; d <= max_degree; ++d)
        if (rng.flip())
            g.set(d, random_module(rng, max_rank, primes, max_exp, 2));
    return g;
}

SpacePtr random_leaf(SplitMix64& rng, int max_dim, const std::vector<Int>& primes)
{
    int dim = static_cast<int>(rng.range(0, max_dim));
    return SpaceExpr::leaf("L", dim, random_graded(rng, dim, 2, primes, 2));
}

SpacePtr random_compact_space(SplitMix64& rng, int max_wrappers, int max_leaf_dim,
                              const std::vector<Int>& primes, bool forbid_codim1)
{
    int min_dim = forbid_codim1 ? 1 : 0;
    SpacePtr x = random_leaf(rng, max_leaf_dim, primes);
    if (forbid_codim1 && x->dim() == 0)
        x = SpaceExpr::leaf("L", 1, GradedModule{{0, FgModule::free_of_rank(1)}});
    int wrappers = static_cast<int>(rng.below(max_wrappers + 1));
    for (int i = 0; i < wrappers; ++i) {
        if (x->dim() < min_dim)
            break;
        if (rng.flip())
            x = SpaceExpr::susp(x);
        else
            x = SpaceExpr::sphere_join(static_cast<int>(rng.range(1, 2)), x);
    }
    return x;
}

SpacePtr random_space(SplitMix64& rng, int max_wrappers, int max_leaf_dim,
                      const std::vector<Int>& primes, bool forbid_codim1)
{
    SpacePtr x = random_compact_space(rng, max_wrappers, max_leaf_dim, primes, forbid_codim1);
    // a cone and/or products may sit outside the compact core
    if (rng.below(4) == 0 && (!forbid_codim1 || x->dim() >= 1))
        x = SpaceExpr::cone(x);
    if (rng.below(4) == 0)
        x = SpaceExpr::prod_r(static_cast<int>(rng.range(1, 2)), x);
    return x;
}

TsPerversity random_codim_table(SplitMix64& rng, int max_codim, Int p1_lo, Int p1_hi,
                                const std::vector<Int>& primes)
{
    std::vector<PervValue> values;
    for (int k = 1; k <= max_codim; ++k)
        values.push_back({rng.range(p1_lo, p1_hi), random_prime_set(rng, primes, true, false)});
    return TsPerversity::codim_table(std::move(values));
}

namespace {

TsPerversity random_constrained_walk(SplitMix64& rng, int max_codim, PrimeSet p2_at_2,
                                     const PrimeSet& avoid, const std::vector<Int>& primes)
{
    // p1 walks by 0/+1 steps from 0 at codimension 2; p2 grows along flat
    // runs and shrinks at each step up, staying clear of the avoided primes
    std::vector<PervValue> values(std::max(max_codim, 2));
    values[1] = {0, p2_at_2};
    values[0] = {rng.flip() ? -1 : 0, rng.flip() ? p2_at_2 : PrimeSet::empty()};
    if (values[0].p1 == -1 && !values[0].p2.subset_of(p2_at_2))
        values[0].p2 = PrimeSet::empty();
    for (int k = 3; k <= max_codim; ++k) {
        const PervValue& prev = values[k - 2];
        PervValue next;
        if (rng.flip()) {
            next.p1 = prev.p1;
            next.p2 = prev.p2;
            for (Int p : primes)  // may grow
                if (!avoid.contains(p) && !next.p2.contains(p) && rng.below(3) == 0)
                    next.p2 = set_union(next.p2, PrimeSet::of({p}));
        } else {
            next.p1 = prev.p1 + 1;
            next.p2 = prev.p2;
            for (Int p : primes)  // may shrink
                if (next.p2.contains(p) && rng.flip())
                    next.p2 = set_intersect(next.p2, PrimeSet::of({p}).complement_primes());
        }
        values[k - 1] = next;
    }
    // keep the codimension-one step legal in both directions
    if (values[0].p1 == values[1].p1) {
        if (!values[0].p2.subset_of(values[1].p2))
            values[0].p2 = PrimeSet::empty();
    } else if (!values[1].p2.subset_of(values[0].p2)) {
        values[0].p2 = set_union(values[0].p2, values[1].p2);
    }
    return TsPerversity::codim_table(std::move(values));
}

}  // namespace

TsPerversity random_strongly_constrained(SplitMix64& rng, int max_codim,
                                         const std::vector<Int>& primes)
{
    PrimeSet p2 = random_prime_set(rng, primes, false, false);
    return random_constrained_walk(rng, max_codim, p2, PrimeSet::empty(), primes);
}

TsPerversity random_strongly_constrained_adapted(SplitMix64& rng, int max_codim,
                                                 const CoefficientData& coeff,
                                                 const std::vector<Int>& primes)
{
    PrimeSet p2 = coeff.minimal_primes();
    PrimeSet avoid = coeff.h0().prime_support();
    for (Int p : primes)
        if (!avoid.contains(p) && !p2.contains(p) && rng.flip())
            p2 = set_union(p2, PrimeSet::of({p}));
    return random_constrained_walk(rng, max_codim, p2, avoid, primes);
}

CoefficientData random_coefficients(SplitMix64& rng, const std::vector<Int>& primes)
{
    // split the primes between h0 torsion and h1 so the supports are disjoint
    std::vector<Int> for_h1, for_h0;
    for (Int p : primes)
        (rng.flip() ? for_h1 : for_h0).push_back(p);
    FgModule h1 = for_h1.empty() ? FgModule::zero()
                                 : random_module(rng, 0, for_h1, 2, 2);
    FgModule h0 = FgModule::free_of_rank(rng.range(0, 2));
    if (!for_h0.empty())
        h0 = direct_sum(h0, random_module(rng, 0, for_h0, 2, 1));
    if (h0.is_zero() && h1.is_zero())
        h0 = FgModule::free_of_rank(1);
    return CoefficientData(std::move(h0), std::move(h1));
}

}  // namespace tsic::gen
