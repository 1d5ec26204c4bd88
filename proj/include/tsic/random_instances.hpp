/* Seeded generators for modules, prime sets, perversity tables, and grammar
 * spaces; shared by the randomized demo sweeps and the acceptance suite. */
#pragma once

#include "tsic/compat.hpp"
#include "tsic/rng.hpp"

namespace tsic::gen {

FgModule random_module(SplitMix64& rng, Int max_rank, const std::vector<Int>& primes, int max_exp,
                       int max_summands);

// random finite or cofinite subset, optionally allowed to contain f
PrimeSet random_prime_set(SplitMix64& rng, const std::vector<Int>& primes, bool allow_cofinite,
                          bool allow_f);

GradedModule random_graded(SplitMix64& rng, int max_degree, Int max_rank,
                           const std::vector<Int>& primes, int max_exp);

SpacePtr random_leaf(SplitMix64& rng, int max_dim, const std::vector<Int>& primes);

// compact chain of susp / join wrappers over a random leaf; avoids
// codimension-one strata when forbid_codim1 is set
SpacePtr random_compact_space(SplitMix64& rng, int max_wrappers, int max_leaf_dim,
                              const std::vector<Int>& primes, bool forbid_codim1);

// chain of depth <= max_wrappers drawn from susp/join/cone/prod over a leaf
SpacePtr random_space(SplitMix64& rng, int max_wrappers, int max_leaf_dim,
                      const std::vector<Int>& primes, bool forbid_codim1);

TsPerversity random_codim_table(SplitMix64& rng, int max_codim, Int p1_lo, Int p1_hi,
                                const std::vector<Int>& primes);

TsPerversity random_strongly_constrained(SplitMix64& rng, int max_codim,
                                         const std::vector<Int>& primes);

// strongly constrained table with p2(2) containing primes(h1) and avoiding
// the torsion primes of h0, so the result is adapted to the coefficients
TsPerversity random_strongly_constrained_adapted(SplitMix64& rng, int max_codim,
                                                 const CoefficientData& coeff,
                                                 const std::vector<Int>& primes);

CoefficientData random_coefficients(SplitMix64& rng, const std::vector<Int>& primes);

}  // namespace tsic::gen
