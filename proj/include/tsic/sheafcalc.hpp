/*
 * The calculator for ts-Deligne sheaves on grammar spaces: torsion-tipped
 * truncation, hypercohomology by structural recursion (product, cone,
 * suspension, sphere-join formulas), and stalks / costalks at every stratum.
 *
 * Hypercohomology is taken with closed supports; on a cone root it equals
 * the vertex stalk and on a product root it equals the inner space's value.
 */
#pragma once

#include "tsic/perversity.hpp"
#include "tsic/space.hpp"

namespace tsic {

// keep degrees <= p1, keep only p2-torsion at degree p1 + 1, kill the rest;
// p2 must not contain f
GradedModule truncate(const GradedModule& g, Int p1, const PrimeSet& p2);

// exact hypercohomology of the ts-Deligne sheaf; the perversity must cover
// every singular stratum
GradedModule hyper(const SpacePtr& space, const TsPerversity& p);

// stalk cohomology on the given stratum (constant along it); regular strata
// report the coefficient stalk
GradedModule stalk(const SpacePtr& space, const TsPerversity& p, const std::string& stratum_id,
                   const CoefficientData& coeff);

// costalk cohomology H^*(f_x^! P); regular strata report the coefficient
// stalk shifted into degree dim(space)
GradedModule costalk(const SpacePtr& space, const TsPerversity& p, const std::string& stratum_id,
                     const CoefficientData& coeff);

GradedModule coefficient_stalk(const CoefficientData& coeff);

}  // namespace tsic
