/*
 * Machine checking of the axiom systems: per-stratum stalk/costalk axioms
 * (clauses a-d), and the support/cosupport dimension axioms driven by the
 * inverse perversity function, with a variant that restricts the dimension
 * counts to the singular part for weakly constrained perversities.
 */
#pragma once

#include "tsic/sheafcalc.hpp"

#include <json.hpp>

namespace tsic {

struct ClauseCheck {
    std::string clause;   // "a", "b", "c", "d", with sub-ids like "c.1"
    std::string stratum;  // empty for support clauses, which range over strata
    std::optional<int> degree;
    std::string probe;  // prime, "f", or empty
    bool pass = true;
    std::string detail;
};

struct AxiomReport {
    std::string axiom;
    bool pass = true;
    std::vector<ClauseCheck> checks;
    std::vector<std::string> notes;

    void add(ClauseCheck c);
    nlohmann::json to_json() const;
};

/* Test-only stalk/costalk replacements, keyed by stratum id. */
struct FaultInjection {
    std::map<std::string, GradedModule> stalks;
    std::map<std::string, GradedModule> costalks;
};

AxiomReport check_tax1prime(const SpacePtr& space, const TsPerversity& p,
                            const CoefficientData& coeff, const FaultInjection* faults = nullptr);

// max stratum dimension where the q-part of the degree-j stalk is nonzero;
// nullopt encodes an empty support (dimension -infinity)
std::optional<Int> support_dim(const SpacePtr& space, const TsPerversity& p,
                               const CoefficientData& coeff, int j, ProbePrime q,
                               const FaultInjection* faults = nullptr,
                               bool singular_only = false);

std::optional<Int> cosupport_dim(const SpacePtr& space, const TsPerversity& p,
                                 const CoefficientData& coeff, int j, ProbePrime q,
                                 const FaultInjection* faults = nullptr,
                                 bool singular_only = false);

/* Support/cosupport axioms.  The standard form requires a strongly
 * constrained perversity adapted to the coefficients and a space without
 * codimension-one strata; the singular_only variant accepts any weakly
 * constrained perversity and bounds dimensions inside the singular set. */
AxiomReport check_tax2(const SpacePtr& space, const TsPerversity& p, const CoefficientData& coeff,
                       bool singular_only = false, const FaultInjection* faults = nullptr);

// primes dividing any stalk or costalk torsion anywhere on the space
std::vector<Int> occurring_primes(const SpacePtr& space, const TsPerversity& p,
                                  const CoefficientData& coeff,
                                  const FaultInjection* faults = nullptr);

}  // namespace tsic
