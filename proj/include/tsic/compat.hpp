/*
 * Compatibility of perversities across a coarsening: the per-pair condition
 * checks, pullback and pushforward constructors, constrained
 * self-compatibility, and the invariance / necessity demonstration drivers
 * built on the suspension and join formulas.
 */
#pragma once

#include "tsic/axioms.hpp"

namespace tsic {

struct StratumRef {
    std::string id;
    int codim = 0;
    bool singular = true;

    bool operator==(const StratumRef&) const = default;
};

/* Pairs (stratum of the refinement -> stratum of the coarsening containing
 * it), total on the singular strata of the refinement. */
struct CoarseningMap {
    struct Pair {
        StratumRef source;  // singular stratum of the finer space
        StratumRef target;
    };
    std::vector<Pair> pairs;
};

void validate_map(const CoarseningMap& map);

struct CompatCondition {
    std::string source, target;
    std::string clause;  // "1", "1a", "1b", "2", "2a".."2d"
    bool pass = true;
    std::string detail;
};

struct CompatReport {
    bool compatible = true;
    std::vector<CompatCondition> conditions;

    void add(CompatCondition c);
    nlohmann::json to_json() const;
};

CompatReport check_E_compatible(const TsPerversity& p, const TsPerversity& p_bar,
                                const CoarseningMap& map, const CoefficientData& coeff);

// copies the coarse value over singular targets; over regular targets uses
// (0, smallest prime set making the coefficients a coefficient system)
TsPerversity pullback(const TsPerversity& p_bar, const CoarseningMap& map,
                      const CoefficientData& coeff);

struct PushforwardResult {
    bool pushable = false;
    std::optional<TsPerversity> result;
    std::vector<std::pair<std::string, std::string>> witnesses;  // conflicting source pairs
};

PushforwardResult pushforward(const TsPerversity& p, const CoarseningMap& map);

struct SelfCompatReport {
    bool compatible = false;
    int route = 0;  // 1 = constrained+adapted, 2 = fixed singular set, 0 = neither applies
    CompatReport details;

    nlohmann::json to_json() const;
};

SelfCompatReport self_compat_constrained(const TsPerversity& p, const CoarseningMap& map,
                                         const CoefficientData& coeff);

/* Invariance demo: the join of a sphere with X against the iterated
 * suspension, with (p1, p2) on the new strata; inner strata of X take their
 * values from base (by codimension). */
struct JoinSuspReport {
    GradedModule join_side, susp_side;
    bool equal = false;
    CompatReport induced_compat;

    nlohmann::json to_json() const;
};

JoinSuspReport demo_join_vs_susp(int k, const SpacePtr& x, Int p1, const PrimeSet& p2,
                                 const TsPerversity* base = nullptr);

/* Necessity demo, refined vertex inside a coarse singular stratum: compares
 * the vertex stalk of the coarse stratification of R^{k+1} x cone(L) with
 * the refined cone-on-join stalk. */
struct SingInSingReport {
    GradedModule coarse_stalk, refined_stalk;
    bool match = false;
    std::vector<int> mismatch_degrees;
    bool lower_bound = false, upper_bound = false;  // condition 1 range
    bool clause_1a = false, clause_1b = false;      // vacuously true when not applicable
    bool condition1 = false;

    nlohmann::json to_json() const;
};

SingInSingReport demo_necessity_sing_in_sing(int k, const SpacePtr& link, const PervValue& p_vertex,
                                             const PervValue& p_bar,
                                             const TsPerversity* base = nullptr);

/* Necessity demo, refined stratum inside a regular stratum: the link is
 * forced to be a homology sphere, so the stalk is a truncation of the
 * sphere-with-coefficients table; compares against the coefficient stalk. */
struct SingInRegReport {
    GradedModule link_hyper, refined_stalk, coeff_stalk;
    bool match = false;
    int scenario = 0;  // 1..5 when one of the matching scenarios applies
    std::string clause;  // condition 2 sub-clause governing this p1, if any

    nlohmann::json to_json() const;
};

SingInRegReport demo_necessity_sing_in_reg(int k, const CoefficientData& coeff,
                                           const PervValue& p_stratum);

}  // namespace tsic
