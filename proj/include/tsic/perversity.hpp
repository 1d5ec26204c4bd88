/*
 * Torsion-sensitive perversities: codimension tables and per-stratum maps
 * valued in Z x (prime sets), the complementary dual, the constrained /
 * weakly / strongly constrained classification with per-condition breakdown,
 * adaptedness to coefficient data, and the inverse function that locates the
 * first codimension where a degree survives truncation.
 */
#pragma once

#include "tsic/fgmod.hpp"

namespace tsic {

struct PervValue {
    Int p1 = 0;
    PrimeSet p2;

    bool operator==(const PervValue&) const = default;
    std::string to_text(bool unicode = false) const;
};

class TsPerversity {
public:
    enum class Kind { codim_based, per_stratum };

    // values[i] is the value at codimension i+1; tables are total on 1..max
    static TsPerversity codim_table(std::vector<PervValue> values);
    static TsPerversity per_stratum(std::map<std::string, PervValue> values);

    Kind kind() const { return kind_; }
    bool codim_based() const { return kind_ == Kind::codim_based; }

    int max_codim() const;
    const PervValue& at_codim(int k) const;
    bool has_stratum(const std::string& id) const;
    // codim_based perversities answer by codimension, per-stratum ones by id
    const PervValue& at_stratum(const std::string& id, int codim) const;

    const std::vector<PervValue>& table() const;
    const std::map<std::string, PervValue>& stratum_values() const;

    bool operator==(const TsPerversity&) const = default;

    std::string to_text(bool unicode = false) const;

private:
    Kind kind_ = Kind::codim_based;
    std::vector<PervValue> table_;
    std::map<std::string, PervValue> values_;
};

// Dp(S) = (codim(S) - 2 - p1(S), complement of p2(S) among the primes)
TsPerversity dual(const TsPerversity& p);
TsPerversity dual_per_stratum(const TsPerversity& p, const std::map<std::string, int>& codims);

enum class PervClass { general, weakly_constrained, constrained, strongly_constrained };
std::string to_string(PervClass c);

struct ConditionFlag {
    int condition = 0;  // 1..5 as in the constrained definition
    int codim = 0;      // smaller end of the offending step (0 if global)
    std::string detail;
};

struct ClassifyReport {
    PervClass label = PervClass::general;
    bool growth = false;            // condition 2
    bool p1_at_2_in_range = false;  // condition 3
    bool p1_at_2_zero = false;      // strong variant of condition 3
    bool flat_inclusions = false;   // condition 4
    bool step_inclusions = false;   // condition 5
    std::vector<ConditionFlag> failures;
    std::vector<std::pair<int, bool>> efficiency;  // codim -> -1 <= p1 <= codim
    bool all_efficient = false;
};

ClassifyReport classify(const TsPerversity& p);

/* Stalk data of a ts-coefficient system: h1 is pure torsion and shares no
 * primes with the torsion of h0, so a prime set making h1 torsion and h0
 * torsion-free always exists. */
class CoefficientData {
public:
    CoefficientData(FgModule h0, FgModule h1);

    const FgModule& h0() const { return h0_; }
    const FgModule& h1() const { return h1_; }

    // the smallest prime set over which this is a coefficient system
    PrimeSet minimal_primes() const { return h1_.prime_support(); }

    bool operator==(const CoefficientData&) const = default;

private:
    FgModule h0_, h1_;
};

struct AdaptReport {
    bool adapted = false;
    std::vector<std::string> reasons;
};

// defined only for p1(2) in {-1, 0, 1}; anything else is an error
AdaptReport is_adapted(const TsPerversity& p, const CoefficientData& coeff);

/* Smallest codimension at which degree-m classes (or q-torsion one degree
 * higher) survive truncation; no such codimension is reported as infinity,
 * never as a large integer. */
struct PInv {
    std::optional<int> codim;

    bool infinite() const { return !codim.has_value(); }
    std::string to_text() const { return infinite() ? "inf" : std::to_string(*codim); }
    bool operator==(const PInv&) const = default;
};

PInv p_inverse(const TsPerversity& p, Int m, ProbePrime q);

/* The same search taken over all codimensions >= 1.  The singular-set
 * support axioms, which admit codimension-one strata, need this variant;
 * it agrees with p_inverse whenever the table is flat across codimension 1. */
PInv p_inverse_from_codim_one(const TsPerversity& p, Int m, ProbePrime q);

}  // namespace tsic
