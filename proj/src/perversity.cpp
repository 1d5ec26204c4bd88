#include "tsic/perversity.hpp"

#include <sstream>

namespace tsic {

std::string PervValue::to_text(bool unicode) const
{
    std::ostringstream out;
    out << "(" << p1 << ", " << p2.to_text(unicode) << ")";
    return out.str();
}

TsPerversity TsPerversity::codim_table(std::vector<PervValue> values)
{
    if (values.empty())
        throw error("perversity table must cover codimension 1 at least");
    for (const auto& v : values)
        if (v.p2.has_f())
            throw error("perversity second components never contain f");
    TsPerversity p;
    p.kind_ = Kind::codim_based;
    p.table_ = std::move(values);
    return p;
}

TsPerversity TsPerversity::per_stratum(std::map<std::string, PervValue> values)
{
    for (const auto& [id, v] : values)
        if (v.p2.has_f())
            throw error("perversity second components never contain f");
    TsPerversity p;
    p.kind_ = Kind::per_stratum;
    p.values_ = std::move(values);
    return p;
}

int TsPerversity::max_codim() const
{
    if (kind_ != Kind::codim_based)
        throw error("max_codim applies to codimension-based perversities");
    return static_cast<int>(table_.size());
}

const PervValue& TsPerversity::at_codim(int k) const
{
    if (kind_ != Kind::codim_based)
        throw error("at_codim applies to codimension-based perversities");
    if (k < 1 || k > static_cast<int>(table_.size()))
        throw error("perversity table has no value at codimension " + std::to_string(k));
    return table_[k - 1];
}

bool TsPerversity::has_stratum(const std::string& id) const
{
    return values_.count(id) > 0;
}

const PervValue& TsPerversity::at_stratum(const std::string& id, int codim) const
{
    if (kind_ == Kind::codim_based)
        return at_codim(codim);
    auto it = values_.find(id);
    if (it == values_.end())
        throw error("missing perversity value for stratum " + id);
    return it->second;
}

const std::vector<PervValue>& TsPerversity::table() const
{
    if (kind_ != Kind::codim_based)
        throw error("table applies to codimension-based perversities");
    return table_;
}

const std::map<std::string, PervValue>& TsPerversity::stratum_values() const
{
    if (kind_ != Kind::per_stratum)
        throw error("stratum_values applies to per-stratum perversities");
    return values_;
}

std::string TsPerversity::to_text(bool unicode) const
{
    std::ostringstream out;
    out << "perversity { ";
    bool first = true;
    if (kind_ == Kind::codim_based) {
        for (size_t i = 0; i < table_.size(); ++i) {
            if (!first)
                out << "; ";
            first = false;
            out << (i + 1) << " = " << table_[i].to_text(unicode);
        }
    } else {
        for (const auto& [id, v] : values_) {
            if (!first)
                out << "; ";
            first = false;
            out << id << " = " << v.to_text(unicode);
        }
    }
    out << " }";
    return out.str();
}

TsPerversity dual(const TsPerversity& p)
{
    if (!p.codim_based())
        throw error("dual without codimension data applies to codimension-based perversities");
    std::vector<PervValue> out;
    for (int k = 1; k <= p.max_codim(); ++k) {
        const auto& v = p.at_codim(k);
        out.push_back({k - 2 - v.p1, v.p2.complement_primes()});
    }
    return TsPerversity::codim_table(std::move(out));
}

TsPerversity dual_per_stratum(const TsPerversity& p, const std::map<std::string, int>& codims)
{
    std::map<std::string, PervValue> out;
    for (const auto& [id, v] : p.stratum_values()) {
        auto it = codims.find(id);
        if (it == codims.end())
            throw error("no codimension supplied for stratum " + id);
        out[id] = {it->second - 2 - v.p1, v.p2.complement_primes()};
    }
    return TsPerversity::per_stratum(std::move(out));
}

std::string to_string(PervClass c)
{
    switch (c) {
    case PervClass::general: return "general";
    case PervClass::weakly_constrained: return "weakly_constrained";
    case PervClass::constrained: return "constrained";
    case PervClass::strongly_constrained: return "strongly_constrained";
    }
    return "?";
}

ClassifyReport classify(const TsPerversity& p)
{
    if (!p.codim_based())
        throw error("classify applies to codimension-based perversities");
    int max = p.max_codim();
    if (max < 2)
        throw error("classify needs a table reaching codimension 2");

    ClassifyReport r;
    r.growth = r.flat_inclusions = r.step_inclusions = true;
    for (int k = 1; k < max; ++k) {
        Int a = p.at_codim(k).p1, b = p.at_codim(k + 1).p1;
        if (!(a <= b && b <= a + 1)) {
            r.growth = false;
            r.failures.push_back({2, k, "p1 step " + std::to_string(a) + " -> " + std::to_string(b)});
        }
        if (a == b && !p.at_codim(k).p2.subset_of(p.at_codim(k + 1).p2)) {
            r.flat_inclusions = false;
            r.failures.push_back({4, k, "flat step must not drop primes"});
        }
        if (b == a + 1 && !p.at_codim(k + 1).p2.subset_of(p.at_codim(k).p2)) {
            r.step_inclusions = false;
            r.failures.push_back({5, k, "upward step must not add primes"});
        }
    }
    Int p12 = p.at_codim(2).p1;
    r.p1_at_2_in_range = (p12 >= -1 && p12 <= 1);
    r.p1_at_2_zero = (p12 == 0);
    if (!r.p1_at_2_in_range)
        r.failures.push_back({3, 2, "p1(2) = " + std::to_string(p12) + " outside {-1,0,1}"});

    bool weakly = r.growth && r.flat_inclusions && r.step_inclusions;
    if (weakly && r.p1_at_2_zero)
        r.label = PervClass::strongly_constrained;
    else if (weakly && r.p1_at_2_in_range)
        r.label = PervClass::constrained;
    else if (weakly)
        r.label = PervClass::weakly_constrained;
    else
        r.label = PervClass::general;

    r.all_efficient = true;
    for (int k = 1; k <= max; ++k) {
        Int v = p.at_codim(k).p1;
        bool eff = (v >= -1 && v <= k);
        r.efficiency.emplace_back(k, eff);
        r.all_efficient = r.all_efficient && eff;
    }
    return r;
}

CoefficientData::CoefficientData(FgModule h0, FgModule h1) : h0_(std::move(h0)), h1_(std::move(h1))
{
    if (!h1_.is_torsion())
        throw error("coefficient h1 must be pure torsion");
    if (!set_intersect(h0_.prime_support(), h1_.prime_support()).is_empty())
        throw error("coefficient h0 and h1 torsion primes must be disjoint");
}

AdaptReport is_adapted(const TsPerversity& p, const CoefficientData& coeff)
{
    Int p12 = p.at_codim(2).p1;
    const PrimeSet& ps = p.at_codim(2).p2;
    AdaptReport r;
    r.adapted = true;
    auto demand = [&](bool ok, const std::string& what) {
        if (!ok) {
            r.adapted = false;
            r.reasons.push_back(what);
        }
    };
    if (p12 == -1) {
        demand(coeff.h1().is_zero(), "h1 must vanish when p1(2) = -1");
        demand(coeff.h0().torsion_by(ps), "h0 must be p2(2)-torsion when p1(2) = -1");
    } else if (p12 == 0) {
        demand(coeff.h1().torsion_by(ps), "h1 must be p2(2)-torsion when p1(2) = 0");
        demand(coeff.h0().torsion_free_by(ps), "h0 must be p2(2)-torsion free when p1(2) = 0");
    } else if (p12 == 1) {
        demand(coeff.h0().is_zero(), "h0 must vanish when p1(2) = 1");
        demand(coeff.h1().torsion_free_by(ps), "h1 must be p2(2)-torsion free when p1(2) = 1");
    } else {
        throw error("adaptedness is defined only for p1(2) in {-1,0,1}");
    }
    return r;
}

PInv p_inverse(const TsPerversity& p, Int m, ProbePrime q)
{
    auto cls = classify(p);
    if (cls.label == PervClass::general)
        throw error("p_inverse requires a weakly constrained perversity");
    int max = p.max_codim();

    // extension below the codimension-one value
    if (m < p.at_codim(1).p1)
        return PInv{1};

    // first codimension whose cutoff sits at m-1 but whose prime set keeps q
    if (!q.is_f)
        for (int c = 2; c <= max; ++c)
            if (p.at_codim(c).p1 == m - 1 && p.at_codim(c).p2.contains(q.p))
                return PInv{c};
    // otherwise the first codimension whose cutoff reaches m
    for (int c = 2; c <= max; ++c)
        if (p.at_codim(c).p1 == m)
            return PInv{c};
    return PInv{std::nullopt};
}

PInv p_inverse_from_codim_one(const TsPerversity& p, Int m, ProbePrime q)
{
    auto cls = classify(p);
    if (cls.label == PervClass::general)
        throw error("p_inverse requires a weakly constrained perversity");
    // first codimension where degree m survives: the cutoff reaches m, or it
    // sits at m - 1 with q among the surviving torsion primes
    for (int c = 1; c <= p.max_codim(); ++c) {
        const auto& v = p.at_codim(c);
        if (v.p1 >= m || (v.p1 == m - 1 && !q.is_f && v.p2.contains(q.p)))
            return PInv{c};
    }
    return PInv{std::nullopt};
}

}  // namespace tsic
