#include "tsic/axioms.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tsic {

void AxiomReport::add(ClauseCheck c)
{
    pass = pass && c.pass;
    checks.push_back(std::move(c));
}

nlohmann::json AxiomReport::to_json() const
{
    nlohmann::json j;
    j["axiom"] = axiom;
    j["pass"] = pass;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json jc;
        jc["clause"] = c.clause;
        if (!c.stratum.empty())
            jc["stratum"] = c.stratum;
        if (c.degree)
            jc["degree"] = *c.degree;
        if (!c.probe.empty())
            jc["probe"] = c.probe;
        jc["pass"] = c.pass;
        if (!c.detail.empty())
            jc["detail"] = c.detail;
        j["checks"].push_back(jc);
    }
    j["notes"] = notes;
    return j;
}

namespace {

struct StalkTables {
    std::vector<Stratum> strata_list;
    std::map<std::string, GradedModule> stalks, costalks;
};

StalkTables compute_tables(const SpacePtr& space, const TsPerversity& p,
                           const CoefficientData& coeff, const FaultInjection* faults)
{
    StalkTables t;
    t.strata_list = strata(space);
    for (const auto& s : t.strata_list) {
        t.stalks[s.id] = stalk(space, p, s.id, coeff);
        t.costalks[s.id] = costalk(space, p, s.id, coeff);
    }
    if (faults) {
        for (const auto& [id, g] : faults->stalks)
            t.stalks[id] = g;
        for (const auto& [id, g] : faults->costalks)
            t.costalks[id] = g;
    }
    return t;
}

bool probe_nonzero(const FgModule& m, ProbePrime q)
{
    if (q.is_f)
        return m.free_rank() > 0;
    return !m.torsion_part(PrimeSet::of({q.p})).is_zero();
}

std::optional<Int> table_support(const StalkTables& t, const std::map<std::string, GradedModule>& by_id,
                                 int j, ProbePrime q, bool singular_only)
{
    std::optional<Int> best;
    for (const auto& s : t.strata_list) {
        if (singular_only && !s.singular)
            continue;
        if (probe_nonzero(by_id.at(s.id).at(j), q))
            if (!best || s.dim > *best)
                best = s.dim;
    }
    return best;
}

std::string bound_text(std::optional<Int> dim, const PInv& pinv, Int n)
{
    std::ostringstream out;
    out << "dim " << (dim ? std::to_string(*dim) : std::string("-inf")) << " vs bound ";
    if (pinv.infinite())
        out << "-inf";
    else
        out << (n - *pinv.codim);
    return out.str();
}

bool bound_holds(std::optional<Int> dim, const PInv& pinv, Int n)
{
    if (!dim)
        return true;  // empty support satisfies every bound
    if (pinv.infinite())
        return false;  // bound is -infinity but the support is not empty
    return *dim <= n - *pinv.codim;
}

}  // namespace

AxiomReport check_tax1prime(const SpacePtr& space, const TsPerversity& p,
                            const CoefficientData& coeff, const FaultInjection* faults)
{
    require_valid(space);
    auto t = compute_tables(space, p, coeff, faults);
    Int n = space->dim();

    AxiomReport r;
    r.axiom = "TAx1'";
    r.add({"a", "", std::nullopt, "", true, "bounded, vanishing in negative degrees"});

    for (const auto& s : t.strata_list) {
        const GradedModule& st = t.stalks.at(s.id);
        if (!s.singular) {
            bool ok = (st == coefficient_stalk(coeff));
            r.add({"b", s.id, std::nullopt, "", ok,
                   ok ? "stalk agrees with the coefficient data"
                      : "stalk differs from the coefficient data"});
            continue;
        }
        const auto& v = p.at_stratum(s.id, s.codim);

        bool vanish_ok = true;
        int bad_degree = 0;
        for (const auto& [d, m] : st.entries())
            if (d > v.p1 + 1) {
                vanish_ok = false;
                bad_degree = d;
            }
        r.add({"c", s.id, vanish_ok ? std::nullopt : std::optional<int>(bad_degree), "", vanish_ok,
               vanish_ok ? "stalk vanishes above the cutoff"
                         : "stalk does not vanish above the cutoff"});

        const FgModule& tip = st.at(static_cast<int>(v.p1 + 1));
        bool tip_ok = tip.torsion_by(v.p2);
        r.add({"c", s.id, static_cast<int>(v.p1 + 1), "", tip_ok,
               tip_ok ? "tip degree is p2-torsion" : "tip degree is not p2-torsion"});

        const GradedModule& co = t.costalks.at(s.id);
        Int cutoff = v.p1 + (n - s.codim) + 1;
        bool co_vanish = true;
        int co_bad = 0;
        for (const auto& [d, m] : co.entries())
            if (d <= cutoff) {
                co_vanish = false;
                co_bad = d;
            }
        r.add({"d", s.id, co_vanish ? std::nullopt : std::optional<int>(co_bad), "", co_vanish,
               co_vanish ? "costalk vanishes through the cutoff"
                         : "costalk does not vanish through the cutoff"});

        const FgModule& co_tip = co.at(static_cast<int>(cutoff + 1));
        bool co_tip_ok = co_tip.torsion_free_by(v.p2);
        r.add({"d", s.id, static_cast<int>(cutoff + 1), "", co_tip_ok,
               co_tip_ok ? "costalk tip is p2-torsion free" : "costalk tip has p2-torsion"});
    }
    return r;
}

std::optional<Int> support_dim(const SpacePtr& space, const TsPerversity& p,
                               const CoefficientData& coeff, int j, ProbePrime q,
                               const FaultInjection* faults, bool singular_only)
{
    auto t = compute_tables(space, p, coeff, faults);
    return table_support(t, t.stalks, j, q, singular_only);
}

std::optional<Int> cosupport_dim(const SpacePtr& space, const TsPerversity& p,
                                 const CoefficientData& coeff, int j, ProbePrime q,
                                 const FaultInjection* faults, bool singular_only)
{
    auto t = compute_tables(space, p, coeff, faults);
    return table_support(t, t.costalks, j, q, singular_only);
}

std::vector<Int> occurring_primes(const SpacePtr& space, const TsPerversity& p,
                                  const CoefficientData& coeff, const FaultInjection* faults)
{
    auto t = compute_tables(space, p, coeff, faults);
    std::set<Int> primes;
    auto scan = [&](const std::map<std::string, GradedModule>& by_id) {
        for (const auto& [id, g] : by_id)
            for (const auto& [d, m] : g.entries())
                for (const auto& pp : m.torsion())
                    primes.insert(pp.p);
    };
    scan(t.stalks);
    scan(t.costalks);
    return {primes.begin(), primes.end()};
}

AxiomReport check_tax2(const SpacePtr& space, const TsPerversity& p, const CoefficientData& coeff,
                       bool singular_only, const FaultInjection* faults)
{
    require_valid(space);
    if (!p.codim_based())
        throw error("the support axioms need a codimension-based perversity");

    auto cls = classify(p);
    auto all_strata = strata(space);
    int max_codim = 0;
    for (const auto& s : all_strata)
        max_codim = std::max(max_codim, s.codim);
    if (p.max_codim() < max_codim)
        throw error("perversity table stops below the maximal codimension");

    if (singular_only) {
        if (cls.label == PervClass::general)
            throw error("the singular-set support axioms need a weakly constrained perversity");
    } else {
        if (cls.label != PervClass::strongly_constrained)
            throw error("the support axioms need a strongly constrained perversity");
        if (!is_adapted(p, coeff).adapted)
            throw error("the support axioms need a perversity adapted to the coefficients");
        for (const auto& s : all_strata)
            if (s.singular && s.codim == 1)
                throw error("the support axioms forbid codimension-one strata");
    }

    auto t = compute_tables(space, p, coeff, faults);
    Int n = space->dim();
    TsPerversity q_perv = dual(p);

    AxiomReport r;
    r.axiom = singular_only ? "TAx2S" : "TAx2";
    r.add({"a", "", std::nullopt, "", true, "bounded, vanishing in negative degrees"});
    {
        bool ok = true;
        for (const auto& s : all_strata)
            if (!s.singular && t.stalks.at(s.id) != coefficient_stalk(coeff))
                ok = false;
        r.add({"b", "", std::nullopt, "", ok,
               ok ? "regular stalks agree with the coefficient data"
                  : "a regular stalk differs from the coefficient data"});
    }

    std::vector<ProbePrime> probes;
    for (Int prime : occurring_primes(space, p, coeff, faults))
        probes.push_back(ProbePrime::prime(prime));
    probes.push_back(ProbePrime::f());

    std::set<int> stalk_degrees, costalk_degrees;
    for (const auto& [id, g] : t.stalks)
        for (const auto& [d, m] : g.entries())
            stalk_degrees.insert(d);
    for (const auto& [id, g] : t.costalks)
        for (const auto& [d, m] : g.entries())
            costalk_degrees.insert(d);

    const PrimeSet& p2_at_2 = p.at_codim(2).p2;

    auto pinv = [&](const TsPerversity& table, Int m, ProbePrime q) {
        return singular_only ? p_inverse_from_codim_one(table, m, q) : p_inverse(table, m, q);
    };

    for (int j : stalk_degrees) {
        for (const auto& q : probes) {
            bool checked;
            if (singular_only)
                checked = true;
            else if (j > 1)
                checked = true;
            else if (j == 1)
                checked = q.is_f || !p2_at_2.contains(q.p);
            else
                checked = false;
            if (!checked)
                continue;
            auto dim = table_support(t, t.stalks, j, q, singular_only);
            PInv bound = pinv(p, j, q);
            bool ok = bound_holds(dim, bound, n);
            std::string clause = singular_only ? "c" : (j > 1 ? "c.1" : "c.2");
            r.add({clause, "", j, q.to_text(), ok, bound_text(dim, bound, n)});
        }
    }

    for (int j : costalk_degrees) {
        for (const auto& q : probes) {
            std::optional<PInv> bound;
            std::string clause = singular_only ? "d" : "d.1";
            if (singular_only || j < n) {
                bound = q.is_f ? pinv(q_perv, n - j, q) : pinv(q_perv, n - j + 1, q);
            } else if (j == n && !q.is_f && p2_at_2.contains(q.p)) {
                bound = pinv(q_perv, 1, q);
                clause = "d.2";
            } else if (j == n) {
                r.notes.push_back("no cosupport bound stated for degree " + std::to_string(j) +
                                  " at probe " + q.to_text());
                continue;
            } else {
                continue;  // degrees above n carry no bound
            }
            auto dim = table_support(t, t.costalks, j, q, singular_only);
            bool ok = bound_holds(dim, *bound, n);
            r.add({clause, "", j, q.to_text(), ok, bound_text(dim, *bound, n)});
        }
    }
    return r;
}

}  // namespace tsic
