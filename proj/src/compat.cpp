#include "tsic/compat.hpp"

#include <algorithm>
#include <sstream>

namespace tsic {

void validate_map(const CoarseningMap& map)
{
    for (const auto& pr : map.pairs) {
        if (!pr.source.singular)
            throw error("coarsening map sources must be singular strata");
        if (pr.target.codim > pr.source.codim)
            throw error("coarsening cannot raise the codimension of " + pr.source.id);
        if (!pr.target.singular && pr.target.codim != 0)
            throw error("regular target " + pr.target.id + " must have codimension 0");
    }
}

void CompatReport::add(CompatCondition c)
{
    compatible = compatible && c.pass;
    conditions.push_back(std::move(c));
}

nlohmann::json CompatReport::to_json() const
{
    nlohmann::json j;
    j["compatible"] = compatible;
    j["conditions"] = nlohmann::json::array();
    for (const auto& c : conditions) {
        nlohmann::json jc;
        jc["source"] = c.source;
        jc["target"] = c.target;
        jc["clause"] = c.clause;
        jc["pass"] = c.pass;
        if (!c.detail.empty())
            jc["detail"] = c.detail;
        j["conditions"].push_back(jc);
    }
    return j;
}

CompatReport check_E_compatible(const TsPerversity& p, const TsPerversity& p_bar,
                                const CoarseningMap& map, const CoefficientData& coeff)
{
    validate_map(map);
    CompatReport r;
    for (const auto& pr : map.pairs) {
        const PervValue& v = p.at_stratum(pr.source.id, pr.source.codim);
        auto where = [&](const std::string& clause, bool pass, std::string detail) {
            r.add({pr.source.id, pr.target.id, clause, pass, std::move(detail)});
        };
        if (pr.target.singular) {
            const PervValue& vb = p_bar.at_stratum(pr.target.id, pr.target.codim);
            Int spread = pr.source.codim - pr.target.codim;
            where("1", vb.p1 <= v.p1 && v.p1 <= vb.p1 + spread,
                  "p1 " + std::to_string(v.p1) + " within [" + std::to_string(vb.p1) + ", " +
                      std::to_string(vb.p1 + spread) + "]");
            if (v.p1 == vb.p1)
                where("1a", vb.p2.subset_of(v.p2), "equal cutoffs need p2 to grow");
            if (v.p1 == vb.p1 + spread)
                where("1b", v.p2.subset_of(vb.p2), "maximal cutoffs need p2 to shrink");
        } else {
            where("2", -1 <= v.p1 && v.p1 <= pr.source.codim - 1,
                  "p1 " + std::to_string(v.p1) + " within [-1, " +
                      std::to_string(pr.source.codim - 1) + "]");
            if (v.p1 == -1)
                where("2a", coeff.h1().is_zero() && coeff.h0().torsion_by(v.p2),
                      "cutoff -1 needs h1 = 0 and h0 p2-torsion");
            if (v.p1 == 0)
                where("2b", coeff.h1().torsion_by(v.p2), "cutoff 0 needs h1 p2-torsion");
            if (v.p1 == pr.source.codim - 2)
                where("2c", coeff.h0().torsion_free_by(v.p2),
                      "cutoff codim-2 needs h0 p2-torsion free");
            if (v.p1 == pr.source.codim - 1)
                where("2d", coeff.h0().is_zero() && coeff.h1().torsion_free_by(v.p2),
                      "cutoff codim-1 needs h0 = 0 and h1 p2-torsion free");
        }
    }
    return r;
}

TsPerversity pullback(const TsPerversity& p_bar, const CoarseningMap& map,
                      const CoefficientData& coeff)
{
    validate_map(map);
    std::map<std::string, PervValue> values;
    for (const auto& pr : map.pairs) {
        if (pr.target.singular) {
            values[pr.source.id] = p_bar.at_stratum(pr.target.id, pr.target.codim);
        } else {
            if (pr.source.codim == 1)
                throw error("pullback forbids codimension-one strata over regular strata (" +
                            pr.source.id + ")");
            values[pr.source.id] = {0, coeff.minimal_primes()};
        }
    }
    return TsPerversity::per_stratum(std::move(values));
}

PushforwardResult pushforward(const TsPerversity& p, const CoarseningMap& map)
{
    validate_map(map);
    PushforwardResult out;
    if (p.codim_based()) {
        // codimension-based perversities push to any coarsening unchanged
        out.pushable = true;
        out.result = p;
        return out;
    }
    // sources sitting at the dimension of their singular target define the value
    std::map<std::string, PervValue> values;
    std::map<std::string, std::string> chosen;
    out.pushable = true;
    for (const auto& pr : map.pairs) {
        if (!pr.target.singular || pr.source.codim != pr.target.codim)
            continue;
        const PervValue& v = p.at_stratum(pr.source.id, pr.source.codim);
        auto it = values.find(pr.target.id);
        if (it == values.end()) {
            values[pr.target.id] = v;
            chosen[pr.target.id] = pr.source.id;
        } else if (!(it->second == v)) {
            out.pushable = false;
            out.witnesses.emplace_back(chosen[pr.target.id], pr.source.id);
        }
    }
    for (const auto& pr : map.pairs)
        if (pr.target.singular && !values.count(pr.target.id)) {
            out.pushable = false;
            out.witnesses.emplace_back(pr.target.id, "(no source of equal dimension)");
        }
    if (out.pushable)
        out.result = TsPerversity::per_stratum(std::move(values));
    return out;
}

nlohmann::json SelfCompatReport::to_json() const
{
    nlohmann::json j;
    j["compatible"] = compatible;
    j["route"] = route;
    j["details"] = details.to_json();
    return j;
}

SelfCompatReport self_compat_constrained(const TsPerversity& p, const CoarseningMap& map,
                                         const CoefficientData& coeff)
{
    validate_map(map);
    auto cls = classify(p);
    bool any_into_regular = false, codim1_into_regular = false;
    for (const auto& pr : map.pairs)
        if (!pr.target.singular) {
            any_into_regular = true;
            if (pr.source.codim == 1)
                codim1_into_regular = true;
        }

    SelfCompatReport r;
    bool constrained = cls.label == PervClass::constrained ||
                       cls.label == PervClass::strongly_constrained;
    bool weakly = constrained || cls.label == PervClass::weakly_constrained;
    bool adapted = false;
    if (constrained)
        adapted = is_adapted(p, coeff).adapted;
    if (constrained && adapted && !codim1_into_regular)
        r.route = 1;
    else if (weakly && !any_into_regular)
        r.route = 2;
    r.details = check_E_compatible(p, p, map, coeff);
    r.compatible = r.details.compatible;
    return r;
}

/* --- demos --- */

namespace {

SpacePtr iterated_susp(SpacePtr x, int times)
{
    for (int i = 0; i < times; ++i)
        x = SpaceExpr::susp(x);
    return x;
}

PervValue value_for(const TsPerversity* base, int codim, const PervValue& fallback)
{
    if (base && base->codim_based() && codim <= base->max_codim())
        return base->at_codim(codim);
    return fallback;
}

/* Per-stratum perversity for a wrapped space: new strata (ids with the given
 * prefixes) take (p1, p2); strata inherited from X take base-by-codim. */
TsPerversity assemble(const SpacePtr& space, const std::vector<std::string>& new_ids,
                      const PervValue& fresh, const TsPerversity* base)
{
    std::map<std::string, PervValue> values;
    for (const auto& s : strata(space)) {
        if (!s.singular)
            continue;
        if (std::find(new_ids.begin(), new_ids.end(), s.id) != new_ids.end())
            values[s.id] = fresh;
        else
            values[s.id] = value_for(base, s.codim, fresh);
    }
    return TsPerversity::per_stratum(std::move(values));
}

}  // namespace

nlohmann::json JoinSuspReport::to_json() const
{
    nlohmann::json j;
    j["join"] = join_side.to_text();
    j["susp"] = susp_side.to_text();
    j["equal"] = equal;
    j["induced_compat"] = induced_compat.to_json();
    return j;
}

JoinSuspReport demo_join_vs_susp(int k, const SpacePtr& x, Int p1, const PrimeSet& p2,
                                 const TsPerversity* base)
{
    if (k < 1)
        throw error("demo_join_vs_susp needs k >= 1");
    if (!x->compact())
        throw error("demo_join_vs_susp needs a compact space");
    PervValue fresh{p1, p2};

    SpacePtr join_space = SpaceExpr::sphere_join(k, x);
    TsPerversity p_join = assemble(join_space, {"/join"}, fresh, base);

    SpacePtr susp_space = iterated_susp(x, k + 1);
    std::vector<std::string> susp_ids;
    std::string prefix;
    for (int i = 0; i < k + 1; ++i) {
        prefix += "/susp";
        susp_ids.push_back(prefix);
    }
    TsPerversity p_susp = assemble(susp_space, susp_ids, fresh, base);

    JoinSuspReport r;
    r.join_side = hyper(join_space, p_join);
    r.susp_side = hyper(susp_space, p_susp);
    r.equal = (r.join_side == r.susp_side);

    // suspension strata all coarsen into the join sphere; shared strata map
    // to themselves
    CoarseningMap map;
    int sphere_codim = x->dim() + 1;
    for (int i = 0; i < k + 1; ++i)
        map.pairs.push_back({{susp_ids[i], x->dim() + 1 + i, true},
                             {"/join", sphere_codim, true}});
    for (const auto& s : strata(susp_space)) {
        if (!s.singular || std::find(susp_ids.begin(), susp_ids.end(), s.id) != susp_ids.end())
            continue;
        std::string target = "/join" + s.id.substr(prefix.size());
        map.pairs.push_back({{s.id, s.codim, true}, {target, s.codim, true}});
    }
    // every pair lands on a singular target, so the coefficient argument is inert
    CoefficientData constant_z(FgModule::free_of_rank(1), FgModule::zero());
    r.induced_compat = check_E_compatible(p_susp, p_join, map, constant_z);
    return r;
}

nlohmann::json SingInSingReport::to_json() const
{
    nlohmann::json j;
    j["coarse_stalk"] = coarse_stalk.to_text();
    j["refined_stalk"] = refined_stalk.to_text();
    j["match"] = match;
    j["mismatch_degrees"] = mismatch_degrees;
    j["condition1"] = condition1;
    j["lower_bound"] = lower_bound;
    j["upper_bound"] = upper_bound;
    j["clause_1a"] = clause_1a;
    j["clause_1b"] = clause_1b;
    return j;
}

SingInSingReport demo_necessity_sing_in_sing(int k, const SpacePtr& link, const PervValue& p_vertex,
                                             const PervValue& p_bar, const TsPerversity* base)
{
    if (k < 0)
        throw error("demo_necessity_sing_in_sing needs k >= 0");
    if (!link->compact())
        throw error("demo_necessity_sing_in_sing needs a compact link");

    // coarse vertex stalk: truncate the link hypercohomology at the coarse value
    TsPerversity link_perv = assemble(link, {}, p_bar, base);
    GradedModule link_h = hyper(link, link_perv);
    SingInSingReport r;
    r.coarse_stalk = truncate(link_h, p_bar.p1, p_bar.p2);

    // refined vertex stalk: truncate the join hypercohomology at the vertex value
    SpacePtr join_space = k == 0 ? SpaceExpr::susp(link) : SpaceExpr::sphere_join(k, link);
    std::string sphere_id = k == 0 ? "/susp" : "/join";
    TsPerversity join_perv = assemble(join_space, {sphere_id}, p_bar, base);
    GradedModule join_h = hyper(join_space, join_perv);
    r.refined_stalk = truncate(join_h, p_vertex.p1, p_vertex.p2);

    r.match = (r.coarse_stalk == r.refined_stalk);
    int lo = 0, hi = 0;
    auto scan = [&](const GradedModule& g) {
        if (!g.is_zero()) {
            lo = std::min(lo, *g.min_degree());
            hi = std::max(hi, *g.max_degree());
        }
    };
    scan(r.coarse_stalk);
    scan(r.refined_stalk);
    for (int d = lo; d <= hi; ++d)
        if (!(r.coarse_stalk.at(d) == r.refined_stalk.at(d)))
            r.mismatch_degrees.push_back(d);

    Int spread = k + 1;
    r.lower_bound = p_bar.p1 <= p_vertex.p1;
    r.upper_bound = p_vertex.p1 <= p_bar.p1 + spread;
    r.clause_1a = p_vertex.p1 != p_bar.p1 || p_bar.p2.subset_of(p_vertex.p2);
    r.clause_1b = p_vertex.p1 != p_bar.p1 + spread || p_vertex.p2.subset_of(p_bar.p2);
    r.condition1 = r.lower_bound && r.upper_bound && r.clause_1a && r.clause_1b;
    return r;
}

nlohmann::json SingInRegReport::to_json() const
{
    nlohmann::json j;
    j["link_hyper"] = link_hyper.to_text();
    j["refined_stalk"] = refined_stalk.to_text();
    j["coeff_stalk"] = coeff_stalk.to_text();
    j["match"] = match;
    j["scenario"] = scenario;
    j["clause"] = clause;
    return j;
}

SingInRegReport demo_necessity_sing_in_reg(int k, const CoefficientData& coeff,
                                           const PervValue& p_stratum)
{
    if (k < 1)
        throw error("demo_necessity_sing_in_reg needs k >= 1");
    SingInRegReport r;

    // hypercohomology of a (k-1) homology sphere with the coefficients; the
    // spectral sequence degenerates, and for k = 2 the extension splits
    GradedModule h;
    if (k == 1) {
        h.set(0, direct_sum(coeff.h0(), coeff.h0()));
        h.set(1, direct_sum(coeff.h1(), coeff.h1()));
    } else if (k == 2) {
        h.set(0, coeff.h0());
        h.set(1, direct_sum(coeff.h0(), coeff.h1()));
        h.set(2, coeff.h1());
    } else {
        h.set(0, coeff.h0());
        h.set(1, coeff.h1());
        h.set(k - 1, direct_sum(h.at(k - 1), coeff.h0()));
        h.set(k, direct_sum(h.at(k), coeff.h1()));
    }
    r.link_hyper = h;
    r.refined_stalk = truncate(h, p_stratum.p1, p_stratum.p2);
    r.coeff_stalk = coefficient_stalk(coeff);
    r.match = (r.refined_stalk == r.coeff_stalk);

    Int p1 = p_stratum.p1;
    const PrimeSet& p2 = p_stratum.p2;
    if (p1 == -1) {
        r.clause = "2a";
        if (coeff.h1().is_zero() && coeff.h0().torsion_by(p2))
            r.scenario = 1;
    } else if (p1 == 0) {
        r.clause = "2b";
        if (coeff.h1().torsion_by(p2) && (k != 2 || coeff.h0().torsion_free_by(p2)))
            r.scenario = 2;
    } else if (p1 >= 1 && p1 <= k - 3) {
        r.scenario = 3;
    } else if (p1 == k - 2) {
        r.clause = "2c";
        if (coeff.h0().torsion_free_by(p2))
            r.scenario = 4;
    } else if (p1 == k - 1) {
        r.clause = "2d";
        if (coeff.h0().is_zero() && coeff.h1().torsion_free_by(p2))
            r.scenario = 5;
    }
    if (k == 1)
        r.scenario = 0;  // a zero-sphere link doubles every group
    return r;
}

}  // namespace tsic
