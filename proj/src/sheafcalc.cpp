#include "tsic/sheafcalc.hpp"

namespace tsic {

GradedModule truncate(const GradedModule& g, Int p1, const PrimeSet& p2)
{
    if (p2.has_f())
        throw error("truncation prime sets never contain f");
    GradedModule out;
    for (const auto& [d, m] : g.entries()) {
        if (d <= p1)
            out.set(d, m);
        else if (d == p1 + 1)
            out.set(d, m.torsion_part(p2));
    }
    return out;
}

namespace {

const PervValue& perv_at(const TsPerversity& p, const std::string& id, int codim)
{
    return p.at_stratum(id, codim);
}

/* Suspension with (p, w) at the new stratum:
 *   i <= p      : H^i(X)
 *   i = p + 1   : T^w H^{p+1}(X)
 *   i = p + 2   : H^{p+1}(X) / T^w
 *   i >= p + 3  : H^{i-1}(X)
 * The sphere-join of S^k inserts k zero degrees between the torsion tip and
 * the quotient and shifts the tail by k + 1; the suspension is the k = 0
 * shape of the same formula.
 */
GradedModule join_formula(const GradedModule& h, Int p1, const PrimeSet& p2, int k)
{
    GradedModule out;
    for (const auto& [d, m] : h.entries()) {
        if (d <= p1)
            out.set(d, m);
        if (d >= p1 + 2)
            out.set(d + k + 1, m);
    }
    const FgModule& tip = h.at(static_cast<int>(p1 + 1));
    out.set(static_cast<int>(p1 + 1), tip.torsion_part(p2));
    out.set(static_cast<int>(p1 + k + 2), tip.quotient_by_torsion(p2));
    return out;
}

GradedModule hyper_at(const SpacePtr& node, const std::string& prefix, const TsPerversity& p)
{
    std::string here = prefix + "/" + node->op_name();
    switch (node->op()) {
    case SpaceExpr::Op::leaf:
        return node->cohom();
    case SpaceExpr::Op::prod_r:
        return hyper_at(node->inner(), here, p);
    case SpaceExpr::Op::cone: {
        // closed supports: the cone computes its vertex stalk
        const auto& v = perv_at(p, here, node->inner()->dim() + 1);
        return truncate(hyper_at(node->inner(), here, p), v.p1, v.p2);
    }
    case SpaceExpr::Op::susp: {
        if (!node->inner()->compact())
            throw error("susp of a non-compact space at " + here);
        const auto& v = perv_at(p, here, node->inner()->dim() + 1);
        return join_formula(hyper_at(node->inner(), here, p), v.p1, v.p2, 0);
    }
    case SpaceExpr::Op::sphere_join: {
        if (!node->inner()->compact())
            throw error("join of a non-compact space at " + here);
        const auto& v = perv_at(p, here, node->inner()->dim() + 1);
        return join_formula(hyper_at(node->inner(), here, p), v.p1, v.p2, node->k());
    }
    }
    throw error("unreachable");
}

Stratum need_stratum(const SpacePtr& space, const std::string& id)
{
    auto s = find_stratum(space, id);
    if (!s)
        throw error("unknown stratum " + id);
    return *s;
}

}  // namespace

GradedModule hyper(const SpacePtr& space, const TsPerversity& p)
{
    require_valid(space);
    return hyper_at(space, "", p);
}

GradedModule coefficient_stalk(const CoefficientData& coeff)
{
    GradedModule g;
    g.set(0, coeff.h0());
    g.set(1, coeff.h1());
    return g;
}

GradedModule stalk(const SpacePtr& space, const TsPerversity& p, const std::string& stratum_id,
                   const CoefficientData& coeff)
{
    require_valid(space);
    Stratum s = need_stratum(space, stratum_id);
    if (!s.singular)
        return coefficient_stalk(coeff);
    const auto& v = perv_at(p, s.id, s.codim);
    return truncate(hyper_at(s.link, s.id, p), v.p1, v.p2);
}

GradedModule costalk(const SpacePtr& space, const TsPerversity& p, const std::string& stratum_id,
                     const CoefficientData& coeff)
{
    require_valid(space);
    Stratum s = need_stratum(space, stratum_id);
    int n = space->dim();
    if (!s.singular)
        return coefficient_stalk(coeff).shifted(n);

    const auto& v = perv_at(p, s.id, s.codim);
    GradedModule link_h = hyper_at(s.link, s.id, p);

    // zero through p1 + (n-k) + 1, the p2-torsion-free quotient of the tip
    // one degree up, then the link's groups shifted by (n-k) + 1
    int shift = n - s.codim;
    GradedModule out;
    const FgModule& tip = link_h.at(static_cast<int>(v.p1 + 1));
    out.set(static_cast<int>(v.p1 + shift + 2), tip.quotient_by_torsion(v.p2));
    for (const auto& [d, m] : link_h.entries())
        if (d >= v.p1 + 2)
            out.set(d + shift + 1, m);

    // cosupport shape cross-check
    for (const auto& [d, m] : out.entries())
        if (d <= v.p1 + shift + 1)
            throw error("costalk shape violation at " + stratum_id);
    if (!out.at(static_cast<int>(v.p1 + shift + 2)).torsion_free_by(v.p2))
        throw error("costalk torsion violation at " + stratum_id);
    return out;
}

}  // namespace tsic
