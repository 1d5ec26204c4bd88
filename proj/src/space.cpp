#include "tsic/space.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tsic {

SpacePtr SpaceExpr::leaf(std::string name, int dim, GradedModule cohom)
{
    if (dim < 0)
        throw error("leaf dimension must be >= 0");
    auto e = std::shared_ptr<SpaceExpr>(new SpaceExpr());
    e->op_ = Op::leaf;
    e->name_ = std::move(name);
    e->cohom_ = std::move(cohom);
    e->dim_ = dim;
    e->compact_ = true;
    return e;
}

SpacePtr SpaceExpr::prod_r(int k, SpacePtr inner)
{
    if (k < 1)
        throw error("prod requires k >= 1");
    if (!inner)
        throw error("prod needs an inner space");
    auto e = std::shared_ptr<SpaceExpr>(new SpaceExpr());
    e->op_ = Op::prod_r;
    e->k_ = k;
    e->dim_ = k + inner->dim();
    e->compact_ = false;
    e->inner_ = std::move(inner);
    return e;
}

SpacePtr SpaceExpr::cone(SpacePtr inner)
{
    if (!inner)
        throw error("cone needs an inner space");
    auto e = std::shared_ptr<SpaceExpr>(new SpaceExpr());
    e->op_ = Op::cone;
    e->dim_ = 1 + inner->dim();
    e->compact_ = false;
    e->inner_ = std::move(inner);
    return e;
}

SpacePtr SpaceExpr::susp(SpacePtr inner)
{
    if (!inner)
        throw error("susp needs an inner space");
    auto e = std::shared_ptr<SpaceExpr>(new SpaceExpr());
    e->op_ = Op::susp;
    e->dim_ = 1 + inner->dim();
    e->compact_ = inner->compact();
    e->inner_ = std::move(inner);
    return e;
}

SpacePtr SpaceExpr::sphere_join(int k, SpacePtr inner)
{
    if (k < 1)
        throw error("join requires k >= 1");
    if (!inner)
        throw error("join needs an inner space");
    auto e = std::shared_ptr<SpaceExpr>(new SpaceExpr());
    e->op_ = Op::sphere_join;
    e->k_ = k;
    e->dim_ = k + 1 + inner->dim();
    e->compact_ = inner->compact();
    e->inner_ = std::move(inner);
    return e;
}

std::string SpaceExpr::op_name() const
{
    switch (op_) {
    case Op::leaf: return "leaf";
    case Op::prod_r: return "prod";
    case Op::cone: return "cone";
    case Op::susp: return "susp";
    case Op::sphere_join: return "join";
    }
    return "?";
}

std::string SpaceExpr::to_text() const
{
    std::ostringstream out;
    switch (op_) {
    case Op::leaf:
        out << "leaf(";
        if (!name_.empty())
            out << "name=" << name_ << ", ";
        out << "dim=" << dim_ << ", H=[";
        for (int d = 0; d <= (cohom_.max_degree() ? *cohom_.max_degree() : 0); ++d)
            out << (d ? ", " : "") << cohom_.at(d).to_text();
        out << "])";
        break;
    case Op::prod_r: out << "prod(k=" << k_ << ", " << inner_->to_text() << ")"; break;
    case Op::cone: out << "cone(" << inner_->to_text() << ")"; break;
    case Op::susp: out << "susp(" << inner_->to_text() << ")"; break;
    case Op::sphere_join: out << "join(k=" << k_ << ", " << inner_->to_text() << ")"; break;
    }
    return out.str();
}

/* --- parser --- */

namespace {

struct SpaceCursor {
    const std::string& s;
    size_t i = 0;

    void skip_ws()
    {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
    }
    bool eat(char c)
    {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!eat(c))
            throw error(std::string("expected '") + c + "' at offset " + std::to_string(i) +
                        " in space expression");
    }
    std::string ident()
    {
        skip_ws();
        size_t start = i;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            ++i;
        if (i == start)
            throw error("expected an identifier at offset " + std::to_string(i) +
                        " in space expression");
        return s.substr(start, i - start);
    }
    int number()
    {
        skip_ws();
        size_t start = i;
        if (i < s.size() && s[i] == '-')
            ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            ++i;
        if (i == start)
            throw error("expected a number at offset " + std::to_string(i) +
                        " in space expression");
        return std::stoi(s.substr(start, i - start));
    }
    // a module expression runs until ',' or ']' at depth zero
    std::string module_text()
    {
        skip_ws();
        size_t start = i;
        while (i < s.size() && s[i] != ',' && s[i] != ']')
            ++i;
        return s.substr(start, i - start);
    }

    SpacePtr parse_expr()
    {
        std::string head = ident();
        if (head == "leaf") {
            expect('(');
            std::string name;
            skip_ws();
            if (s.compare(i, 5, "name=") == 0) {
                i += 5;
                name = ident();
                expect(',');
            }
            if (ident() != "dim")
                throw error("leaf expects dim=");
            expect('=');
            int dim = number();
            expect(',');
            if (ident() != "H")
                throw error("leaf expects H=[...]");
            expect('=');
            expect('[');
            std::vector<FgModule> mods;
            if (!eat(']')) {
                do
                    mods.push_back(FgModule::parse(module_text()));
                while (eat(','));
                expect(']');
            }
            expect(')');
            return SpaceExpr::leaf(std::move(name), dim, GradedModule::from_list(0, mods));
        }
        if (head == "cone" || head == "susp") {
            expect('(');
            SpacePtr inner = parse_expr();
            expect(')');
            return head == "cone" ? SpaceExpr::cone(inner) : SpaceExpr::susp(inner);
        }
        if (head == "prod" || head == "join") {
            expect('(');
            if (ident() != "k")
                throw error(head + " expects k=");
            expect('=');
            int k = number();
            expect(',');
            SpacePtr inner = parse_expr();
            expect(')');
            return head == "prod" ? SpaceExpr::prod_r(k, inner) : SpaceExpr::sphere_join(k, inner);
        }
        throw error("unknown space constructor '" + head + "'");
    }
};

}  // namespace

SpacePtr SpaceExpr::parse(const std::string& text)
{
    SpaceCursor c{text};
    SpacePtr e = c.parse_expr();
    c.skip_ws();
    if (c.i != text.size())
        throw error("trailing characters in space expression");
    return e;
}

/* --- strata --- */

static void strata_rec(const SpacePtr& node, const std::string& prefix, std::vector<Stratum>& out)
{
    std::string here = prefix + "/" + node->op_name();
    size_t first = out.size();
    switch (node->op()) {
    case SpaceExpr::Op::leaf:
        out.push_back({here, false, node->dim(), 0, nullptr});
        return;
    case SpaceExpr::Op::prod_r:
        strata_rec(node->inner(), here, out);
        for (size_t i = first; i < out.size(); ++i)
            out[i].dim += node->k();
        return;
    case SpaceExpr::Op::cone:
    case SpaceExpr::Op::susp:
        strata_rec(node->inner(), here, out);
        for (size_t i = first; i < out.size(); ++i)
            out[i].dim += 1;
        out.push_back({here, true, 0, 0, node->inner()});
        return;
    case SpaceExpr::Op::sphere_join:
        strata_rec(node->inner(), here, out);
        for (size_t i = first; i < out.size(); ++i)
            out[i].dim += node->k() + 1;
        out.push_back({here, true, node->k(), 0, node->inner()});
        return;
    }
}

std::vector<Stratum> strata(const SpacePtr& space)
{
    if (!space)
        throw error("null space");
    std::vector<Stratum> out;
    strata_rec(space, "", out);
    for (auto& s : out)
        s.codim = space->dim() - s.dim;
    std::sort(out.begin(), out.end(), [](const Stratum& a, const Stratum& b) {
        return a.codim != b.codim ? a.codim < b.codim : a.id < b.id;
    });
    return out;
}

std::optional<Stratum> find_stratum(const SpacePtr& space, const std::string& id)
{
    for (auto& s : strata(space))
        if (s.id == id)
            return s;
    return std::nullopt;
}

/* --- validation --- */

static void validate_rec(const SpacePtr& node, const std::string& prefix,
                         std::vector<Diagnostic>& out)
{
    std::string here = prefix + "/" + node->op_name();
    switch (node->op()) {
    case SpaceExpr::Op::leaf: {
        auto lo = node->cohom().min_degree();
        auto hi = node->cohom().max_degree();
        if (lo && (*lo < 0 || *hi > node->dim()))
            out.push_back({true, here,
                           "leaf cohomology degrees must lie in [0, " +
                               std::to_string(node->dim()) + "]"});
        return;
    }
    case SpaceExpr::Op::prod_r:
        validate_rec(node->inner(), here, out);
        return;
    case SpaceExpr::Op::cone:
    case SpaceExpr::Op::susp:
    case SpaceExpr::Op::sphere_join:
        if (!node->inner()->compact())
            out.push_back({true, here, node->op_name() + " of a non-compact space"});
        validate_rec(node->inner(), here, out);
        return;
    }
}

std::vector<Diagnostic> validate(const SpacePtr& space)
{
    if (!space)
        throw error("null space");
    std::vector<Diagnostic> out;
    validate_rec(space, "", out);
    if (std::none_of(out.begin(), out.end(), [](const Diagnostic& d) { return d.is_error; }))
        for (const auto& s : strata(space))
            if (s.singular && s.codim == 1)
                out.push_back({false, s.id, "codimension-one stratum"});
    return out;
}

void require_valid(const SpacePtr& space)
{
    for (const auto& d : validate(space))
        if (d.is_error)
            throw error("invalid space at " + d.path + ": " + d.message);
}

}  // namespace tsic
