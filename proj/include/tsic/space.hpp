/*
 * Constructive stratified spaces: leaf / product-with-R^k / cone /
 * suspension / sphere-join expression trees, the derived stratum table
 * (dimensions, codimensions, links), validation, and the text grammar.
 *
 * A leaf is an abstract compact space given directly by its coefficient
 * hypercohomology.  Suspension points are a single merged stratum; the
 * sphere of a join is a single stratum carrying its inner space as link.
 */
#pragma once

#include "tsic/fgmod.hpp"

#include <memory>

namespace tsic {

class SpaceExpr;
using SpacePtr = std::shared_ptr<const SpaceExpr>;

class SpaceExpr {
public:
    enum class Op { leaf, prod_r, cone, susp, sphere_join };

    static SpacePtr leaf(std::string name, int dim, GradedModule cohom);
    static SpacePtr prod_r(int k, SpacePtr inner);
    static SpacePtr cone(SpacePtr inner);
    static SpacePtr susp(SpacePtr inner);
    static SpacePtr sphere_join(int k, SpacePtr inner);

    Op op() const { return op_; }
    int k() const { return k_; }
    const SpacePtr& inner() const { return inner_; }
    const std::string& name() const { return name_; }
    const GradedModule& cohom() const { return cohom_; }

    int dim() const { return dim_; }
    bool compact() const { return compact_; }

    std::string op_name() const;
    std::string to_text() const;
    static SpacePtr parse(const std::string& text);

private:
    SpaceExpr() = default;

    Op op_ = Op::leaf;
    std::string name_;
    GradedModule cohom_;
    int k_ = 0;
    SpacePtr inner_;
    int dim_ = 0;
    bool compact_ = true;
};

struct Stratum {
    std::string id;  // constructor path from the root, e.g. "/susp/cone"
    bool singular = false;
    int dim = 0;
    int codim = 0;
    SpacePtr link;  // inner expression of the creating node; null when regular
};

// all strata, regular and singular, sorted by codimension then id
std::vector<Stratum> strata(const SpacePtr& space);

std::optional<Stratum> find_stratum(const SpacePtr& space, const std::string& id);

struct Diagnostic {
    bool is_error = false;
    std::string path;
    std::string message;
};

std::vector<Diagnostic> validate(const SpacePtr& space);

// throws on the first validation error; warnings are ignored
void require_valid(const SpacePtr& space);

}  // namespace tsic
