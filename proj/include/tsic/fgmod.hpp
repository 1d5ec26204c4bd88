/*
 * Exact algebra of finitely generated Z-modules: canonical forms (free rank
 * plus primary torsion), finite/cofinite prime sets extended by the formal
 * element f, torsion operators, and Smith normal form over arbitrary
 * precision integers.
 */
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsic {

using Int = long long;
using Bigint = boost::multiprecision::cpp_int;

class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

bool is_prime(Int n);

/* A finite or cofinite set of rational primes, optionally containing the
 * formal element f.  All five set operations are exact and total on this
 * representation. */
class PrimeSet {
public:
    PrimeSet() = default;

    static PrimeSet empty();
    static PrimeSet all_primes();            // cofinite with nothing excluded, no f
    static PrimeSet all_plus_f();
    static PrimeSet just_f();
    static PrimeSet of(std::initializer_list<Int> primes);
    static PrimeSet finite(std::vector<Int> primes, bool with_f = false);
    static PrimeSet cofinite(std::vector<Int> excluded, bool with_f = false);

    bool is_cofinite() const { return cofinite_; }
    bool has_f() const { return has_f_; }
    // the listed members if finite, the excluded members if cofinite
    const std::vector<Int>& listed() const { return elems_; }

    bool contains(Int p) const;
    bool is_empty() const { return !cofinite_ && !has_f_ && elems_.empty(); }

    PrimeSet complement() const;         // complement within P_+ = P(Z) + {f}
    PrimeSet complement_primes() const;  // complement within P(Z); result has no f
    PrimeSet with_f(bool value) const;

    bool subset_of(const PrimeSet& other) const;

    bool operator==(const PrimeSet&) const = default;

    std::string to_text(bool unicode = false) const;
    static PrimeSet parse(const std::string& text);

private:
    bool cofinite_ = false;
    bool has_f_ = false;
    std::vector<Int> elems_;
};

PrimeSet set_union(const PrimeSet& a, const PrimeSet& b);
PrimeSet set_intersect(const PrimeSet& a, const PrimeSet& b);

/* A probe value for support computations: a single prime or the formal f. */
struct ProbePrime {
    bool is_f = false;
    Int p = 0;

    static ProbePrime f() { return ProbePrime{true, 0}; }
    static ProbePrime prime(Int p) { return ProbePrime{false, p}; }

    bool operator==(const ProbePrime&) const = default;
    std::string to_text() const { return is_f ? "f" : std::to_string(p); }
};

struct PrimePower {
    Int p = 0;
    int e = 0;
    auto operator<=>(const PrimePower&) const = default;
};

/* Finitely generated Z-module in canonical form.  Two values compare equal
 * exactly when the modules are isomorphic. */
class FgModule {
public:
    FgModule() = default;
    FgModule(Int free_rank, std::vector<PrimePower> torsion);

    static FgModule zero() { return FgModule(); }
    static FgModule free_of_rank(Int r) { return FgModule(r, {}); }
    static FgModule cyclic(const Bigint& n);  // Z/n in canonical form; Z/0 = Z

    Int free_rank() const { return rank_; }
    const std::vector<PrimePower>& torsion() const { return torsion_; }

    bool is_zero() const { return rank_ == 0 && torsion_.empty(); }
    bool is_torsion() const { return rank_ == 0; }

    // T^P A: for f not in P, the subgroup annihilated by products of primes
    // in P; for f in P, the quotient A / T^{P^c} A (free part survives).
    FgModule torsion_part(const PrimeSet& ps) const;
    // A / T^P A with f not in P.
    FgModule quotient_by_torsion(const PrimeSet& ps) const;

    bool torsion_by(const PrimeSet& ps) const;       // T^P A == A
    bool torsion_free_by(const PrimeSet& ps) const;  // T^P A == 0

    PrimeSet prime_support() const;  // primes dividing the torsion subgroup

    std::vector<Bigint> invariant_factors() const;  // d_1 | d_2 | ...
    static FgModule from_invariant_factors(Int free_rank, const std::vector<Bigint>& factors);

    bool operator==(const FgModule&) const = default;

    std::string to_text(bool unicode = false) const;  // "Z^r + Z/n1 + Z/n2"
    static FgModule parse(const std::string& text);

private:
    Int rank_ = 0;
    std::vector<PrimePower> torsion_;  // multiset sorted by (p, e)
};

FgModule direct_sum(const FgModule& a, const FgModule& b);

std::vector<PrimePower> factorize(Bigint n);

/* Bounded graded module: sparse map degree -> nonzero FgModule. */
class GradedModule {
public:
    GradedModule() = default;
    GradedModule(std::initializer_list<std::pair<int, FgModule>> entries);
    static GradedModule from_list(int first_degree, const std::vector<FgModule>& mods);

    void set(int degree, FgModule m);  // erases the slot when m is zero
    const FgModule& at(int degree) const;
    const std::map<int, FgModule>& entries() const { return entries_; }

    bool is_zero() const { return entries_.empty(); }
    std::optional<int> min_degree() const;
    std::optional<int> max_degree() const;
    GradedModule shifted(int by) const;

    bool operator==(const GradedModule&) const = default;

    std::string to_text(bool unicode = false) const;  // "0: Z | 1: Z/2"

private:
    std::map<int, FgModule> entries_;
};

GradedModule direct_sum(const GradedModule& a, const GradedModule& b);

/* Integer matrices, row-major.  Empty matrices are allowed. */
using Matrix = std::vector<std::vector<Bigint>>;

Matrix identity_matrix(size_t n);
Matrix matmul(const Matrix& a, const Matrix& b);
Bigint determinant(Matrix m);

struct SmithNormalForm {
    Matrix u, v;                  // unimodular, u * m * v = diag(factors)
    std::vector<Bigint> factors;  // min(rows, cols) entries, d_i >= 0, d_i | d_{i+1}
};

SmithNormalForm smith_normal_form(const Matrix& m);

// Z^ambient_rank / im(m); m must have ambient_rank rows (or be empty).
FgModule cokernel(const Matrix& m, Int ambient_rank);

}  // namespace tsic
