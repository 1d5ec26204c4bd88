#include "tsic/fgmod.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tsic {

bool is_prime(Int n)
{
    if (n < 2)
        return false;
    if (n < 4)
        return true;
    if (n % 2 == 0)
        return false;
    for (Int d = 3; d * d <= n; d += 2)
        if (n % d == 0)
            return false;
    return true;
}

static std::vector<Int> normalize_primes(std::vector<Int> primes)
{
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (Int p : primes)
        if (!is_prime(p))
            throw error("prime set element " + std::to_string(p) + " is not prime");
    return primes;
}

PrimeSet PrimeSet::empty()
{
    return PrimeSet();
}

PrimeSet PrimeSet::all_primes()
{
    PrimeSet s;
    s.cofinite_ = true;
    return s;
}

PrimeSet PrimeSet::all_plus_f()
{
    PrimeSet s;
    s.cofinite_ = true;
    s.has_f_ = true;
    return s;
}

PrimeSet PrimeSet::just_f()
{
    PrimeSet s;
    s.has_f_ = true;
    return s;
}

PrimeSet PrimeSet::of(std::initializer_list<Int> primes)
{
    return finite(std::vector<Int>(primes), false);
}

PrimeSet PrimeSet::finite(std::vector<Int> primes, bool with_f)
{
    PrimeSet s;
    s.elems_ = normalize_primes(std::move(primes));
    s.has_f_ = with_f;
    return s;
}

PrimeSet PrimeSet::cofinite(std::vector<Int> excluded, bool with_f)
{
    PrimeSet s;
    s.cofinite_ = true;
    s.elems_ = normalize_primes(std::move(excluded));
    s.has_f_ = with_f;
    return s;
}

bool PrimeSet::contains(Int p) const
{
    bool listed = std::binary_search(elems_.begin(), elems_.end(), p);
    return cofinite_ ? !listed : listed;
}

PrimeSet PrimeSet::complement() const
{
    PrimeSet s = *this;
    s.cofinite_ = !cofinite_;
    s.has_f_ = !has_f_;
    return s;
}

PrimeSet PrimeSet::complement_primes() const
{
    PrimeSet s = *this;
    s.cofinite_ = !cofinite_;
    s.has_f_ = false;
    return s;
}

PrimeSet PrimeSet::with_f(bool value) const
{
    PrimeSet s = *this;
    s.has_f_ = value;
    return s;
}

static std::vector<Int> sorted_union(const std::vector<Int>& a, const std::vector<Int>& b)
{
    std::vector<Int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

static std::vector<Int> sorted_intersect(const std::vector<Int>& a, const std::vector<Int>& b)
{
    std::vector<Int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

static std::vector<Int> sorted_minus(const std::vector<Int>& a, const std::vector<Int>& b)
{
    std::vector<Int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

PrimeSet set_union(const PrimeSet& a, const PrimeSet& b)
{
    PrimeSet s;
    if (!a.is_cofinite() && !b.is_cofinite())
        s = PrimeSet::finite(sorted_union(a.listed(), b.listed()));
    else if (a.is_cofinite() && b.is_cofinite())
        s = PrimeSet::cofinite(sorted_intersect(a.listed(), b.listed()));
    else if (a.is_cofinite())
        s = PrimeSet::cofinite(sorted_minus(a.listed(), b.listed()));
    else
        s = PrimeSet::cofinite(sorted_minus(b.listed(), a.listed()));
    return s.with_f(a.has_f() || b.has_f());
}

PrimeSet set_intersect(const PrimeSet& a, const PrimeSet& b)
{
    return set_union(a.complement(), b.complement()).complement();
}

bool PrimeSet::subset_of(const PrimeSet& other) const
{
    return set_intersect(*this, other.complement()).is_empty();
}

std::string PrimeSet::to_text(bool unicode) const
{
    std::ostringstream out;
    if (cofinite_) {
        out << "all";
        if (!elems_.empty()) {
            out << " \\ {";
            for (size_t i = 0; i < elems_.size(); ++i)
                out << (i ? "," : "") << elems_[i];
            out << "}";
        }
    } else {
        out << "{";
        for (size_t i = 0; i < elems_.size(); ++i)
            out << (i ? "," : "") << elems_[i];
        out << "}";
    }
    if (has_f_)
        out << (unicode ? " + {\xf0\x9d\x94\xa3}" : " + {f}");
    return out.str();
}

/* --- text scanning helpers shared by the small parsers below --- */

namespace {

struct Cursor {
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
            throw error(std::string("expected '") + c + "' in \"" + s + "\"");
    }
    bool eat_word(const std::string& w)
    {
        skip_ws();
        if (s.compare(i, w.size(), w) == 0) {
            i += w.size();
            return true;
        }
        return false;
    }
    bool at_end()
    {
        skip_ws();
        return i >= s.size();
    }
    Int number()
    {
        skip_ws();
        size_t start = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+'))
            ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            ++i;
        if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            throw error("expected a number in \"" + s + "\"");
        return std::stoll(s.substr(start, i - start));
    }
};

}  // namespace

PrimeSet PrimeSet::parse(const std::string& text)
{
    Cursor c{text};
    PrimeSet result;
    if (c.eat_word("all")) {
        std::vector<Int> excluded;
        if (c.eat('\\')) {
            c.expect('{');
            if (!c.eat('}')) {
                do
                    excluded.push_back(c.number());
                while (c.eat(','));
                c.expect('}');
            }
        }
        result = PrimeSet::cofinite(std::move(excluded));
    } else {
        c.expect('{');
        std::vector<Int> primes;
        if (!c.eat('}')) {
            do
                primes.push_back(c.number());
            while (c.eat(','));
            c.expect('}');
        }
        result = PrimeSet::finite(std::move(primes));
    }
    if (!c.at_end())
        throw error("trailing characters in prime set \"" + text + "\"");
    return result;
}

/* --- FgModule --- */

FgModule::FgModule(Int free_rank, std::vector<PrimePower> torsion)
    : rank_(free_rank), torsion_(std::move(torsion))
{
    if (rank_ < 0)
        throw error("negative free rank");
    for (const auto& t : torsion_) {
        if (!is_prime(t.p))
            throw error("torsion base " + std::to_string(t.p) + " is not prime");
        if (t.e < 1)
            throw error("torsion exponent must be >= 1");
    }
    std::sort(torsion_.begin(), torsion_.end());
}

FgModule FgModule::cyclic(const Bigint& n)
{
    if (n < 0)
        throw error("cyclic order must be >= 0");
    if (n == 0)
        return free_of_rank(1);
    if (n == 1)
        return zero();
    return FgModule(0, factorize(n));
}

FgModule FgModule::torsion_part(const PrimeSet& ps) const
{
    std::vector<PrimePower> kept;
    for (const auto& t : torsion_)
        if (ps.contains(t.p))
            kept.push_back(t);
    return FgModule(ps.has_f() ? rank_ : 0, std::move(kept));
}

FgModule FgModule::quotient_by_torsion(const PrimeSet& ps) const
{
    if (ps.has_f())
        throw error("quotient_by_torsion requires a prime set without f");
    return torsion_part(ps.complement());
}

bool FgModule::torsion_by(const PrimeSet& ps) const
{
    return torsion_part(ps) == *this;
}

bool FgModule::torsion_free_by(const PrimeSet& ps) const
{
    return torsion_part(ps.with_f(false)).is_zero();
}

PrimeSet FgModule::prime_support() const
{
    std::vector<Int> primes;
    for (const auto& t : torsion_)
        primes.push_back(t.p);
    return PrimeSet::finite(std::move(primes));
}

std::vector<Bigint> FgModule::invariant_factors() const
{
    // group equal primes; the largest power of each prime goes into the last
    // factor, the next largest into the one before it, and so on
    std::map<Int, std::vector<int>> by_prime;
    for (const auto& t : torsion_)
        by_prime[t.p].push_back(t.e);
    size_t count = 0;
    for (auto& [p, es] : by_prime) {
        std::sort(es.rbegin(), es.rend());
        count = std::max(count, es.size());
    }
    std::vector<Bigint> factors(count, Bigint(1));
    for (const auto& [p, es] : by_prime)
        for (size_t i = 0; i < es.size(); ++i) {
            Bigint pw = 1;
            for (int j = 0; j < es[i]; ++j)
                pw *= p;
            factors[count - 1 - i] *= pw;
        }
    return factors;
}

FgModule FgModule::from_invariant_factors(Int free_rank, const std::vector<Bigint>& factors)
{
    FgModule acc = free_of_rank(free_rank);
    for (const auto& d : factors) {
        if (d < 0)
            throw error("invariant factors must be >= 0");
        acc = direct_sum(acc, cyclic(d));
    }
    return acc;
}

FgModule direct_sum(const FgModule& a, const FgModule& b)
{
    std::vector<PrimePower> torsion = a.torsion();
    torsion.insert(torsion.end(), b.torsion().begin(), b.torsion().end());
    return FgModule(a.free_rank() + b.free_rank(), std::move(torsion));
}

std::vector<PrimePower> factorize(Bigint n)
{
    if (n < 2)
        throw error("factorize requires n >= 2");
    std::vector<PrimePower> out;
    auto strip = [&](Int p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e)
            out.push_back({p, e});
    };
    strip(2);
    for (Int p = 3; Bigint(p) * p <= n; p += 2)
        strip(p);
    if (n > 1) {
        if (n > Bigint(std::numeric_limits<Int>::max()))
            throw error("prime factor too large to store");
        out.push_back({static_cast<Int>(n), 1});
    }
    return out;
}

static Bigint prime_power_value(const PrimePower& t)
{
    Bigint v = 1;
    for (int i = 0; i < t.e; ++i)
        v *= t.p;
    return v;
}

std::string FgModule::to_text(bool unicode) const
{
    if (is_zero())
        return "0";
    const char* z = unicode ? "\xe2\x84\xa4" : "Z";
    std::ostringstream out;
    bool first = true;
    auto sep = [&] {
        if (!first)
            out << " + ";
        first = false;
    };
    if (rank_ > 0) {
        sep();
        out << z;
        if (rank_ > 1)
            out << "^" << rank_;
    }
    for (const auto& t : torsion_) {
        sep();
        out << z << "/" << prime_power_value(t);
    }
    return out.str();
}

FgModule FgModule::parse(const std::string& text)
{
    Cursor c{text};
    if (c.eat('0')) {
        if (!c.at_end())
            throw error("trailing characters in module \"" + text + "\"");
        return zero();
    }
    FgModule acc;
    do {
        if (!c.eat('Z'))
            throw error("expected 'Z' or '0' in module \"" + text + "\"");
        if (c.eat('/')) {
            Int n = c.number();
            if (n < 0)
                throw error("negative cyclic order in \"" + text + "\"");
            acc = direct_sum(acc, cyclic(Bigint(n)));
        } else if (c.eat('^')) {
            Int r = c.number();
            acc = direct_sum(acc, free_of_rank(r));
        } else {
            acc = direct_sum(acc, free_of_rank(1));
        }
    } while (c.eat('+'));
    if (!c.at_end())
        throw error("trailing characters in module \"" + text + "\"");
    return acc;
}

/* --- GradedModule --- */

GradedModule::GradedModule(std::initializer_list<std::pair<int, FgModule>> entries)
{
    for (const auto& [d, m] : entries)
        set(d, m);
}

GradedModule GradedModule::from_list(int first_degree, const std::vector<FgModule>& mods)
{
    GradedModule g;
    for (size_t i = 0; i < mods.size(); ++i)
        g.set(first_degree + static_cast<int>(i), mods[i]);
    return g;
}

void GradedModule::set(int degree, FgModule m)
{
    if (m.is_zero())
        entries_.erase(degree);
    else
        entries_[degree] = std::move(m);
}

const FgModule& GradedModule::at(int degree) const
{
    static const FgModule zero;
    auto it = entries_.find(degree);
    return it == entries_.end() ? zero : it->second;
}

std::optional<int> GradedModule::min_degree() const
{
    if (entries_.empty())
        return std::nullopt;
    return entries_.begin()->first;
}

std::optional<int> GradedModule::max_degree() const
{
    if (entries_.empty())
        return std::nullopt;
    return entries_.rbegin()->first;
}

GradedModule GradedModule::shifted(int by) const
{
    GradedModule g;
    for (const auto& [d, m] : entries_)
        g.set(d + by, m);
    return g;
}

std::string GradedModule::to_text(bool unicode) const
{
    if (entries_.empty())
        return "0";
    std::ostringstream out;
    int lo = *min_degree(), hi = *max_degree();
    for (int d = lo; d <= hi; ++d) {
        if (d > lo)
            out << " | ";
        out << d << ": " << at(d).to_text(unicode);
    }
    return out.str();
}

GradedModule direct_sum(const GradedModule& a, const GradedModule& b)
{
    GradedModule g = a;
    for (const auto& [d, m] : b.entries())
        g.set(d, direct_sum(g.at(d), m));
    return g;
}

/* --- integer matrices and Smith normal form --- */

Matrix identity_matrix(size_t n)
{
    Matrix m(n, std::vector<Bigint>(n, 0));
    for (size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

Matrix matmul(const Matrix& a, const Matrix& b)
{
    size_t ra = a.size(), ca = ra ? a[0].size() : 0;
    size_t rb = b.size(), cb = rb ? b[0].size() : 0;
    if (ca != rb)
        throw error("matmul shape mismatch");
    Matrix out(ra, std::vector<Bigint>(cb, 0));
    for (size_t i = 0; i < ra; ++i)
        for (size_t k = 0; k < ca; ++k) {
            if (a[i][k] == 0)
                continue;
            for (size_t j = 0; j < cb; ++j)
                out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

Bigint determinant(Matrix m)
{
    size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n)
            throw error("determinant requires a square matrix");
    // fraction-free Gaussian elimination (Bareiss)
    Bigint sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0)
                ++piv;
            if (piv == n)
                return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return n == 0 ? sign : sign * m[n - 1][n - 1];
}

namespace {

struct SnfWorker {
    Matrix m, u, v;
    size_t rows, cols;

    explicit SnfWorker(Matrix input) : m(std::move(input))
    {
        rows = m.size();
        cols = rows ? m[0].size() : 0;
        for (const auto& row : m)
            if (row.size() != cols)
                throw error("ragged matrix");
        u = identity_matrix(rows);
        v = identity_matrix(cols);
    }

    void swap_rows(size_t a, size_t b)
    {
        if (a == b)
            return;
        std::swap(m[a], m[b]);
        std::swap(u[a], u[b]);
    }
    void swap_cols(size_t a, size_t b)
    {
        if (a == b)
            return;
        for (size_t i = 0; i < rows; ++i)
            std::swap(m[i][a], m[i][b]);
        for (size_t i = 0; i < cols; ++i)
            std::swap(v[i][a], v[i][b]);
    }
    void add_row(size_t dst, size_t src, const Bigint& c)  // row dst += c * row src
    {
        for (size_t j = 0; j < cols; ++j)
            m[dst][j] += c * m[src][j];
        for (size_t j = 0; j < rows; ++j)
            u[dst][j] += c * u[src][j];
    }
    void add_col(size_t dst, size_t src, const Bigint& c)
    {
        for (size_t i = 0; i < rows; ++i)
            m[i][dst] += c * m[i][src];
        for (size_t i = 0; i < cols; ++i)
            v[i][dst] += c * v[i][src];
    }
    void negate_row(size_t r)
    {
        for (size_t j = 0; j < cols; ++j)
            m[r][j] = -m[r][j];
        for (size_t j = 0; j < rows; ++j)
            u[r][j] = -u[r][j];
    }

    bool find_pivot(size_t t, size_t& pi, size_t& pj)
    {
        bool found = false;
        Bigint best = 0;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j) {
                if (m[i][j] == 0)
                    continue;
                Bigint a = abs(m[i][j]);
                if (!found || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        return found;
    }

    void run()
    {
        size_t t = 0;
        while (t < rows && t < cols) {
            size_t pi, pj;
            if (!find_pivot(t, pi, pj))
                break;
            swap_rows(t, pi);
            swap_cols(t, pj);

            bool clean = true;
            for (size_t i = t + 1; i < rows; ++i)
                if (m[i][t] != 0) {
                    add_row(i, t, -(m[i][t] / m[t][t]));
                    if (m[i][t] != 0)
                        clean = false;
                }
            for (size_t j = t + 1; j < cols; ++j)
                if (m[t][j] != 0) {
                    add_col(j, t, -(m[t][j] / m[t][t]));
                    if (m[t][j] != 0)
                        clean = false;
                }
            if (!clean)
                continue;  // smaller remainders appeared, pick a new pivot

            // pivot must divide the rest of the submatrix
            bool divides = true;
            for (size_t i = t + 1; i < rows && divides; ++i)
                for (size_t j = t + 1; j < cols && divides; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        add_row(t, i, 1);
                        divides = false;
                    }
            if (!divides)
                continue;

            if (m[t][t] < 0)
                negate_row(t);
            ++t;
        }
    }
};

}  // namespace

SmithNormalForm smith_normal_form(const Matrix& input)
{
    SnfWorker w(input);
    w.run();
    SmithNormalForm out;
    size_t n = std::min(w.rows, w.cols);
    out.factors.resize(n);
    for (size_t i = 0; i < n; ++i)
        out.factors[i] = w.m[i][i];
    out.u = std::move(w.u);
    out.v = std::move(w.v);
    return out;
}

FgModule cokernel(const Matrix& m, Int ambient_rank)
{
    if (ambient_rank < 0)
        throw error("ambient rank must be >= 0");
    if (!m.empty() && static_cast<Int>(m.size()) != ambient_rank)
        throw error("matrix has " + std::to_string(m.size()) + " rows but ambient rank is " +
                    std::to_string(ambient_rank));
    auto snf = smith_normal_form(m);
    FgModule acc;
    Int free = ambient_rank;
    for (const auto& d : snf.factors)
        if (d != 0) {
            --free;
            if (d > 1)
                acc = direct_sum(acc, FgModule::cyclic(d));
        }
    return direct_sum(acc, FgModule::free_of_rank(free));
}

}  // namespace tsic
