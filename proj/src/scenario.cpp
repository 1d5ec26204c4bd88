#include "tsic/scenario.hpp"

#include "tsic/random_instances.hpp"

#include <algorithm>
#include <sstream>

namespace tsic {

const std::vector<std::string> kCommands = {
    "compute", "stalk",    "costalk", "axioms",          "compat",
    "dual",    "classify", "pinv",    "demo-invariance", "demo-necessity"};

/* --- scenario parsing --- */

namespace {

struct Where {
    int line = 1;
    int column = 1;
};

struct ScenarioCursor {
    std::string text;
    size_t i = 0;
    int line = 1;
    size_t line_start = 0;

    Where where() const { return {line, static_cast<int>(i - line_start) + 1}; }

    void advance(size_t to)
    {
        for (; i < to && i < text.size(); ++i)
            if (text[i] == '\n') {
                ++line;
                line_start = i + 1;
            }
    }
    void skip_ws_and_comments()
    {
        while (i < text.size()) {
            char c = text[i];
            if (c == '#') {
                size_t eol = text.find('\n', i);
                advance(eol == std::string::npos ? text.size() : eol);
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance(i + 1);
            } else {
                break;
            }
        }
    }
    bool at_end()
    {
        skip_ws_and_comments();
        return i >= text.size();
    }
    std::string key()
    {
        skip_ws_and_comments();
        size_t start = i;
        while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                                   text[i] == '_' || text[i] == '-'))
            advance(i + 1);
        if (i == start)
            throw parse_error(line, where().column, "expected a key");
        return text.substr(start, i - start);
    }
    // value after '=' runs to end of line (strip trailing comment)
    std::string line_value()
    {
        size_t eol = text.find('\n', i);
        if (eol == std::string::npos)
            eol = text.size();
        size_t hash = text.find('#', i);
        size_t stop = (hash != std::string::npos && hash < eol) ? hash : eol;
        std::string v = text.substr(i, stop - i);
        advance(eol);
        size_t a = v.find_first_not_of(" \t\r");
        size_t b = v.find_last_not_of(" \t\r");
        if (a == std::string::npos)
            throw parse_error(line, where().column, "empty value");
        return v.substr(a, b - a + 1);
    }
    // balanced { ... } block, possibly spanning lines; returns inner text
    std::string block()
    {
        skip_ws_and_comments();
        if (i >= text.size() || text[i] != '{')
            throw parse_error(line, where().column, "expected '{'");
        advance(i + 1);
        size_t start = i;
        int depth = 1;
        while (i < text.size()) {
            char c = text[i];
            if (c == '{')
                ++depth;
            if (c == '}') {
                --depth;
                if (depth == 0) {
                    std::string inner = text.substr(start, i - start);
                    advance(i + 1);
                    return inner;
                }
            }
            advance(i + 1);
        }
        throw parse_error(line, where().column, "unterminated block");
    }
};

std::vector<std::string> split_entries(const std::string& block)
{
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : block) {
        if (c == '(' || c == '{' || c == '[')
            ++depth;
        if (c == ')' || c == '}' || c == ']')
            --depth;
        if ((c == ';' || c == '\n') && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    std::vector<std::string> trimmed;
    for (auto& e : out) {
        size_t a = e.find_first_not_of(" \t\r");
        if (a == std::string::npos)
            continue;
        size_t b = e.find_last_not_of(" \t\r");
        trimmed.push_back(e.substr(a, b - a + 1));
    }
    return trimmed;
}

PervValue parse_perv_value(const std::string& s, Where at)
{
    size_t open = s.find('(');
    size_t comma = s.find(',', open);
    size_t close = s.rfind(')');
    if (open == std::string::npos || comma == std::string::npos || close == std::string::npos)
        throw parse_error(at.line, at.column, "perversity value must look like (p1, {primes})");
    try {
        Int p1 = std::stoll(s.substr(open + 1, comma - open - 1));
        PrimeSet p2 = PrimeSet::parse(s.substr(comma + 1, close - comma - 1));
        return {p1, p2};
    } catch (const std::exception& e) {
        throw parse_error(at.line, at.column, std::string("bad perversity value: ") + e.what());
    }
}

TsPerversity parse_perversity_block(const std::string& block, Where at)
{
    std::map<int, PervValue> by_codim;
    std::map<std::string, PervValue> by_stratum;
    for (const auto& entry : split_entries(block)) {
        size_t eq = entry.find('=');
        if (eq == std::string::npos)
            throw parse_error(at.line, at.column, "perversity entries look like key = (p1, {primes})");
        std::string key = entry.substr(0, eq);
        size_t b = key.find_last_not_of(" \t");
        key = key.substr(0, b + 1);
        PervValue v = parse_perv_value(entry.substr(eq + 1), at);
        if (!key.empty() && key[0] == '/')
            by_stratum[key] = v;
        else {
            try {
                by_codim[std::stoi(key)] = v;
            } catch (...) {
                throw parse_error(at.line, at.column, "perversity key '" + key + "' is neither a codimension nor a stratum path");
            }
        }
    }
    if (!by_codim.empty() && !by_stratum.empty())
        throw parse_error(at.line, at.column, "perversity mixes codimension and stratum keys");
    if (!by_stratum.empty())
        return TsPerversity::per_stratum(std::move(by_stratum));
    if (by_codim.empty())
        throw parse_error(at.line, at.column, "empty perversity");
    // a table starting at codimension 2 extends flat across codimension 1
    if (!by_codim.count(1) && by_codim.count(2))
        by_codim[1] = by_codim[2];
    int max = by_codim.rbegin()->first;
    std::vector<PervValue> table;
    for (int kk = 1; kk <= max; ++kk) {
        auto it = by_codim.find(kk);
        if (it == by_codim.end())
            throw parse_error(at.line, at.column, "perversity table is missing codimension " + std::to_string(kk));
        table.push_back(it->second);
    }
    try {
        return TsPerversity::codim_table(std::move(table));
    } catch (const error& e) {
        throw parse_error(at.line, at.column, e.what());
    }
}

CoefficientData parse_coefficients_block(const std::string& block, Where at)
{
    std::optional<FgModule> h0, h1;
    for (const auto& entry : split_entries(block)) {
        size_t eq = entry.find('=');
        if (eq == std::string::npos)
            throw parse_error(at.line, at.column, "coefficient entries look like h0 = Z");
        std::string key = entry.substr(0, eq);
        key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
        try {
            FgModule m = FgModule::parse(entry.substr(eq + 1));
            if (key == "h0")
                h0 = m;
            else if (key == "h1")
                h1 = m;
            else
                throw parse_error(at.line, at.column, "unknown coefficient key '" + key + "'");
        } catch (const parse_error&) {
            throw;
        } catch (const error& e) {
            throw parse_error(at.line, at.column, e.what());
        }
    }
    if (!h0 || !h1)
        throw parse_error(at.line, at.column, "coefficients need both h0 and h1");
    try {
        return CoefficientData(*h0, *h1);
    } catch (const error& e) {
        throw parse_error(at.line, at.column, e.what());
    }
}

StratumRef parse_stratum_ref(const std::string& s, Where at, bool is_target)
{
    size_t open = s.find('(');
    if (open == std::string::npos)
        throw parse_error(at.line, at.column, "stratum reference needs (codim=K) or (regular)");
    std::string id = s.substr(0, open);
    size_t a = id.find_first_not_of(" \t");
    size_t b = id.find_last_not_of(" \t");
    if (a == std::string::npos)
        throw parse_error(at.line, at.column, "stratum reference is missing its id");
    id = id.substr(a, b - a + 1);
    std::string args = s.substr(open + 1, s.rfind(')') - open - 1);
    StratumRef ref;
    ref.id = id;
    if (args.find("regular") != std::string::npos) {
        if (!is_target)
            throw parse_error(at.line, at.column, "coarsening sources must be singular");
        ref.singular = false;
        ref.codim = 0;
        return ref;
    }
    size_t eq = args.find('=');
    if (args.find("codim") == std::string::npos || eq == std::string::npos)
        throw parse_error(at.line, at.column, "stratum reference needs codim=K");
    try {
        ref.codim = std::stoi(args.substr(eq + 1));
    } catch (const std::exception&) {
        throw parse_error(at.line, at.column, "bad codimension in stratum reference");
    }
    ref.singular = true;
    return ref;
}

CoarseningMap parse_coarsening_block(const std::string& block, Where at)
{
    CoarseningMap map;
    for (const auto& entry : split_entries(block)) {
        size_t arrow = entry.find("->");
        if (arrow == std::string::npos)
            throw parse_error(at.line, at.column, "coarsening entries look like src (codim=K) -> dst (codim=K, singular)");
        map.pairs.push_back({parse_stratum_ref(entry.substr(0, arrow), at, false),
                             parse_stratum_ref(entry.substr(arrow + 2), at, true)});
    }
    try {
        validate_map(map);
    } catch (const error& e) {
        throw parse_error(at.line, at.column, e.what());
    }
    return map;
}

}  // namespace

Scenario parse_scenario(const std::string& text)
{
    ScenarioCursor c{text};
    Scenario sc;
    while (!c.at_end()) {
        Where at = c.where();
        std::string key = c.key();
        c.skip_ws_and_comments();
        bool is_block = c.i < c.text.size() && c.text[c.i] == '{';
        if (key == "space") {
            if (is_block)
                throw parse_error(at.line, at.column, "space takes '= <expression>'");
            if (c.text[c.i] != '=')
                throw parse_error(at.line, at.column, "expected '=' after space");
            c.advance(c.i + 1);
            try {
                sc.space = SpaceExpr::parse(c.line_value());
            } catch (const error& e) {
                throw parse_error(at.line, at.column, e.what());
            }
        } else if (key == "perversity" || key == "perversity_bar") {
            auto p = parse_perversity_block(c.block(), at);
            (key == "perversity" ? sc.perversity : sc.perversity_bar) = p;
        } else if (key == "coefficients") {
            sc.coefficients = parse_coefficients_block(c.block(), at);
        } else if (key == "coarsening") {
            sc.coarsening = parse_coarsening_block(c.block(), at);
        } else {
            if (is_block || c.text[c.i] != '=')
                throw parse_error(at.line, at.column, "expected '=' after " + key);
            c.advance(c.i + 1);
            std::string value = c.line_value();
            try {
                if (key == "stratum")
                    sc.stratum = value;
                else if (key == "variant")
                    sc.variant = value;
                else if (key == "m")
                    sc.m = std::stoll(value);
                else if (key == "k")
                    sc.k = std::stoll(value);
                else if (key == "q")
                    sc.q = (value == "f") ? ProbePrime::f() : ProbePrime::prime(std::stoll(value));
                else if (key == "p")
                    sc.p = parse_perv_value(value, at);
                else if (key == "p_bar")
                    sc.p_bar = parse_perv_value(value, at);
                else
                    throw parse_error(at.line, at.column, "unknown key '" + key + "'");
            } catch (const parse_error&) {
                throw;
            } catch (const std::exception& e) {
                throw parse_error(at.line, at.column, std::string("bad value for ") + key + ": " + e.what());
            }
        }
    }
    return sc;
}

std::string scenario_to_text(const Scenario& sc)
{
    std::ostringstream out;
    if (sc.space)
        out << "space = " << sc.space->to_text() << "\n";
    if (sc.perversity)
        out << sc.perversity->to_text() << "\n";
    if (sc.perversity_bar) {
        std::string t = sc.perversity_bar->to_text();
        out << "perversity_bar" << t.substr(std::string("perversity").size()) << "\n";
    }
    if (sc.coefficients)
        out << "coefficients { h0 = " << sc.coefficients->h0().to_text()
            << "; h1 = " << sc.coefficients->h1().to_text() << " }\n";
    if (sc.coarsening) {
        out << "coarsening {\n";
        for (const auto& pr : sc.coarsening->pairs) {
            out << "  " << pr.source.id << " (codim=" << pr.source.codim << ") -> " << pr.target.id;
            if (pr.target.singular)
                out << " (codim=" << pr.target.codim << ")";
            else
                out << " (regular)";
            out << ";\n";
        }
        out << "}\n";
    }
    if (sc.stratum)
        out << "stratum = " << *sc.stratum << "\n";
    if (sc.variant)
        out << "variant = " << *sc.variant << "\n";
    if (sc.m)
        out << "m = " << *sc.m << "\n";
    if (sc.k)
        out << "k = " << *sc.k << "\n";
    if (sc.q)
        out << "q = " << sc.q->to_text() << "\n";
    if (sc.p)
        out << "p = " << sc.p->to_text() << "\n";
    if (sc.p_bar)
        out << "p_bar = " << sc.p_bar->to_text() << "\n";
    return out.str();
}

/* --- command dispatch --- */

namespace {

const SpacePtr& need_space(const Scenario& sc)
{
    if (!sc.space)
        throw error("this command needs a space");
    return sc.space;
}

const TsPerversity& need_perversity(const Scenario& sc)
{
    if (!sc.perversity)
        throw error("this command needs a perversity");
    return *sc.perversity;
}

const CoefficientData& need_coefficients(const Scenario& sc)
{
    if (!sc.coefficients)
        throw error("this command needs coefficients");
    return *sc.coefficients;
}

CoefficientData coefficients_or_unit(const Scenario& sc)
{
    if (sc.coefficients)
        return *sc.coefficients;
    return CoefficientData(FgModule::free_of_rank(1), FgModule::zero());
}

std::string graded_text(const GradedModule& g, const RunOptions& opt)
{
    if (!opt.max_degree || g.is_zero())
        return g.to_text(opt.unicode);
    GradedModule clamped;
    for (const auto& [d, m] : g.entries())
        if (d <= *opt.max_degree)
            clamped.set(d, m);
    return clamped.to_text(opt.unicode);
}

nlohmann::json graded_json(const GradedModule& g)
{
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [d, m] : g.entries())
        j[std::to_string(d)] = m.to_text();
    return j;
}

RunResult run_compute(const Scenario& sc, const RunOptions& opt)
{
    GradedModule h = hyper(need_space(sc), need_perversity(sc));
    RunResult r;
    r.output = graded_text(h, opt) + "\n";
    r.report["command"] = "compute";
    r.report["space"] = need_space(sc)->to_text();
    r.report["hyper"] = graded_json(h);
    return r;
}

RunResult run_stalk(const Scenario& sc, const RunOptions& opt, bool costalk_mode)
{
    if (!sc.stratum)
        throw error("this command needs a stratum");
    auto s = find_stratum(need_space(sc), *sc.stratum);
    if (!s)
        throw error("unknown stratum " + *sc.stratum);
    if (!s->singular && !sc.coefficients)
        throw error("a regular stratum needs coefficients");
    CoefficientData coeff = coefficients_or_unit(sc);
    GradedModule g = costalk_mode ? costalk(need_space(sc), need_perversity(sc), *sc.stratum, coeff)
                                  : stalk(need_space(sc), need_perversity(sc), *sc.stratum, coeff);
    RunResult r;
    r.output = graded_text(g, opt) + "\n";
    r.report["command"] = costalk_mode ? "costalk" : "stalk";
    r.report["stratum"] = *sc.stratum;
    r.report[costalk_mode ? "costalk" : "stalk"] = graded_json(g);
    return r;
}

void describe_failures(std::ostringstream& out, const AxiomReport& rep)
{
    for (const auto& ch : rep.checks)
        if (!ch.pass) {
            out << "  " << ch.clause;
            if (!ch.stratum.empty())
                out << " @ " << ch.stratum;
            if (ch.degree)
                out << " degree " << *ch.degree;
            if (!ch.probe.empty())
                out << " probe " << ch.probe;
            out << ": " << ch.detail << "\n";
        }
}

RunResult run_axioms(const Scenario& sc, const RunOptions&)
{
    const auto& space = need_space(sc);
    const auto& p = need_perversity(sc);
    const auto& coeff = need_coefficients(sc);

    AxiomReport first = check_tax1prime(space, p, coeff);
    RunResult r;
    std::ostringstream out;
    out << "TAx1': " << (first.pass ? "pass" : "FAIL") << "\n";
    describe_failures(out, first);
    r.report["command"] = "axioms";
    r.report["tax1prime"] = first.to_json();
    bool ok = first.pass;

    bool sigma = sc.variant && *sc.variant == "sigma";
    try {
        AxiomReport second = check_tax2(space, p, coeff, sigma);
        out << second.axiom << ": " << (second.pass ? "pass" : "FAIL") << "\n";
        describe_failures(out, second);
        r.report["tax2"] = second.to_json();
        ok = ok && second.pass;
    } catch (const error& e) {
        if (sigma)
            throw;  // explicitly requested, so a precondition violation is an input error
        out << "TAx2: skipped (" << e.what() << ")\n";
        r.report["tax2"] = nullptr;
        r.report["tax2_skipped"] = e.what();
    }
    r.output = out.str();
    r.exit_code = ok ? 0 : 1;
    return r;
}

RunResult run_compat(const Scenario& sc, const RunOptions&)
{
    if (!sc.coarsening)
        throw error("compat needs a coarsening map");
    if (!sc.perversity_bar)
        throw error("compat needs perversity_bar");
    CompatReport rep = check_E_compatible(need_perversity(sc), *sc.perversity_bar, *sc.coarsening,
                                          need_coefficients(sc));
    RunResult r;
    std::ostringstream out;
    out << (rep.compatible ? "compatible" : "incompatible") << "\n";
    for (const auto& cond : rep.conditions)
        if (!cond.pass)
            out << "  " << cond.clause << " @ " << cond.source << " -> " << cond.target << ": "
                << cond.detail << "\n";
    r.output = out.str();
    r.report["command"] = "compat";
    r.report["result"] = rep.to_json();
    r.exit_code = rep.compatible ? 0 : 1;
    return r;
}

RunResult run_dual(const Scenario& sc, const RunOptions& opt)
{
    TsPerversity d = dual(need_perversity(sc));
    RunResult r;
    r.output = d.to_text(opt.unicode) + "\n";
    r.report["command"] = "dual";
    r.report["dual"] = d.to_text();
    return r;
}

RunResult run_classify(const Scenario& sc, const RunOptions&)
{
    ClassifyReport rep = classify(need_perversity(sc));
    RunResult r;
    std::ostringstream out;
    out << to_string(rep.label) << "\n";
    out << "growth: " << (rep.growth ? "pass" : "fail") << "\n";
    out << "p1(2) in {-1,0,1}: " << (rep.p1_at_2_in_range ? "pass" : "fail") << "\n";
    out << "flat steps grow p2: " << (rep.flat_inclusions ? "pass" : "fail") << "\n";
    out << "up steps shrink p2: " << (rep.step_inclusions ? "pass" : "fail") << "\n";
    out << "p1(2) = 0: " << (rep.p1_at_2_zero ? "pass" : "fail") << "\n";
    out << "efficient: ";
    if (rep.all_efficient)
        out << "all";
    else {
        bool first = true;
        for (const auto& [codim, eff] : rep.efficiency)
            if (!eff) {
                out << (first ? "all except " : ",") << codim;
                first = false;
            }
    }
    out << "\n";
    r.output = out.str();
    r.report["command"] = "classify";
    r.report["label"] = to_string(rep.label);
    r.report["growth"] = rep.growth;
    r.report["p1_at_2_in_range"] = rep.p1_at_2_in_range;
    r.report["p1_at_2_zero"] = rep.p1_at_2_zero;
    r.report["flat_inclusions"] = rep.flat_inclusions;
    r.report["step_inclusions"] = rep.step_inclusions;
    r.report["all_efficient"] = rep.all_efficient;
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : rep.failures)
        failures.push_back({{"condition", f.condition}, {"codim", f.codim}, {"detail", f.detail}});
    r.report["failures"] = failures;
    return r;
}

RunResult run_pinv(const Scenario& sc, const RunOptions&)
{
    if (!sc.m || !sc.q)
        throw error("pinv needs m and q");
    PInv v = p_inverse(need_perversity(sc), *sc.m, *sc.q);
    RunResult r;
    r.output = v.to_text() + "\n";
    r.report["command"] = "pinv";
    r.report["m"] = *sc.m;
    r.report["q"] = sc.q->to_text();
    r.report["pinv"] = v.infinite() ? nlohmann::json() : nlohmann::json(*v.codim);
    return r;
}

RunResult run_demo_invariance(const Scenario& sc, const RunOptions& opt)
{
    RunResult r;
    r.report["command"] = "demo-invariance";
    std::ostringstream out;
    if (opt.random_n > 0) {
        SplitMix64 rng(opt.seed);
        const std::vector<Int> primes{2, 3, 5};
        int failures = 0;
        nlohmann::json cases = nlohmann::json::array();
        for (int i = 0; i < opt.random_n; ++i) {
            SpacePtr leaf = gen::random_leaf(rng, 4, primes);
            int k = static_cast<int>(rng.range(1, 3));
            Int p1 = rng.range(-1, leaf->dim() + 1);
            PrimeSet p2 = gen::random_prime_set(rng, primes, true, false);
            auto rep = demo_join_vs_susp(k, leaf, p1, p2);
            if (!rep.equal || !rep.induced_compat.compatible) {
                ++failures;
                cases.push_back({{"index", i},
                                 {"space", leaf->to_text()},
                                 {"k", k},
                                 {"p", PervValue{p1, p2}.to_text()},
                                 {"detail", rep.to_json()}});
            }
        }
        out << "demo-invariance: " << (opt.random_n - failures) << "/" << opt.random_n
            << " equal (seed " << opt.seed << ")\n";
        r.report["instances"] = opt.random_n;
        r.report["failures"] = failures;
        r.report["failing_cases"] = cases;
        r.exit_code = failures ? 1 : 0;
    } else {
        if (!sc.k || !sc.p)
            throw error("demo-invariance needs k and p (or --random N)");
        auto rep = demo_join_vs_susp(static_cast<int>(*sc.k), need_space(sc), sc.p->p1, sc.p->p2,
                                     sc.perversity ? &*sc.perversity : nullptr);
        out << "join: " << graded_text(rep.join_side, opt) << "\n";
        out << "susp: " << graded_text(rep.susp_side, opt) << "\n";
        out << "equal: " << (rep.equal ? "yes" : "no") << "\n";
        out << "compatible: " << (rep.induced_compat.compatible ? "yes" : "no") << "\n";
        r.report["result"] = rep.to_json();
        r.exit_code = rep.equal && rep.induced_compat.compatible ? 0 : 1;
    }
    r.output = out.str();
    return r;
}

RunResult run_demo_necessity(const Scenario& sc, const RunOptions& opt)
{
    if (!sc.variant)
        throw error("demo-necessity needs variant = sing-in-sing or sing-in-reg");
    RunResult r;
    r.report["command"] = "demo-necessity";
    r.report["variant"] = *sc.variant;
    std::ostringstream out;

    if (*sc.variant == "sing-in-sing") {
        if (opt.random_n > 0) {
            SplitMix64 rng(opt.seed);
            const std::vector<Int> primes{2, 3, 5};
            int matches = 0, sufficiency_violations = 0;
            for (int i = 0; i < opt.random_n; ++i) {
                SpacePtr leaf = gen::random_leaf(rng, 3, primes);
                int k = static_cast<int>(rng.range(0, 2));
                PervValue bar{rng.range(-1, leaf->dim()), gen::random_prime_set(rng, primes, false, false)};
                PervValue vertex{rng.range(bar.p1 - 1, bar.p1 + k + 2),
                                 gen::random_prime_set(rng, primes, false, false)};
                auto rep = demo_necessity_sing_in_sing(k, leaf, vertex, bar);
                if (rep.match)
                    ++matches;
                if (rep.condition1 && !rep.match)
                    ++sufficiency_violations;
            }
            out << "demo-necessity: " << opt.random_n << " instances, " << matches << " match, "
                << (opt.random_n - matches) << " mismatch, " << sufficiency_violations
                << " sufficiency violations (seed " << opt.seed << ")\n";
            r.report["instances"] = opt.random_n;
            r.report["matches"] = matches;
            r.report["sufficiency_violations"] = sufficiency_violations;
            r.exit_code = sufficiency_violations ? 1 : 0;
        } else {
            if (!sc.k || !sc.p || !sc.p_bar)
                throw error("sing-in-sing needs k, p (vertex) and p_bar");
            auto rep = demo_necessity_sing_in_sing(static_cast<int>(*sc.k), need_space(sc), *sc.p,
                                                   *sc.p_bar,
                                                   sc.perversity ? &*sc.perversity : nullptr);
            out << "coarse:  " << graded_text(rep.coarse_stalk, opt) << "\n";
            out << "refined: " << graded_text(rep.refined_stalk, opt) << "\n";
            out << "match: " << (rep.match ? "yes" : "no") << "\n";
            out << "condition 1: " << (rep.condition1 ? "holds" : "violated") << "\n";
            r.report["result"] = rep.to_json();
            r.exit_code = 0;
        }
    } else if (*sc.variant == "sing-in-reg") {
        if (!sc.k || !sc.p)
            throw error("sing-in-reg needs k and p");
        auto rep = demo_necessity_sing_in_reg(static_cast<int>(*sc.k), need_coefficients(sc), *sc.p);
        out << "link:  " << graded_text(rep.link_hyper, opt) << "\n";
        out << "stalk: " << graded_text(rep.refined_stalk, opt) << "\n";
        out << "coeff: " << graded_text(rep.coeff_stalk, opt) << "\n";
        out << "match: " << (rep.match ? "yes" : "no") << "\n";
        out << "scenario: " << rep.scenario << "\n";
        r.report["result"] = rep.to_json();
        r.exit_code = 0;
    } else {
        throw error("unknown demo-necessity variant '" + *sc.variant + "'");
    }
    r.output = out.str();
    return r;
}

}  // namespace

RunResult run_command(const std::string& command, const Scenario& sc, const RunOptions& opt)
{
    if (command == "compute")
        return run_compute(sc, opt);
    if (command == "stalk")
        return run_stalk(sc, opt, false);
    if (command == "costalk")
        return run_stalk(sc, opt, true);
    if (command == "axioms")
        return run_axioms(sc, opt);
    if (command == "compat")
        return run_compat(sc, opt);
    if (command == "dual")
        return run_dual(sc, opt);
    if (command == "classify")
        return run_classify(sc, opt);
    if (command == "pinv")
        return run_pinv(sc, opt);
    if (command == "demo-invariance")
        return run_demo_invariance(sc, opt);
    if (command == "demo-necessity")
        return run_demo_necessity(sc, opt);
    throw error("unknown command '" + command + "'");
}

}  // namespace tsic
