/*
 * Scenario files and command dispatch: a small structured-text format
 * bundling a space expression, perversity tables, coefficient data, a
 * coarsening map, and per-command parameters.  Commands produce a
 * human-readable table plus a machine-readable JSON report.
 */
#pragma once

#include "tsic/compat.hpp"

namespace tsic {

class parse_error : public error {
public:
    parse_error(int line, int column, const std::string& what)
        : error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                what),
          line_(line),
          column_(column)
    {
    }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

struct Scenario {
    SpacePtr space;
    std::optional<TsPerversity> perversity;
    std::optional<TsPerversity> perversity_bar;
    std::optional<CoefficientData> coefficients;
    std::optional<std::string> stratum;
    std::optional<Int> m;
    std::optional<ProbePrime> q;
    std::optional<Int> k;
    std::optional<PervValue> p;
    std::optional<PervValue> p_bar;
    std::optional<CoarseningMap> coarsening;
    std::optional<std::string> variant;
};

Scenario parse_scenario(const std::string& text);
std::string scenario_to_text(const Scenario& sc);  // canonical form; reparses to the same value

struct RunOptions {
    bool unicode = false;
    uint64_t seed = 1;
    int random_n = 0;
    std::optional<int> max_degree;
};

struct RunResult {
    int exit_code = 0;  // 0 pass, 1 check failure (input errors are thrown)
    std::string output;
    nlohmann::json report;
};

extern const std::vector<std::string> kCommands;

RunResult run_command(const std::string& command, const Scenario& sc, const RunOptions& opt = {});

}  // namespace tsic
