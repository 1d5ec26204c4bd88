#include "tsic/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"exact calculator and axiom checker for ts-Deligne sheaves on grammar spaces"};
    app.get_formatter()->column_width(26);

    std::string command, scenario_path, json_path;
    bool unicode = false;
    uint64_t seed = 1;
    int random_n = 0;
    int max_degree = 0;
    bool has_max_degree = false;

    app.add_option("command", command, "one of: compute stalk costalk axioms compat dual classify pinv demo-invariance demo-necessity")
        ->required();
    app.add_option("scenario", scenario_path, "scenario file")->required();
    app.add_option("--json", json_path, "write a machine-readable report to this path");
    app.add_flag("--unicode", unicode, "render groups with unicode symbols");
    app.add_option("--seed", seed, "seed for randomized sweeps");
    app.add_option("--random", random_n, "run this many random instances (demo commands)");
    auto* md = app.add_option("--max-degree", max_degree, "clamp displayed degree range");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    has_max_degree = md->count() > 0;

    if (std::find(tsic::kCommands.begin(), tsic::kCommands.end(), command) == tsic::kCommands.end()) {
        std::cerr << "error: unknown command '" << command << "'\n";
        return 2;
    }

    std::ifstream in(scenario_path);
    if (!in) {
        std::cerr << "error: cannot open " << scenario_path << "\n";
        return 2;
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    try {
        tsic::Scenario sc = tsic::parse_scenario(text);
        tsic::RunOptions opt;
        opt.unicode = unicode;
        opt.seed = seed;
        opt.random_n = random_n;
        if (has_max_degree)
            opt.max_degree = max_degree;
        tsic::RunResult res = tsic::run_command(command, sc, opt);
        std::cout << res.output;
        if (!json_path.empty()) {
            std::ofstream out(json_path);
            if (!out) {
                std::cerr << "error: cannot write " << json_path << "\n";
                return 2;
            }
            out << res.report.dump(2) << "\n";
        }
        return res.exit_code;
    } catch (const tsic::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
