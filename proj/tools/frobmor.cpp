// Command-line driver: runs a named verification suite with a seeded,
// deterministic configuration and reports pass/fail per check. Exits
// nonzero when any check fails.

#include "frobmor/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"frobmor: instance checker for stable monomorphism categories over k[x]/(x^n)"};

    frobmor::SessionConfig cfg;
    std::string suite;
    std::string json_out;
    std::string roundtrip;

    app.add_option("--p", cfg.p, "prime modulus")->default_val(5);
    app.add_option("--n", cfg.n, "nilpotency order of the base algebra")->default_val(2);
    app.add_option("--l", cfg.l, "chain length")->default_val(1);
    app.add_option("--seed", cfg.seed, "random seed")->default_val(1);
    app.add_option("--trials", cfg.trials, "trials per check")->default_val(25);
    app.add_option("--max-dim", cfg.max_dim, "max module dimension for samples")->default_val(6);
    app.add_option("--suite", suite, "suite to run (exactness, sod, polygon, mutations, theta-sigma, adjoints, duality)");
    app.add_option("--json-out", json_out, "write the report as JSON to this path");
    app.add_option("--roundtrip", roundtrip, "parse a ChainObject/ChainMap JSON file, validate and echo it");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!roundtrip.empty()) {
            std::ifstream in(roundtrip);
            if (!in) {
                std::cerr << "cannot open " << roundtrip << "\n";
                return 2;
            }
            frobmor::json j = frobmor::json::parse(in);
            if (j.contains("comps"))
                std::cout << frobmor::to_json(frobmor::chain_map_from_json(j, cfg.p)).dump(2)
                          << "\n";
            else
                std::cout << frobmor::to_json(frobmor::chain_from_json(j, cfg.p)).dump(2) << "\n";
            return 0;
        }

        if (suite.empty()) {
            std::cerr << "usage error: --suite is required (one of";
            for (auto& s : frobmor::suite_names()) std::cerr << " " << s;
            std::cerr << ")\n";
            return 2;
        }

        frobmor::Report rep = frobmor::run_suite(suite, cfg);
        for (const auto& c : rep.checks) {
            const char* status = c.skipped ? "SKIP" : (c.passed() ? "PASS" : "FAIL");
            std::cout << "[" << status << "] " << rep.suite << "/" << c.name << " (trials="
                      << c.trials << ", failures=" << c.failures.size() << ")\n";
            for (const auto& f : c.failures)
                std::cout << "        " << f.dump() << "\n";
        }
        std::cout << (rep.passed() ? "suite passed" : "suite FAILED") << " in " << rep.wall_ms
                  << " ms\n";
        if (!json_out.empty()) {
            std::ofstream out(json_out);
            out << rep.to_json().dump(2) << "\n";
        }
        return rep.passed() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
