#pragma once

#include "frobmor/json_io.hpp"
#include "frobmor/random_gen.hpp"

#include <string>
#include <vector>

namespace frobmor {

struct SessionConfig {
    u32 p = 5;
    u32 n = 2;
    int l = 1;
    std::uint64_t seed = 1;
    int trials = 25;
    int max_dim = 6;

    void validate() const;
    GenConfig gen() const { return GenConfig{p, n, max_dim}; }
};

struct CheckResult {
    std::string name;
    json params = json::object();
    int trials = 0;
    int skipped = 0;
    std::vector<json> failures; // each payload replays from (seed, index)
    bool passed() const { return failures.empty(); }
};

struct Report {
    std::string suite;
    SessionConfig cfg;
    std::vector<CheckResult> checks;
    double wall_ms = 0;

    bool passed() const {
        for (auto& c : checks)
            if (!c.passed()) return false;
        return true;
    }
    // timing excluded when with_timing is false so payloads are bit-stable
    json to_json(bool with_timing = true) const;
};

std::vector<std::string> suite_names();
Report run_suite(const std::string& name, const SessionConfig& cfg);

} // namespace frobmor
