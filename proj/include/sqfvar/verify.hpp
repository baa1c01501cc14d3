// verify.hpp
// Named verification suites. Each check reports a value against a bound;
// the CLI prints one JSON line per check and exits nonzero on any failure.

#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace sqfvar {

struct CheckResult {
    std::string check;
    nlohmann::json params = nlohmann::json::object();
    nlohmann::json value;
    nlohmann::json bound;
    bool pass = false;
    bool diagnostic = false;  // informational, never fails a suite
};

struct VerifyOptions {
    std::uint64_t seed = 20231019;
    int identity_instances = 1000;
};

// "psi", "dirichlet", "processb", "zeta4"
const std::vector<std::string>& suite_names();

// Throws ConfigError for an unknown suite.
std::vector<CheckResult> run_suite(const std::string& name, const VerifyOptions& opts = {});

std::string to_json_line(const CheckResult& r);

}  // namespace sqfvar
