#pragma once

// Verification suites behind `gmq verify`. Each case compares an expected
// value with a computed one and carries a short descriptive anchor.

#include "gmq/io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gmq {

struct CaseRecord {
    std::string suite;
    std::string check;
    std::string anchor;
    std::string inputs;  // digest of the inputs
    std::string expected;
    std::string got;
    bool pass = false;
};

struct VerificationReport {
    std::string suite;
    std::vector<CaseRecord> cases;

    int run() const { return static_cast<int>(cases.size()); }
    int passed() const;
    int failed() const { return run() - passed(); }
    /// One flat JSON object per line, then a summary object.
    std::string to_json_lines() const;
    std::string to_table() const;
};

struct VerifyConfig {
    FieldSpec field{101};
    std::uint64_t seed = 1;
    int samples = 50;
};

/// seed ^ index through splitmix64, so case randomness ignores scheduling.
std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index);

const std::vector<std::string>& suite_names();  // algebra epw fibration ogr tables
/// Runs one suite or "all". Throws std::invalid_argument for an unknown name.
VerificationReport run_suite(const std::string& suite, const VerifyConfig& cfg);

}  // namespace gmq
