#pragma once

/// Runtime invariant suites behind the CLI `selftest` subcommand: seeded,
/// deterministic, and independent of the unit-test binaries.

#include <cstdint>
#include <string>
#include <vector>

namespace markoff {

struct SelfTestReport {
    long checks = 0;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

SelfTestReport run_selftest(std::uint64_t seed);

} // namespace markoff
