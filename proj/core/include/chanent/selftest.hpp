/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef CHANENT_SELFTEST_HPP
#define CHANENT_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace chanent::selftest {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the acceptance criteria. The fast tier trims sample counts and grid
/// sizes for quick smoke runs; the full tier matches the shipped thresholds.
std::vector<CriterionResult> run_all(bool fast = false, std::uint64_t seed = 42);

/// Runs a single criterion (1-based id).
CriterionResult run_one(int id, bool fast = false, std::uint64_t seed = 42);

int criterion_count();

}  // namespace chanent::selftest

#endif
