/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 *
 * Acceptance gate: one line per criterion, nonzero exit if any fails.
 */

#include <cstdio>
#include <cstring>

#include "chanent/selftest.hpp"

int main(int argc, char** argv) {
    bool fast = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--fast") == 0) fast = true;
    }
    auto results = chanent::selftest::run_all(fast);
    bool all_pass = true;
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        std::printf("criterion %2d (%s): %s%s%s (%.1f s)\n", r.id, r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.detail.empty() ? "" : " - ",
                    r.detail.c_str(), r.seconds);
        std::fflush(stdout);
    }
    std::printf("acceptance: %s\n", all_pass ? "PASS" : "FAIL");
    return all_pass ? 0 : 1;
}
