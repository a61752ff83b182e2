// Acceptance suite: each invocation runs one named reproduction criterion at
// its pinned tolerances and prints one pass/fail line (plus the individual
// checks). Exit code 0 iff every executed criterion passed.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "paramctl/repro.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> ids;
    if (argc <= 1) {
        ids = paramctl::repro::criterion_ids();
    } else {
        for (int i = 1; i < argc; ++i) ids.emplace_back(argv[i]);
    }
    bool all_pass = true;
    for (const auto& id : ids) {
        try {
            const auto result = paramctl::repro::run_criterion(id);
            std::cout << result.summary_line() << "\n";
            for (const auto& line : result.details) std::cout << "    " << line << "\n";
            all_pass &= result.pass;
        } catch (const std::exception& e) {
            std::cout << "[FAIL] " << id << ": " << e.what() << "\n";
            all_pass = false;
        }
        std::cout.flush();
    }
    return all_pass ? 0 : 1;
}
