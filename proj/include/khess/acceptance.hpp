// acceptance.hpp
//
// The numbered acceptance suite: one line per criterion with its runtime
// budget. Shared by the standalone binary and `khess selftest`.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace khess {

struct AcceptanceLine {
    int id = 0;
    std::string name;
    bool check = false;     ///< the numerical criterion
    double seconds = 0.0;
    double budget = 0.0;    ///< runtime limit in seconds
    std::string detail;

    bool passed() const { return check && seconds < budget; }
};

struct AcceptanceOptions {
    std::uint64_t seed = 20240917;
    bool corrupt_B = false;  ///< debug hook: halve the super-barrier constant
    std::vector<int> only;   ///< criteria to run; empty means all
};

std::vector<AcceptanceLine> run_acceptance(const AcceptanceOptions& opt = {});

/// One "PASS"/"FAIL" line per criterion; returns true iff all passed.
bool print_acceptance(std::ostream& os, const std::vector<AcceptanceLine>& lines);

} // namespace khess
