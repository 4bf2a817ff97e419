// acceptance: runs criteria 1-11 and prints one line per criterion.
#include <cstdlib>
#include <iostream>
#include <string>

#include "khess/acceptance.hpp"

int main(int argc, char** argv)
{
    khess::AcceptanceOptions opt;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--corrupt-B")
            opt.corrupt_B = true;
        else
            opt.only.push_back(std::atoi(a.c_str()));
    }
    const bool ok = khess::print_acceptance(std::cout, khess::run_acceptance(opt));
    std::cout << (ok ? "all criteria passed" : "some criteria failed") << '\n';
    return ok ? 0 : 1;
}
