// Runs the full verification suite and prints one PASS/FAIL line per check.
#include "hopfstab/selftest.hpp"

#include <iostream>

int main() {
    return hopfstab::run_selftest(&std::cout).all_ok ? 0 : 1;
}
