#pragma once
// The full verification suite: one named check per guaranteed property,
// each exact (tolerance zero) and desk-scale.

#include <iosfwd>
#include <string>
#include <vector>

namespace hopfstab {

struct SelfTestItem {
    std::string name;
    bool ok = false;
    std::vector<std::string> details;
};

struct SelfTestResult {
    std::vector<SelfTestItem> items;
    bool all_ok = true;
};

// Runs every check; when log is non-null, prints one PASS/FAIL line per item
// (plus indented details).
SelfTestResult run_selftest(std::ostream* log);

}  // namespace hopfstab
