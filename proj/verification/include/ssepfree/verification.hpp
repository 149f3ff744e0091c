#ifndef SSEPFREE_VERIFICATION_HPP
#define SSEPFREE_VERIFICATION_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ssepfree {

struct Measurement {
    std::string label;
    double value = 0.0;
    /// Bound the value is compared against; its meaning depends on `relation`.
    double bound = 0.0;
    /// "<", "<=", ">=", "==" (exact) or "info" (reported only).
    std::string relation;
    bool passed = true;
};

struct SuiteResult {
    int criterion = 0;
    std::string name;
    std::string title;
    bool passed = false;
    double seconds = 0.0;
    double time_limit = 0.0;
    std::vector<Measurement> measurements;
    /// Set when the suite threw instead of finishing.
    std::string error;
};

/// Suite names in criterion order.
const std::vector<std::string>& suite_names();
/// Throws ValidationError for an unknown name.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);
/// Runs the named suites (all of them for {"all"}); results keep the given order.
std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, std::uint64_t seed, bool parallel = true);

/// One line per measurement plus a summary line.
std::string describe(const SuiteResult& r);

}  // namespace ssepfree

#endif
