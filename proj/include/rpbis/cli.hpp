/* cli.hpp -- command implementations shared by the rpbis tool and tests */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "rpbis/logic.hpp"
#include "rpbis/model.hpp"

namespace rpbis::cli {

struct Report {
    std::string verdict;                  // "bisimilar" | "distinguished"
    std::optional<std::string> formula;   // canonical text, iff distinguished
    std::optional<std::string> satisfied_by;
    std::string logic;                    // empty for plain bisim queries
    unsigned depth = 0;                   // modal depth of the formula
    unsigned minimal_level = 0;           // least n with differing n-prunings
    std::map<std::string, double> timings_ms;

    bool operator==(const Report& o) const;
};

std::string report_to_json(const Report& r);
Report report_from_json(const std::string& text);
std::string report_to_text(const Report& r);

Rplts load_system(const std::string& path);

Report cmd_bisim(const std::string& path, const std::string& s1, const std::string& s2);
Report cmd_distinguish(const std::string& path, const std::string& s1,
                       const std::string& s2, LogicId logic, bool decimal = false);
// Prints nothing; returns the verdict (true = state satisfies the formula).
bool cmd_check(const std::string& path, const std::string& state,
               const std::string& formula_text);
std::string cmd_canon(const std::string& path, const std::string& state,
                      unsigned depth, bool dot);

struct SelftestParams {
    unsigned cases = 200;
    std::uint64_t seed = 0xC0FFEE;
    unsigned threads = 0; // 0 = hardware concurrency
};

// Randomized property suite over the whole pipeline; deterministic in the
// seed, fanned out over worker threads, merged by case index. Returns the
// number of failed cases and logs one line per failure (with the seed).
unsigned run_selftest(const SelftestParams& params, std::ostream& log);

} // namespace rpbis::cli
