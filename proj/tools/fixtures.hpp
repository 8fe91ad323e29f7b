#pragma once

#include <map>
#include <string>
#include <vector>

namespace varbound::cli {

// One reproduction target: a computation's inputs, the published value it
// is checked against, a citation naming the source table, and flags that
// steer the comparison:
//   upper     one-sided check, computed <= published + tol
//   exact     the published value is exact; tight two-sided check
//   typo      known misprint in the source; reported but never fails
//   tol=<x>   row tolerance
struct FixtureRow {
    std::string table_id;
    std::map<std::string, std::string> inputs;
    double published = 0.0;
    std::string cite;
    std::vector<std::string> flags;

    bool has_flag(const std::string& name) const;
    double tolerance(double fallback) const;
    // input lookup with defaults; throws if a required key is missing
    std::string input(const std::string& key) const;
    std::string input_or(const std::string& key, const std::string& fallback) const;
};

// All rows embedded at build time, parsed from the line-oriented fixture
// text: `table_id | key=value ... | published_value | cite | flags`.
const std::vector<FixtureRow>& fixture_rows();

// Distinct table ids, in first-appearance order.
std::vector<std::string> fixture_table_ids();

}  // namespace varbound::cli
