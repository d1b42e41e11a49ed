#pragma once
// Role/filler records for two countries and the queries answered by
// releasing roles, fillers and whole records from one another.

#include <cstdint>
#include <string>
#include <vector>

#include "segvsa/cleanup.hpp"
#include "segvsa/core.hpp"

namespace segvsa::demo {

struct ProbeResult {
    std::string name;
    std::string expected;
    std::vector<Match> top;  // best three

    bool passed() const { return !top.empty() && top.front().label == expected; }
};

struct MexicoReport {
    std::vector<ProbeResult> probes;

    bool all_passed() const;
};

/// Builds the nine atomic codes from `seed`, the two country records, the
/// seven retrieval queries and the three knowledge-transfer queries.
MexicoReport run_mexico(const SpaceConfig& space, std::uint64_t seed);

}  // namespace segvsa::demo
