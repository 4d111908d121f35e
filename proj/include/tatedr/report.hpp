#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tatedr/laurent.hpp"

namespace tatedr {

enum class OutputMode { Human, Json, PrettyJson };

/// Result envelope of one CLI invocation. The JSON rendering uses
/// insertion-ordered keys, so byte-identical inputs and flags produce
/// byte-identical reports.
struct RunReport {
    std::string command;
    int tPrecision = kDefaultTPrecision;
    int xDegStart = 8;
    int xDegMax = 64;
    nlohmann::ordered_json payload;
    std::vector<std::string> warnings;
    int exitStatus = 0;
};

std::string renderReport(const RunReport& report, OutputMode mode);

}  // namespace tatedr
