#include "tatedr/report.hpp"

#include <sstream>

namespace tatedr {

namespace {

void renderValue(std::ostream& out, const nlohmann::ordered_json& v, int indent);

void renderObject(std::ostream& out, const nlohmann::ordered_json& obj, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (const auto& [key, value] : obj.items()) {
        out << pad << key << ":";
        if (value.is_object() && !value.empty()) {
            out << "\n";
            renderObject(out, value, indent + 2);
        } else if (value.is_array() && !value.empty() && value.front().is_object()) {
            out << "\n";
            for (const auto& item : value) renderObject(out, item, indent + 2), out << "\n";
        } else {
            out << " ";
            renderValue(out, value, indent);
            out << "\n";
        }
    }
}

void renderValue(std::ostream& out, const nlohmann::ordered_json& v, int indent) {
    if (v.is_string()) {
        out << v.get<std::string>();
    } else if (v.is_array()) {
        out << "[";
        bool first = true;
        for (const auto& item : v) {
            if (!first) out << ", ";
            first = false;
            renderValue(out, item, indent);
        }
        out << "]";
    } else {
        out << v.dump();
    }
}

}  // namespace

std::string renderReport(const RunReport& report, OutputMode mode) {
    if (mode == OutputMode::Human) {
        std::ostringstream out;
        out << "command: " << report.command << "\n";
        out << "t-precision: " << report.tPrecision << "\n";
        if (!report.payload.empty()) renderObject(out, report.payload, 0);
        for (const std::string& w : report.warnings) out << "warning: " << w << "\n";
        return out.str();
    }
    nlohmann::ordered_json j;
    j["command"] = report.command;
    j["tPrecision"] = report.tPrecision;
    j["xDegStart"] = report.xDegStart;
    j["xDegMax"] = report.xDegMax;
    j["payload"] = report.payload;
    j["warnings"] = report.warnings;
    j["exitStatus"] = report.exitStatus;
    return j.dump(mode == OutputMode::PrettyJson ? 2 : -1) + "\n";
}

}  // namespace tatedr
