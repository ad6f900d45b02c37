#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

// Check reports: a command echo plus per-check records, rendered as text or
// versioned JSON (schema in docs/report-schema.md).  Identical runs with the
// same seed serialize byte-identically; wall times are recorded only when
// asked for, so they never break that.

namespace mackeylab::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct Record {
    std::string name;
    std::string status;  // pass | fail | skip
    std::string claim;   // the statement this check decides, in plain words
    Json measured = Json::object();
    double wall_ms = 0.0;  // meaningful only when the report keeps timings
};

struct Report {
    std::string command;
    std::string group;   // empty when the command has no single group
    uint32_t prime = 0;  // 0 when not applicable
    uint32_t depth = 8;
    uint64_t seed = 0xB0C;
    uint32_t trials = 100;
    bool timings = false;
    std::vector<Record> records;

    void add(const std::string& name, bool ok, const std::string& claim,
             Json measured = Json::object());
    void add_skip(const std::string& name, const std::string& claim,
                  Json measured = Json::object());
    uint32_t count(const std::string& status) const;
    bool all_pass() const;  // no record failed
    int exit_code() const { return all_pass() ? 0 : 1; }
};

std::string to_text(const Report& r);
std::string to_json_text(const Report& r);
Report report_from_json(const std::string& s);  // inverse of to_json_text

}  // namespace mackeylab::report
