#include "mackeylab/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace mackeylab::report {

void Report::add(const std::string& name, bool ok, const std::string& claim,
                 Json measured) {
    records.push_back({name, ok ? "pass" : "fail", claim, std::move(measured), 0.0});
}

void Report::add_skip(const std::string& name, const std::string& claim, Json measured) {
    records.push_back({name, "skip", claim, std::move(measured), 0.0});
}

uint32_t Report::count(const std::string& status) const {
    uint32_t n = 0;
    for (const auto& r : records) n += r.status == status;
    return n;
}

bool Report::all_pass() const { return count("fail") == 0; }

namespace {

std::string hex_seed(uint64_t seed) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(seed));
    return buf;
}

std::string ms_str(double ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", ms);
    return buf;
}

}  // namespace

std::string to_text(const Report& r) {
    std::ostringstream os;
    os << "mackeylab report v" << kSchemaVersion << "\n";
    os << "command: " << r.command << "\n";
    if (!r.group.empty()) os << "group: " << r.group << "\n";
    if (r.prime) os << "prime: " << r.prime << "\n";
    os << "depth " << r.depth << ", seed " << hex_seed(r.seed) << ", trials "
       << r.trials << "\n";
    for (const auto& rec : r.records) {
        os << "[" << rec.status << "] " << rec.name;
        if (r.timings) os << " (" << ms_str(rec.wall_ms) << " ms)";
        os << "\n    " << rec.claim << "\n";
        if (!rec.measured.empty()) os << "    measured: " << rec.measured.dump() << "\n";
    }
    os << r.count("pass") << " pass, " << r.count("fail") << " fail, "
       << r.count("skip") << " skip\n";
    return os.str();
}

std::string to_json_text(const Report& r) {
    Json j;
    j["version"] = kSchemaVersion;
    j["command"] = r.command;
    j["group"] = r.group;
    j["prime"] = r.prime;
    j["depth"] = r.depth;
    j["seed"] = hex_seed(r.seed);
    j["trials"] = r.trials;
    j["records"] = Json::array();
    for (const auto& rec : r.records) {
        Json e;
        e["name"] = rec.name;
        e["status"] = rec.status;
        e["claim"] = rec.claim;
        e["measured"] = rec.measured;
        if (r.timings) e["wall_ms"] = rec.wall_ms;
        j["records"].push_back(std::move(e));
    }
    j["summary"] = {{"pass", r.count("pass")},
                    {"fail", r.count("fail")},
                    {"skip", r.count("skip")}};
    return j.dump(2) + "\n";
}

Report report_from_json(const std::string& s) {
    Json j = Json::parse(s);
    if (!j.contains("version") || j["version"].get<int>() != kSchemaVersion)
        throw std::invalid_argument("report: unknown schema version");
    Report r;
    r.command = j["command"].get<std::string>();
    r.group = j["group"].get<std::string>();
    r.prime = j["prime"].get<uint32_t>();
    r.depth = j["depth"].get<uint32_t>();
    r.seed = std::stoull(j["seed"].get<std::string>(), nullptr, 16);
    r.trials = j["trials"].get<uint32_t>();
    for (const auto& e : j["records"]) {
        Record rec;
        rec.name = e["name"].get<std::string>();
        rec.status = e["status"].get<std::string>();
        rec.claim = e["claim"].get<std::string>();
        rec.measured = e["measured"];
        if (e.contains("wall_ms")) {
            r.timings = true;
            rec.wall_ms = e["wall_ms"].get<double>();
        }
        r.records.push_back(std::move(rec));
    }
    return r;
}

}  // namespace mackeylab::report
