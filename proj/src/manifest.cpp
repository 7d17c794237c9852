#include "pegstab/manifest.hpp"

#include <cstdio>
#include <ctime>
#include <json.hpp>

namespace pegstab {

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001B3ULL;
    }
    return hash;
}

std::string digest_hex(std::string_view text) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(text)));
    return buf;
}

std::string utc_timestamp_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["tool_version"] = tool_version;
    j["command"] = command;
    j["config_digest"] = config_digest;
    j["calibration_digest"] = calibration_digest;
    j["seed"] = seed;
    j["started_at"] = started_at;
    j["finished_at"] = finished_at;
    j["outputs"] = outputs;
    nlohmann::json notes_obj = nlohmann::json::object();
    for (const auto& [key, value] : notes) notes_obj[key] = value;
    j["notes"] = notes_obj;
    return j.dump(2) + "\n";
}

}  // namespace pegstab
