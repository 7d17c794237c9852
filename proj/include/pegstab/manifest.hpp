#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pegstab {

inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a over the canonical text; stable across platforms.
std::uint64_t fnv1a64(std::string_view text);
std::string digest_hex(std::string_view text);

struct RunManifest {
    std::string tool_version = kToolVersion;
    std::string command;
    std::string config_digest;
    std::string calibration_digest;
    std::uint64_t seed = 0;
    std::string started_at;   // ISO-8601 UTC; excluded from any digest
    std::string finished_at;
    std::vector<std::string> outputs;
    std::vector<std::pair<std::string, std::string>> notes;

    std::string to_json() const;
};

std::string utc_timestamp_now();

}  // namespace pegstab
