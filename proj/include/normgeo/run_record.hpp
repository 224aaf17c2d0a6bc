#ifndef NORMGEO_RUN_RECORD_HPP
#define NORMGEO_RUN_RECORD_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace normgeo {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

// Serialized record of one CLI computation. Round-trips losslessly through
// JSON; the cache key hashes (command, space, params, seed, tool_version),
// deliberately excluding the timestamp and the result payload.
struct RunRecord {
  int schema_version = kSchemaVersion;
  std::string tool_version = kToolVersion;
  std::string command;  // "compute" or "verify"
  std::string space;
  nlohmann::json params;
  std::uint64_t seed = 0;
  std::string timestamp;  // ISO 8601 UTC
  bool cached = false;
  nlohmann::json result;

  std::string cache_key() const;
  nlohmann::json to_json() const;
  static RunRecord from_json(const nlohmann::json& j);
};

std::string iso8601_utc_now();

// Both return/accept a cache directory path; entries live at <dir>/<key>.json.
// A corrupt entry logs a warning to stderr and reads as a miss. Stores are
// write-temp-then-rename so concurrent processes sharing a directory are safe.
std::optional<RunRecord> cache_lookup(const std::string& dir, const std::string& key);
void cache_store(const std::string& dir, const RunRecord& record);

}  // namespace normgeo

#endif
