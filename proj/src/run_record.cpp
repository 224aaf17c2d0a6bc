#include "normgeo/run_record.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <iostream>
#include <sstream>

namespace normgeo {

namespace {

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::string RunRecord::cache_key() const {
  std::ostringstream os;
  os << command << '\n' << space << '\n' << params.dump() << '\n' << seed << '\n' << tool_version;
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(os.str())));
  return buf;
}

nlohmann::json RunRecord::to_json() const {
  return nlohmann::json{
      {"schema_version", schema_version},
      {"tool_version", tool_version},
      {"command", command},
      {"space", space},
      {"params", params},
      {"seed", seed},
      {"timestamp", timestamp},
      {"cached", cached},
      {"result", result},
  };
}

RunRecord RunRecord::from_json(const nlohmann::json& j) {
  RunRecord r;
  r.schema_version = j.at("schema_version").get<int>();
  r.tool_version = j.at("tool_version").get<std::string>();
  r.command = j.at("command").get<std::string>();
  r.space = j.at("space").get<std::string>();
  r.params = j.at("params");
  r.seed = j.at("seed").get<std::uint64_t>();
  r.timestamp = j.at("timestamp").get<std::string>();
  r.cached = j.at("cached").get<bool>();
  r.result = j.at("result");
  return r;
}

std::string iso8601_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<RunRecord> cache_lookup(const std::string& dir, const std::string& key) {
  const std::filesystem::path path = std::filesystem::path(dir) / (key + ".json");
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    nlohmann::json j;
    in >> j;
    RunRecord r = RunRecord::from_json(j);
    if (r.cache_key() != key) throw std::runtime_error("key mismatch");
    return r;
  } catch (const std::exception& e) {
    std::cerr << "warning: ignoring corrupt cache entry " << path.string() << " (" << e.what()
              << ")\n";
    return std::nullopt;
  }
}

void cache_store(const std::string& dir, const RunRecord& record) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path final_path = fs::path(dir) / (record.cache_key() + ".json");
  const fs::path tmp_path =
      final_path.string() + ".tmp." + std::to_string(static_cast<long>(::getpid()));
  {
    std::ofstream out(tmp_path);
    out << record.to_json().dump(2) << '\n';
  }
  fs::rename(tmp_path, final_path);
}

}  // namespace normgeo
