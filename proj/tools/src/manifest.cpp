#include "manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include "json.hpp"
#include "specest/errors.hpp"

namespace specest::cli {

using nlohmann::json;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_path(const std::string& output) { return output + ".manifest.json"; }

void write_manifest(const RunManifest& m, const std::string& path) {
  json j;
  j["command"] = m.command;
  j["args"] = m.args;
  j["seed"] = m.seed ? json(*m.seed) : json(nullptr);
  j["timestamp"] = m.timestamp;
  j["outputs"] = m.outputs;
  if (!m.notes.empty()) j["notes"] = m.notes;
  std::ofstream f(path);
  if (!f) throw InvalidInputError("cannot write manifest '" + path + "'");
  f << j.dump(2) << '\n';
}

RunManifest read_manifest(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidInputError("cannot open manifest '" + path + "'");
  try {
    const json j = json::parse(f);
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.args = j.at("args").get<std::vector<std::string>>();
    if (j.contains("seed") && !j["seed"].is_null()) m.seed = j["seed"].get<std::uint64_t>();
    m.timestamp = j.value("timestamp", "");
    m.outputs = j.value("outputs", std::vector<std::string>{});
    m.notes = j.value("notes", "");
    return m;
  } catch (const json::exception& e) {
    throw InvalidInputError("malformed manifest '" + path + "': " + e.what());
  }
}

}  // namespace specest::cli
