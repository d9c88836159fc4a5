#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace specest::cli {

struct RunManifest {
  std::string command;
  std::vector<std::string> args;  // resolved flags, replayable as-is
  std::optional<std::uint64_t> seed;
  std::string timestamp;          // UTC, ISO 8601
  std::vector<std::string> outputs;
  std::string notes;
};

std::string utc_timestamp();
std::string manifest_path(const std::string& output);

void write_manifest(const RunManifest& m, const std::string& path);
RunManifest read_manifest(const std::string& path);

}  // namespace specest::cli
