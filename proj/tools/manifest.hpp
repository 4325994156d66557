#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace unicrit::cli {

/// Run record written next to every file-producing invocation: the command
/// line, the effective configuration, seeds, wall time and the digests of all
/// outputs. Replaying the recorded command line reproduces the output bytes
/// (the digests make drift visible).
class RunManifest {
public:
  RunManifest(int argc, char** argv, std::string subcommand);

  void set_config(nlohmann::ordered_json config) { config_ = std::move(config); }
  void set_seed(std::uint64_t seed) { seed_ = seed; }
  void add_note(const std::string& note) { notes_.push_back(note); }

  /// Writes content to path, records its digest, returns the digest.
  std::string emit_output(const std::string& path, std::string_view content);

  /// Serializes the manifest (stable key order; wall time measured from
  /// construction).
  nlohmann::ordered_json to_json() const;

  /// Writes the manifest JSON to path.
  void write(const std::string& path) const;

private:
  std::string command_line_;
  std::string subcommand_;
  nlohmann::ordered_json config_;
  std::optional<std::uint64_t> seed_;
  std::vector<std::pair<std::string, std::string>> outputs_; // path, sha256
  std::vector<std::string> notes_;
  double start_time_ = 0.0;
};

} // namespace unicrit::cli
