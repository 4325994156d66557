#include "manifest.hpp"

#include <chrono>

#include "unicrit/io.hpp"
#include "unicrit/version.hpp"

namespace unicrit::cli {

namespace {
double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}
} // namespace

RunManifest::RunManifest(int argc, char** argv, std::string subcommand)
    : subcommand_(std::move(subcommand)), start_time_(now_seconds()) {
  for (int i = 0; i < argc; ++i) {
    if (i) command_line_ += ' ';
    command_line_ += argv[i];
  }
}

std::string RunManifest::emit_output(const std::string& path,
                                     std::string_view content) {
  write_file(path, content);
  std::string digest = sha256_hex(content);
  outputs_.emplace_back(path, digest);
  return digest;
}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = "unicrit";
  j["version"] = kVersion;
  j["subcommand"] = subcommand_;
  j["command_line"] = command_line_;
  j["config"] = config_;
  if (seed_) j["seed"] = *seed_;
  j["wall_time_s"] = now_seconds() - start_time_;
  auto outs = nlohmann::ordered_json::array();
  for (const auto& [path, digest] : outputs_) {
    outs.push_back({{"path", path}, {"sha256", digest}});
  }
  j["outputs"] = outs;
  j["notes"] = notes_;
  return j;
}

void RunManifest::write(const std::string& path) const {
  write_file(path, to_json().dump(2) + "\n");
}

} // namespace unicrit::cli
