#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace axd {

/// Read-only HTTP host for an exported bundle.
///
///   GET /bundle  -> the bundle document (application/json)
///   GET /health  -> {"status":"ok","version":...}
///   GET /...     -> static viewer assets, when an asset directory is given
class BundleServer {
 public:
  BundleServer(std::string bundle_json,
               std::optional<std::filesystem::path> assets = std::nullopt);
  ~BundleServer();
  BundleServer(const BundleServer&) = delete;
  BundleServer& operator=(const BundleServer&) = delete;

  /// Binds the socket; port 0 picks a free port. Throws ConfigError if the
  /// address cannot be bound.
  int bind(const std::string& host, int port);
  /// Blocks until stop() is called.
  void listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Reads the bundle file and serves it until the process is interrupted.
void serve_bundle(const std::filesystem::path& bundle_path, int port,
                  const std::string& host = "0.0.0.0",
                  std::optional<std::filesystem::path> assets = std::nullopt);

}  // namespace axd
