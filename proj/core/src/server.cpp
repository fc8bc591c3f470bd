#include "axdecomp/server.hpp"

#include "axdecomp/error.hpp"
#include "axdecomp/version.hpp"

#include <httplib.h>

#include <fstream>
#include <sstream>

namespace axd {

struct BundleServer::Impl {
  httplib::Server server;
  std::string bundle;
};

BundleServer::BundleServer(std::string bundle_json, std::optional<std::filesystem::path> assets)
    : impl_(std::make_unique<Impl>()) {
  impl_->bundle = std::move(bundle_json);
  auto& svr = impl_->server;
  // SO_REUSEADDR only, so a busy port fails to bind.
  svr.set_socket_options([](auto sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  svr.Get("/bundle", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(impl_->bundle, "application/json");
  });
  svr.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(std::string(R"({"status":"ok","version":")") + std::string(kVersion) + "\"}",
                    "application/json");
  });
  if (assets) {
    if (!svr.set_mount_point("/", assets->string())) {
      throw ConfigError("asset directory '" + assets->string() + "' does not exist");
    }
  } else {
    svr.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(
          "<!doctype html><title>axdecomp</title><p>Analysis bundle available at "
          "<a href=\"/bundle\">/bundle</a>.</p>",
          "text/html");
    });
  }
}

BundleServer::~BundleServer() { stop(); }

int BundleServer::bind(const std::string& host, int port) {
  auto& svr = impl_->server;
  if (port == 0) {
    const int bound = svr.bind_to_any_port(host);
    if (bound < 0) throw ConfigError("cannot bind " + host + " on any port");
    return bound;
  }
  if (!svr.bind_to_port(host, port)) {
    throw ConfigError("cannot bind " + host + ":" + std::to_string(port) + " (port in use?)");
  }
  return port;
}

void BundleServer::listen() { impl_->server.listen_after_bind(); }

void BundleServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void BundleServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

void serve_bundle(const std::filesystem::path& bundle_path, int port, const std::string& host,
                  std::optional<std::filesystem::path> assets) {
  std::ifstream in(bundle_path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + bundle_path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  BundleServer server(buf.str(), std::move(assets));
  server.bind(host, port);
  server.listen();
}

}  // namespace axd
