#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "bidding/play.hpp"

namespace bidding {

struct HttpResponse {
  int status = 200;
  std::string body;
};

// HTTP status for a library error code.
int http_status(ErrorCode code);
std::string error_body(ErrorCode code, std::string_view message);

struct ServiceOptions {
  std::optional<std::string> snapshot_path;
  std::size_t state_cap = 5'000'000;
  int max_k_range = 4096;
};

// Session ids are "s1", "s2", ... in creation order. Each session has its own
// lock; the map lock is held only for lookup and insertion.
class SessionStore {
 public:
  struct Entry {
    std::mutex mu;
    std::optional<PlaySession> session;
  };

  std::string add(PlaySession s);
  std::shared_ptr<Entry> find(std::string_view id) const;
  std::size_t size() const;

  // {"schema":"bidstore-1", ...}; sessions in id order.
  std::string snapshot() const;

 private:
  friend class Service;
  mutable std::mutex mu_;
  std::uint64_t next_ = 1;
  std::map<std::uint64_t, std::shared_ptr<Entry>> sessions_;
};

// JSON request router behind the HTTP server. Solve endpoints never touch
// session state.
class Service {
 public:
  explicit Service(ServiceOptions options = {});

  HttpResponse handle(std::string_view method, std::string_view path, std::string_view body);

  SessionStore& store() { return store_; }
  std::shared_ptr<AiContext> context(const std::string& spec);
  void load_snapshot(std::string_view text);

 private:
  HttpResponse route(std::string_view method, std::string_view path, std::string_view body);
  HttpResponse create_session(std::string_view body);
  HttpResponse session_action(const std::string& id, std::string_view action,
                              std::string_view body);
  HttpResponse get_session(const std::string& id);
  HttpResponse solve_threshold(std::string_view body);
  HttpResponse solve_richman(std::string_view body);
  HttpResponse solve_oracle(std::string_view body);
  HttpResponse snapshot(std::string_view body);

  ServiceOptions options_;
  SessionStore store_;
  std::mutex contexts_mu_;
  std::map<std::string, std::shared_ptr<AiContext>> contexts_;
};

// Blocks serving `service` on host:port until the process is stopped.
void serve(Service& service, const std::string& host, int port);

}  // namespace bidding
