#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>

#include "gbk/io.hpp"

namespace gbk {

class SessionNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ServiceOptions {
  // Exact solves enumerate at most this many switches per request.
  int solve_cap = 24;
  int jobs = 1;
  int heuristic_seeds = 256;
  // Append-only JSON-lines log of session events; empty disables it.
  std::string persist_path;
};

// In-memory game sessions. Every public method returns the JSON body of the
// matching HTTP endpoint and throws ValidationError (400), SessionNotFound
// (404) or BudgetError (409).
class SessionStore {
 public:
  explicit SessionStore(ServiceOptions options = {});
  ~SessionStore();

  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  json create(const json& request);
  json state(const std::string& id) const;
  json flip(const std::string& id, const std::string& switch_id);
  json undo(const std::string& id);
  json hint(const std::string& id) const;
  json solve(const std::string& id, bool require_exact);
  void remove(const std::string& id);

  // Re-applies a persistence log; returns the number of events replayed.
  std::size_t replay(const std::string& path);

  std::size_t size() const;

 private:
  struct Session;

  std::shared_ptr<Session> find(const std::string& id) const;
  json create_with_id(const std::string& id, const json& request);
  void log(const json& event);

  ServiceOptions options_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 1;
  bool replaying_ = false;
  std::mutex log_mutex_;
};

// HTTP front end for a SessionStore.
class HttpService {
 public:
  explicit HttpService(SessionStore& store, std::string allowed_origin = "*");
  ~HttpService();

  // Binds to the port (0 picks a free one) and returns the bound port.
  int bind(const std::string& host, int port);
  // Blocks serving requests until stop() is called.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace gbk
