#include "gbk/service.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "gbk/rng.hpp"
#include "httplib.h"

namespace gbk {

struct SessionStore::Session {
  std::string id;
  std::unique_ptr<Instance> instance;  // stable address for the playfield
  Configuration config;
  std::optional<std::uint64_t> seed;
  Playfield field;
  std::vector<std::size_t> history;
  std::optional<json> cached_solve;
  mutable std::mutex mutex;

  Session(std::string id_, std::unique_ptr<Instance> inst, Configuration cfg, std::optional<std::uint64_t> seed_)
      : id(std::move(id_)),
        instance(std::move(inst)),
        config(std::move(cfg)),
        seed(seed_),
        field(instance->family, config) {}

  json snapshot() const {
    const Board& board = instance->board;
    const SwitchFamily& family = instance->family;
    json cells = json::array();
    for (std::size_t c = 0; c < board.area(); ++c) {
      json entry = cell_to_json(board.cell(c));
      entry.push_back(field.effective(c));
      cells.push_back(std::move(entry));
    }
    json switches = json::array();
    for (const Switch& sw : family.switches()) switches.push_back(sw.id);
    json moves = json::array();
    for (std::size_t s : history) moves.push_back(family[s].id);
    json out = {{"session_id", id},
                {"board", instance_to_json(board, family)},
                {"cells", std::move(cells)},
                {"config", configuration_to_json(config, board)},
                {"assignment", assignment_to_json(field.assignment(), family)},
                {"switches", std::move(switches)},
                {"score", field.score()},
                {"area", board.area()},
                {"history", std::move(moves)}};
    if (instance->board_spec && instance->switch_spec) {
      out["board_spec"] = spec_to_json(*instance->board_spec, *instance->switch_spec);
    }
    if (seed) out["seed"] = *seed;
    return out;
  }
};

SessionStore::SessionStore(ServiceOptions options) : options_(std::move(options)) {}
SessionStore::~SessionStore() = default;

std::size_t SessionStore::size() const {
  std::shared_lock lock(mutex_);
  return sessions_.size();
}

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw SessionNotFound("unknown session '" + id + "'");
  return it->second;
}

void SessionStore::log(const json& event) {
  if (options_.persist_path.empty() || replaying_) return;
  std::lock_guard lock(log_mutex_);
  std::ofstream out(options_.persist_path, std::ios::app);
  out << event.dump() << '\n';
}

json SessionStore::create(const json& request) {
  std::string id;
  {
    std::unique_lock lock(mutex_);
    id = "s" + std::to_string(next_id_++);
  }
  return create_with_id(id, request);
}

json SessionStore::create_with_id(const std::string& id, const json& request) {
  if (!request.is_object()) throw ValidationError("session request must be a JSON object");
  std::unique_ptr<Instance> instance;
  if (request.contains("board")) {
    instance = std::make_unique<Instance>(instance_from_json(request.at("board")));
  } else if (request.contains("board_spec")) {
    const BoardSpec board = board_spec_from_json(request.at("board_spec"));
    const SwitchSpec switches =
        request.contains("switch_spec") ? switch_spec_from_json(request.at("switch_spec")) : default_switches(board.kind);
    instance = std::make_unique<Instance>(make_instance(board, switches));
  } else {
    throw ValidationError("session request needs \"board_spec\" or \"board\"");
  }

  const json source = request.value("config", json{{"random", 0}});
  std::optional<std::uint64_t> seed;
  Configuration config;
  if (source.is_object() && source.contains("random")) {
    seed = source.at("random").get<std::uint64_t>();
    config = random_configuration(instance->board.area(), CounterRng(*seed));
  } else if (source.is_object() && source.contains("grid")) {
    config = configuration_from_grid(source.at("grid").get<std::string>(), instance->board);
  } else {
    config = configuration_from_json(source, instance->board);
  }

  auto session = std::make_shared<Session>(id, std::move(instance), std::move(config), seed);
  json body = {{"session_id", id}, {"state", session->snapshot()}};
  {
    std::unique_lock lock(mutex_);
    if (sessions_.contains(id)) throw ValidationError("session '" + id + "' already exists");
    sessions_.emplace(id, session);
  }
  log({{"op", "create"}, {"id", id}, {"request", request}});
  return body;
}

json SessionStore::state(const std::string& id) const {
  auto session = find(id);
  std::lock_guard lock(session->mutex);
  return session->snapshot();
}

json SessionStore::flip(const std::string& id, const std::string& switch_id) {
  auto session = find(id);
  std::lock_guard lock(session->mutex);
  const std::size_t s = session->instance->family.require_index(switch_id);
  session->field.flip(s);
  session->history.push_back(s);
  log({{"op", "flip"}, {"id", id}, {"switch_id", switch_id}});
  return session->snapshot();
}

json SessionStore::undo(const std::string& id) {
  auto session = find(id);
  std::lock_guard lock(session->mutex);
  if (session->history.empty()) throw ValidationError("nothing to undo");
  session->field.flip(session->history.back());
  session->history.pop_back();
  log({{"op", "undo"}, {"id", id}});
  return session->snapshot();
}

json SessionStore::hint(const std::string& id) const {
  auto session = find(id);
  std::lock_guard lock(session->mutex);
  const SwitchFamily& family = session->instance->family;
  if (family.size() == 0) throw ValidationError("board has no switches");
  const auto [s, gain] = best_flip(family, session->field);
  return {{"switch_id", family[s].id}, {"gain", gain}};
}

json SessionStore::solve(const std::string& id, bool require_exact) {
  auto session = find(id);
  std::lock_guard lock(session->mutex);
  if (session->cached_solve && (!require_exact || session->cached_solve->at("exact").get<bool>())) {
    return *session->cached_solve;
  }
  const Board& board = session->instance->board;
  const SwitchFamily& family = session->instance->family;
  const SolverOptions solver{options_.solve_cap, options_.jobs};
  json body;
  try {
    const SolveResult exact = solve_exact(board, family, session->config, solver);
    body = solve_result_to_json(exact, family);
    body["exact"] = true;
  } catch (const BudgetError& e) {
    if (require_exact) throw;
    SolveResult best = local_search(board, family, session->config, Assignment::identity(family.size()));
    std::optional<SwitchKind> kind;
    if (session->instance->switch_spec) kind = session->instance->switch_spec->kind;
    std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> groups;
    try {
      groups = scramble_groups(board, family, kind);
    } catch (const ValidationError&) {
      // no usable split; local search only
    }
    if (groups) {
      for (int k = 0; k < options_.heuristic_seeds; ++k) {
        SolveResult trial = scramble_greedy(board, family, session->config, groups->first, groups->second,
                                            static_cast<std::uint64_t>(k));
        if (trial.value > best.value) best = std::move(trial);
      }
    }
    body = solve_result_to_json(best, family);
    body["exact"] = false;
  }
  session->cached_solve = body;
  return body;
}

void SessionStore::remove(const std::string& id) {
  {
    std::unique_lock lock(mutex_);
    if (sessions_.erase(id) == 0) throw SessionNotFound("unknown session '" + id + "'");
  }
  log({{"op", "delete"}, {"id", id}});
}

std::size_t SessionStore::replay(const std::string& path) {
  std::ifstream in(path);
  if (!in) return 0;
  replaying_ = true;
  std::size_t count = 0;
  std::string line;
  try {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const json event = json::parse(line);
      const std::string op = event.at("op").get<std::string>();
      const std::string id = event.at("id").get<std::string>();
      if (op == "create") {
        create_with_id(id, event.at("request"));
        // Keep fresh ids clear of replayed ones.
        if (id.size() > 1 && id[0] == 's') {
          std::unique_lock lock(mutex_);
          next_id_ = std::max<std::uint64_t>(next_id_, std::stoull(id.substr(1)) + 1);
        }
      } else if (op == "flip") {
        flip(id, event.at("switch_id").get<std::string>());
      } else if (op == "undo") {
        undo(id);
      } else if (op == "delete") {
        remove(id);
      }
      ++count;
    }
  } catch (...) {
    replaying_ = false;
    throw;
  }
  replaying_ = false;
  return count;
}

struct HttpService::Impl {
  SessionStore& store;
  std::string origin;
  httplib::Server server;

  Impl(SessionStore& s, std::string o) : store(s), origin(std::move(o)) {}
};

namespace {

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    reply(res, 200, fn());
  } catch (const SessionNotFound& e) {
    reply(res, 404, {{"error", e.what()}});
  } catch (const BudgetError& e) {
    reply(res, 409, {{"error", e.what()}, {"required", e.required()}, {"cap", e.cap()}});
  } catch (const ValidationError& e) {
    reply(res, 400, {{"error", e.what()}});
  } catch (const json::exception& e) {
    reply(res, 400, {{"error", std::string("malformed JSON: ") + e.what()}});
  } catch (const std::exception& e) {
    reply(res, 500, {{"error", e.what()}});
  }
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  return json::parse(req.body);
}

}  // namespace

HttpService::HttpService(SessionStore& store, std::string allowed_origin)
    : impl_(std::make_unique<Impl>(store, std::move(allowed_origin))) {
  auto& server = impl_->server;
  auto& s = impl_->store;
  server.set_default_headers({{"Access-Control-Allow-Origin", impl_->origin},
                              {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.Post("/api/session", [&s](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return s.create(parse_body(req)); });
  });
  server.Get(R"(/api/session/([^/]+))", [&s](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return s.state(req.matches[1]); });
  });
  server.Delete(R"(/api/session/([^/]+))", [&s](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      s.remove(req.matches[1]);
      return json{{"deleted", std::string(req.matches[1])}};
    });
  });
  server.Post(R"(/api/session/([^/]+)/flip)", [&s](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = parse_body(req);
      if (!body.contains("switch_id") || !body.at("switch_id").is_string()) {
        throw ValidationError("flip needs a string \"switch_id\"");
      }
      return s.flip(req.matches[1], body.at("switch_id").get<std::string>());
    });
  });
  server.Post(R"(/api/session/([^/]+)/undo)", [&s](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return s.undo(req.matches[1]); });
  });
  server.Get(R"(/api/session/([^/]+)/hint)", [&s](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return s.hint(req.matches[1]); });
  });
  server.Get(R"(/api/session/([^/]+)/solve)", [&s](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string exact = req.has_param("exact") ? req.get_param_value("exact") : "";
      return s.solve(req.matches[1], exact == "true" || exact == "1");
    });
  });
}

HttpService::~HttpService() = default;

int HttpService::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

void HttpService::listen() { impl_->server.listen_after_bind(); }

void HttpService::stop() { impl_->server.stop(); }

}  // namespace gbk
