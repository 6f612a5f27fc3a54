#pragma once

// Interactive game sessions and their /v1 HTTP+JSON surface.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "kostant/errors.hpp"
#include "kostant/game_engine.hpp"
#include "kostant/syt_builder.hpp"

namespace httplib {
class Server;
}

namespace kostant::session {

class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// The request is well formed but not allowed in the session's current state.
class ConflictError : public Error {
 public:
  using Error::Error;
};

struct StateView {
  game::Configuration chips;
  std::vector<game::VertexState> states;
  game::MoveSequence word;
  std::optional<int> element_length;  // absent off finite type
  bool terminal = false;
  bool diverging = false;
  std::optional<syt::StandardTableau> tableau;
};

nlohmann::json to_json(const StateView& v);

using Clock = std::chrono::steady_clock;

struct ManagerOptions {
  std::chrono::seconds idle_timeout{3600};
  /// Append-only JSON-lines log of every mutation; empty disables it.
  std::filesystem::path log_path;
  /// Artifacts include the reachable graph only below this many nodes.
  std::size_t graph_node_cap = 2000;
  /// The DFA path is omitted when the automaton would exceed this many states.
  std::size_t dfa_node_cap = 200'000;
  std::function<Clock::time_point()> now = [] { return Clock::now(); };
};

class SessionManager {
 public:
  explicit SessionManager(ManagerOptions opts = {});
  ~SessionManager();
  SessionManager(const SessionManager&) = delete;
  SessionManager& operator=(const SessionManager&) = delete;

  struct Created {
    std::string id;
    StateView state;
  };

  Created create(const game::GameSpec& spec);
  StateView get(const std::string& id);
  StateView fire(const std::string& id, Vertex v);
  StateView undo(const std::string& id);
  StateView auto_play(const std::string& id, const std::string& strategy, std::size_t steps,
                      std::uint64_t seed = 0);
  nlohmann::json artifacts(const std::string& id);

  /// Drops sessions idle for longer than the timeout; returns how many.
  std::size_t evict_idle();
  std::size_t size() const;

  /// Rebuilds sessions from a log written by a previous manager. Returns the
  /// number of events applied. Logging to opts.log_path resumes afterwards.
  std::size_t replay_log(const std::filesystem::path& path);

  struct Session;

 private:
  std::shared_ptr<Session> lookup(const std::string& id);
  std::string fresh_id();
  void log(const nlohmann::json& event);
  Created create_with_id(const std::string& id, const game::GameSpec& spec);

  ManagerOptions opts_;
  mutable std::mutex mutex_;
  std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex log_mutex_;
  std::mt19937_64 id_rng_;
  bool replaying_ = false;
};

/// Catalog families and ranks offered to clients.
nlohmann::json catalog_json(int max_rank = 8);

/// /v1 routes on top of a manager. Errors map to 400 (bad input), 404
/// (unknown session), 409 (conflict) with body {"error": {"code", "message"}}.
class HttpServer {
 public:
  explicit HttpServer(SessionManager& manager, std::filesystem::path static_dir = {});
  ~HttpServer();

  /// Blocks until stop().
  bool listen(const std::string& host, int port);
  /// Binds an ephemeral port and returns it (or -1).
  int bind_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  SessionManager& manager_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace kostant::session
