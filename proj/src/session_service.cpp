#include "kostant/session_service.hpp"

#include <httplib.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "kostant/automaton.hpp"
#include "kostant/root_system.hpp"
#include "kostant/weyl_oracle.hpp"

namespace kostant::session {

using nlohmann::json;

json to_json(const StateView& v) {
  json states = json::array();
  for (game::VertexState s : v.states) states.push_back(game::to_string(s));
  json out = {{"chips", game::config_to_json(v.chips)},
              {"states", states},
              {"word", v.word},
              {"element_length", v.element_length ? json(*v.element_length) : json(nullptr)},
              {"terminal", v.terminal}};
  if (v.diverging) out["diverging"] = true;
  if (v.tableau) out["tableau"] = syt::tableau_to_json(*v.tableau);
  return out;
}

struct SessionManager::Session {
  std::mutex mutex;
  std::string id;
  game::GameSpec spec;
  bool finite = false;
  CartanMatrix cartan;
  std::vector<RootVector> roots;
  std::set<Vertex> inactive;
  std::optional<Vertex> tableau_k;

  // Entry m is the state after m moves; entry 0 is the start.
  std::vector<game::Configuration> configs;
  std::vector<weyl::WeylElement> elements;
  game::MoveSequence moves;
  Clock::time_point last_used;

  std::optional<automaton::ReducedWordDFA> dfa;
  bool dfa_too_large = false;

  const game::Configuration& current() const { return configs.back(); }
};

namespace {

void check_vertex(const game::GameSpec& spec, Vertex v) {
  if (v < 1 || v > spec.diagram.rank()) {
    throw ValidationError("field 'vertex': " + std::to_string(v) + " is outside 1.." +
                          std::to_string(spec.diagram.rank()));
  }
}

}  // namespace

SessionManager::SessionManager(ManagerOptions opts) : opts_(std::move(opts)) {
  std::random_device rd;
  std::seed_seq seq{rd(), rd(), rd(), rd(), rd(), rd(), rd(), rd()};
  id_rng_.seed(seq);
}

SessionManager::~SessionManager() = default;

std::string SessionManager::fresh_id() {
  std::ostringstream os;
  os << std::hex;
  for (int half = 0; half < 2; ++half) {
    os.width(16);
    os.fill('0');
    os << id_rng_();
  }
  return os.str();
}

void SessionManager::log(const json& event) {
  if (replaying_ || opts_.log_path.empty()) return;
  std::lock_guard lock(log_mutex_);
  std::ofstream out(opts_.log_path, std::ios::app);
  out << event.dump() << '\n';
}

std::shared_ptr<SessionManager::Session> SessionManager::lookup(const std::string& id) {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFoundError("no session '" + id + "'");
  return it->second;
}

namespace {

StateView view_of(const SessionManager::Session& s);

}  // namespace

SessionManager::Created SessionManager::create_with_id(const std::string& id,
                                                       const game::GameSpec& spec) {
  spec.validate();
  auto s = std::make_shared<Session>();
  s->id = id;
  s->spec = spec;
  s->finite = spec.diagram.is_dynkin();
  if (s->finite) {
    s->cartan = cartan_matrix(spec.diagram);
    s->roots = positive_roots(spec.diagram);
    s->elements.push_back(weyl::identity_element(spec.diagram.rank()));
  }
  if (spec.mode == game::Mode::Modified) {
    s->inactive = spec.active.inactive();
    if (spec.diagram.family() == 'A' && spec.active.active().size() == 1) {
      s->tableau_k = *spec.active.active().begin();
    }
  }
  s->configs.push_back(spec.start());
  s->last_used = opts_.now();
  Created out{id, view_of(*s)};
  {
    std::lock_guard lock(mutex_);
    if (!sessions_.emplace(id, s).second) throw ConsistencyError("duplicate session id " + id);
  }
  log({{"op", "create"}, {"id", id}, {"spec", game::spec_to_json(spec)}});
  return out;
}

SessionManager::Created SessionManager::create(const game::GameSpec& spec) {
  std::string id;
  {
    std::lock_guard lock(mutex_);
    do {
      id = fresh_id();
    } while (sessions_.count(id));
  }
  evict_idle();
  return create_with_id(id, spec);
}

namespace {

StateView view_of(const SessionManager::Session& s) {
  StateView v;
  v.chips = s.current();
  const int n = s.spec.diagram.rank();
  v.terminal = true;
  for (Vertex i = 1; i <= n; ++i) {
    v.states.push_back(game::vertex_state(v.chips, s.spec, i));
    if (v.states.back() == game::VertexState::Sad) v.terminal = false;
  }
  v.word = s.moves;
  if (s.finite) v.element_length = s.elements.back().length;
  // Off finite type a nonterminal game can never terminate.
  v.diverging = !v.terminal && (!s.finite || s.moves.size() >= s.spec.step_cap);
  if (s.tableau_k) v.tableau = syt::fill_tableau(s.moves, n + 1, *s.tableau_k);
  return v;
}

void push_move(SessionManager::Session& s, Vertex v) {
  check_vertex(s.spec, v);
  const game::VertexState st = game::vertex_state(s.current(), s.spec, v);
  if (st != game::VertexState::Sad) {
    throw ConflictError("vertex " + std::to_string(v) + " is " + game::to_string(st) +
                        "; only sad vertices may fire");
  }
  if (s.moves.size() >= s.spec.step_cap) {
    throw ConflictError("step cap of " + std::to_string(s.spec.step_cap) + " moves reached");
  }
  game::Configuration next = game::fire(s.current(), s.spec, v);
  if (s.finite) {
    const weyl::WeylElement w =
        weyl::multiply(weyl::simple_reflection(s.cartan, v), s.elements.back(), s.roots);
    if (s.spec.mode == game::Mode::Modified) {
      // Length grows by one and every w(alpha_j), j in J, stays positive.
      if (w.length != static_cast<int>(s.moves.size()) + 1) {
        throw ConsistencyError("firing produced a non-reduced word");
      }
      const int n = w.rank;
      for (Vertex j : s.inactive) {
        for (int k = 0; k < n; ++k) {
          if (w.action[(j - 1) * n + k] < 0) throw ConsistencyError("firing left W^J");
        }
      }
    }
    s.elements.push_back(w);
  }
  s.configs.push_back(std::move(next));
  s.moves.push_back(v);
}

void pop_move(SessionManager::Session& s) {
  if (s.moves.empty()) throw ConflictError("nothing to undo");
  s.moves.pop_back();
  s.configs.pop_back();
  if (s.finite) s.elements.pop_back();
}

}  // namespace

StateView SessionManager::get(const std::string& id) {
  auto s = lookup(id);
  std::lock_guard lock(s->mutex);
  s->last_used = opts_.now();
  return view_of(*s);
}

StateView SessionManager::fire(const std::string& id, Vertex v) {
  auto s = lookup(id);
  std::lock_guard lock(s->mutex);
  s->last_used = opts_.now();
  push_move(*s, v);
  log({{"op", "fire"}, {"id", id}, {"vertex", v}});
  return view_of(*s);
}

StateView SessionManager::undo(const std::string& id) {
  auto s = lookup(id);
  std::lock_guard lock(s->mutex);
  s->last_used = opts_.now();
  pop_move(*s);
  log({{"op", "undo"}, {"id", id}});
  return view_of(*s);
}

StateView SessionManager::auto_play(const std::string& id, const std::string& strategy,
                                    std::size_t steps, std::uint64_t seed) {
  game::Strategy strat = game::Strategy::from_name(strategy, seed);
  auto s = lookup(id);
  std::lock_guard lock(s->mutex);
  s->last_used = opts_.now();
  game::MoveSequence made;
  for (std::size_t k = 0; k < steps && s->moves.size() < s->spec.step_cap; ++k) {
    const std::vector<Vertex> sad = game::sad_vertices(s->current(), s->spec);
    if (sad.empty()) break;
    const Vertex v = strat.choose(s->current(), sad);
    push_move(*s, v);
    made.push_back(v);
  }
  // The realized moves are logged so a random strategy replays exactly.
  log({{"op", "auto"}, {"id", id}, {"moves", made}});
  return view_of(*s);
}

json SessionManager::artifacts(const std::string& id) {
  auto s = lookup(id);
  std::lock_guard lock(s->mutex);
  s->last_used = opts_.now();
  const int n = s->spec.diagram.rank();
  json out;
  out["moves"] = s->moves;
  out["word"] = game::MoveSequence(s->moves.rbegin(), s->moves.rend());
  if (s->finite) {
    const weyl::WeylElement& w = s->elements.back();
    json rows = json::array();
    for (int i = 0; i < n; ++i) {
      rows.push_back(std::vector<int>(w.action.begin() + i * n, w.action.begin() + (i + 1) * n));
    }
    out["element"] = {{"action", rows},
                      {"length", w.length},
                      {"longest", w.length == static_cast<int>(s->roots.size())}};
  }
  if (s->spec.mode == game::Mode::Modified && !s->dfa_too_large) {
    try {
      if (!s->dfa) s->dfa = automaton::build_dfa(s->spec.diagram, s->spec.active, opts_.dfa_node_cap);
      json path = json::array();
      std::size_t state = s->dfa->start;
      path.push_back(s->dfa->labels[state]);
      for (Vertex v : s->moves) {
        state = s->dfa->step(state, v);
        path.push_back(s->dfa->labels[state]);
      }
      if (!s->dfa->accepting[state]) throw ConsistencyError("session word rejected by the DFA");
      out["dfa_path"] = path;
      out["dfa_states"] = s->dfa->size();
    } catch (const GraphTooLargeError&) {
      s->dfa_too_large = true;
    }
  }
  if (s->tableau_k) {
    out["tableau"] = syt::tableau_to_json(syt::fill_tableau(s->moves, n + 1, *s->tableau_k));
  }
  try {
    out["graph"] = game::graph_to_json(game::reachable_graph(s->spec, opts_.graph_node_cap));
  } catch (const GraphTooLargeError&) {
    out["graph_omitted"] = "more than " + std::to_string(opts_.graph_node_cap) + " nodes";
  }
  return out;
}

std::size_t SessionManager::evict_idle() {
  const Clock::time_point now = opts_.now();
  std::vector<std::string> gone;
  {
    std::lock_guard lock(mutex_);
    for (auto it = sessions_.begin(); it != sessions_.end();) {
      std::unique_lock slock(it->second->mutex, std::try_to_lock);
      // A session busy with a request is in use by definition.
      if (slock.owns_lock() && now - it->second->last_used > opts_.idle_timeout) {
        gone.push_back(it->first);
        slock.unlock();
        it = sessions_.erase(it);
      } else {
        ++it;
      }
    }
  }
  for (const std::string& id : gone) log({{"op", "evict"}, {"id", id}});
  return gone.size();
}

std::size_t SessionManager::size() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

std::size_t SessionManager::replay_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read session log " + path.string());
  replaying_ = true;
  std::size_t applied = 0;
  std::string line;
  std::size_t lineno = 0;
  try {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      const json e = json::parse(line);
      const std::string op = e.at("op").get<std::string>();
      const std::string id = e.at("id").get<std::string>();
      if (op == "create") {
        create_with_id(id, game::spec_from_json(e.at("spec")));
      } else if (op == "fire") {
        fire(id, e.at("vertex").get<Vertex>());
      } else if (op == "undo") {
        undo(id);
      } else if (op == "auto") {
        auto s = lookup(id);
        std::lock_guard lock(s->mutex);
        for (Vertex v : e.at("moves").get<game::MoveSequence>()) push_move(*s, v);
      } else if (op == "evict") {
        std::lock_guard lock(mutex_);
        sessions_.erase(id);
      } else {
        throw ValidationError("unknown op '" + op + "'");
      }
      ++applied;
    }
  } catch (const std::exception& e) {
    replaying_ = false;
    throw ValidationError("session log line " + std::to_string(lineno) + ": " + e.what());
  }
  replaying_ = false;
  // Replayed sessions start their idle clock now.
  std::lock_guard lock(mutex_);
  for (auto& [_, s] : sessions_) s->last_used = opts_.now();
  return applied;
}

json catalog_json(int max_rank) {
  std::map<char, json> by_family;
  for (const DynkinDiagram& d : catalog_up_to_rank(max_rank)) {
    json& f = by_family[*d.family()];
    if (f.is_null()) f = {{"family", std::string(1, *d.family())}, {"diagrams", json::array()}};
    f["diagrams"].push_back(
        {{"type", d.label()}, {"rank", d.rank()}, {"ascii", render_ascii(d)}});
  }
  json families = json::array();
  for (const char fam : std::string("ABCDEFG")) {
    if (by_family.count(fam)) families.push_back(by_family[fam]);
  }
  return {{"families", families}, {"strategies", {"lowest", "highest", "random"}}};
}

// ---------------------------------------------------------------------------
// HTTP

namespace {

void send_error(httplib::Response& res, int status, const std::string& code,
                const std::string& message) {
  res.status = status;
  res.set_content(json{{"error", {{"code", code}, {"message", message}}}}.dump(),
                  "application/json");
}

template <class F>
void guarded(httplib::Response& res, F&& body) {
  try {
    body();
  } catch (const NotFoundError& e) {
    send_error(res, 404, "not_found", e.what());
  } catch (const ConflictError& e) {
    send_error(res, 409, "conflict", e.what());
  } catch (const IllegalMoveError& e) {
    send_error(res, 409, "conflict", e.what());
  } catch (const json::exception& e) {
    send_error(res, 400, "bad_request", std::string("malformed JSON: ") + e.what());
  } catch (const ConsistencyError& e) {
    send_error(res, 500, "internal", e.what());
  } catch (const Error& e) {
    send_error(res, 400, "bad_request", e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "internal", e.what());
  }
}

void reply(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json parse_body(const httplib::Request& req, bool allow_empty) {
  if (req.body.empty() || req.body.find_first_not_of(" \t\r\n") == std::string::npos) {
    if (allow_empty) return json::object();
    throw ValidationError("request body is empty");
  }
  json j = json::parse(req.body);
  if (!j.is_object()) throw ValidationError("request body must be a JSON object");
  return j;
}

void only_fields(const json& j, std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ValidationError("unknown field '" + key + "'");
    }
  }
}

long long integer_field(const json& j, const char* name) {
  if (!j.contains(name)) throw ValidationError(std::string("field '") + name + "' is required");
  if (!j[name].is_number_integer()) {
    throw ValidationError(std::string("field '") + name + "' must be an integer");
  }
  return j[name].get<long long>();
}

}  // namespace

HttpServer::HttpServer(SessionManager& manager, std::filesystem::path static_dir)
    : manager_(manager), server_(std::make_unique<httplib::Server>()) {
  httplib::Server& srv = *server_;
  srv.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Headers", "Content-Type"},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  srv.Options(R"(/v1/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });

  srv.Get("/v1/catalog", [](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { reply(res, catalog_json()); });
  });

  srv.Post("/v1/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto created = manager_.create(game::spec_from_json(parse_body(req, false)));
      reply(res, {{"id", created.id}, {"state", to_json(created.state)}}, 201);
    });
  });

  srv.Get("/v1/sessions/:id", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { reply(res, to_json(manager_.get(req.path_params.at("id")))); });
  });

  srv.Post("/v1/sessions/:id/fire", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = parse_body(req, false);
      only_fields(body, {"vertex"});
      const long long v = integer_field(body, "vertex");
      if (v < 1 || v > 1'000'000) throw ValidationError("field 'vertex' is out of range");
      reply(res, to_json(manager_.fire(req.path_params.at("id"), static_cast<Vertex>(v))));
    });
  });

  srv.Post("/v1/sessions/:id/undo", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      only_fields(parse_body(req, true), {});
      reply(res, to_json(manager_.undo(req.path_params.at("id"))));
    });
  });

  srv.Post("/v1/sessions/:id/auto", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = parse_body(req, false);
      only_fields(body, {"strategy", "steps", "seed"});
      std::string strategy = "lowest";
      if (body.contains("strategy")) {
        if (!body["strategy"].is_string()) throw ValidationError("field 'strategy' must be a string");
        strategy = body["strategy"].get<std::string>();
      }
      const long long steps = integer_field(body, "steps");
      if (steps < 0) throw ValidationError("field 'steps' must be non-negative");
      long long seed = 0;
      if (body.contains("seed")) {
        seed = integer_field(body, "seed");
        if (seed < 0) throw ValidationError("field 'seed' must be non-negative");
      }
      reply(res, to_json(manager_.auto_play(req.path_params.at("id"), strategy,
                                            static_cast<std::size_t>(steps),
                                            static_cast<std::uint64_t>(seed))));
    });
  });

  srv.Get("/v1/sessions/:id/artifacts", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { reply(res, manager_.artifacts(req.path_params.at("id"))); });
  });

  if (!static_dir.empty()) srv.set_mount_point("/", static_dir.string());

  srv.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (res.body.empty() && res.status == 404) {
      send_error(res, 404, "not_found", "no route for " + req.method + " " + req.path);
    }
  });
}

HttpServer::~HttpServer() = default;

bool HttpServer::listen(const std::string& host, int port) { return server_->listen(host, port); }

int HttpServer::bind_any_port(const std::string& host) { return server_->bind_to_any_port(host); }

bool HttpServer::listen_after_bind() { return server_->listen_after_bind(); }

void HttpServer::stop() { server_->stop(); }

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace kostant::session
