#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <filesystem>
#include <random>
#include <thread>

#include "kostant/automaton.hpp"
#include "kostant/session_service.hpp"

using namespace kostant;
using namespace kostant::session;
using nlohmann::json;

namespace {

game::GameSpec modified(const char* type, std::set<Vertex> active) {
  const DynkinDiagram d = catalog_diagram_from_name(type);
  return game::GameSpec::modified(d, ActiveSet(d.rank(), active));
}

game::Configuration cfg(std::vector<long long> v) { return game::Configuration::from_ints(v); }

DynkinDiagram affine_d4() {
  return build_custom_diagram(5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}}, "D4~");
}

std::vector<std::string> state_names(const StateView& v) {
  std::vector<std::string> out;
  for (auto s : v.states) out.push_back(game::to_string(s));
  return out;
}

struct FakeClock {
  Clock::time_point t{};
  std::function<Clock::time_point()> fn() {
    return [this] { return t; };
  }
};

std::filesystem::path temp_log(const char* name) {
  auto p = std::filesystem::temp_directory_path() /
           (std::string("kostant_") + name + "_" + std::to_string(::getpid()) + ".jsonl");
  std::filesystem::remove(p);
  return p;
}

}  // namespace

TEST_CASE("create") {
  SessionManager m;
  auto c = m.create(modified("A3", {2}));
  CHECK(c.id.size() == 32);
  CHECK(c.id.find_first_not_of("0123456789abcdef") == std::string::npos);
  CHECK(c.state.chips == cfg({0, 0, 0}));
  CHECK(state_names(c.state) == std::vector<std::string>{"happy", "sad", "happy"});
  CHECK(c.state.element_length == 0);
  REQUIRE(c.state.tableau);
  CHECK(c.state.tableau->rows.empty());

  auto d4 = m.create(game::GameSpec::classical(catalog_diagram_from_name("D4"), cfg({0, 1, 0, 0})));
  CHECK(d4.state.chips == cfg({0, 1, 0, 0}));
  CHECK_FALSE(d4.state.tableau);
  CHECK(d4.id != c.id);

  CHECK_THROWS_AS(game::spec_from_json(json::parse(
                      R"({"diagram": {"n": 2, "edges": [[1, 1]]}, "active": [1]})")),
                  ValidationError);
  // Two sources: no tableau.
  CHECK_FALSE(m.create(modified("A3", {1, 2})).state.tableau);
}

TEST_CASE("fire") {
  SessionManager m;
  const std::string id = m.create(modified("A2", {1, 2})).id;
  StateView v = m.fire(id, 1);
  CHECK(v.chips == cfg({1, 0}));
  CHECK(v.word == game::MoveSequence{1});
  try {
    m.fire(id, 1);
    FAIL("vertex 1 fired twice");
  } catch (const ConflictError& e) {
    const std::string actual = game::to_string(v.states[0]);
    CHECK(actual != "sad");
    CHECK(std::string(e.what()).find("vertex 1 is " + actual) != std::string::npos);
  }
  CHECK(m.get(id).chips == cfg({1, 0}));
  CHECK_THROWS_AS(m.fire(id, 3), ValidationError);
  CHECK_THROWS_AS(m.fire("nope", 1), NotFoundError);

  const std::string a3 = m.create(modified("A3", {2})).id;
  for (Vertex x : {2, 1, 3, 2}) v = m.fire(a3, x);
  CHECK(v.terminal);
  CHECK(v.chips == cfg({1, 2, 1}));
  CHECK(v.element_length == 4);
  REQUIRE(v.tableau);
  CHECK(v.tableau->rows == std::vector<std::vector<int>>{{1, 3}, {2, 4}});
}

TEST_CASE("undo") {
  SessionManager m;
  const std::string id = m.create(modified("A2", {1, 2})).id;
  CHECK_THROWS_AS(m.undo(id), ConflictError);
  m.fire(id, 1);
  CHECK(m.undo(id).chips == cfg({0, 0}));
  m.fire(id, 1);
  m.fire(id, 2);
  const StateView v = m.undo(id);
  CHECK(v.chips == cfg({1, 0}));
  CHECK(v.word == game::MoveSequence{1});
  CHECK(v.element_length == 1);
}

TEST_CASE("auto play") {
  SessionManager m;
  const std::string a4 = m.create(modified("A4", {1})).id;
  StateView v = m.auto_play(a4, "lowest", 99);
  CHECK(v.terminal);
  CHECK_FALSE(v.diverging);
  CHECK(v.chips == cfg({1, 1, 1, 1}));
  // Auto-played moves are undoable.
  CHECK(m.undo(a4).word.size() == 3);

  const std::string aff = m.create(game::GameSpec::classical(affine_d4(), cfg({1, 1, 1, 1, 1}))).id;
  v = m.auto_play(aff, "lowest", 50);
  CHECK(v.word.size() == 50);
  CHECK_FALSE(v.terminal);
  CHECK(v.diverging);
  CHECK_FALSE(v.element_length);
  CHECK(to_json(v)["diverging"] == true);

  const std::string a2 = m.create(modified("A2", {1, 2})).id;
  m.fire(a2, 2);
  const json before = to_json(m.get(a2));
  CHECK(to_json(m.auto_play(a2, "random", 0)) == before);
  CHECK_THROWS_AS(m.auto_play(a2, "sideways", 1), ValidationError);

  // Finite type, stopped early: neither terminal nor diverging.
  const std::string e6 = m.create(modified("E6", {1})).id;
  v = m.auto_play(e6, "highest", 3);
  CHECK_FALSE(v.terminal);
  CHECK_FALSE(v.diverging);

  // Hitting the step cap flags divergence on finite type too.
  const std::string capped =
      m.create(game::GameSpec::modified(catalog_diagram_from_name("A3"), ActiveSet(3, {1, 2, 3}), 2)).id;
  v = m.auto_play(capped, "lowest", 10);
  CHECK(v.word.size() == 2);
  CHECK(v.diverging);
  CHECK_THROWS_AS(m.fire(capped, game::sad_vertices(v.chips, game::GameSpec::modified(
      catalog_diagram_from_name("A3"), ActiveSet(3, {1, 2, 3}))).front()), ConflictError);
}

TEST_CASE("artifacts") {
  SessionManager m;
  const std::string a2 = m.create(modified("A2", {1, 2})).id;
  json art = m.artifacts(a2);
  CHECK(art["word"] == json::array());
  CHECK(art["element"]["length"] == 0);
  CHECK(art["element"]["action"] == json::parse("[[1,0],[0,1]]"));
  CHECK(art["dfa_path"] == json::array({"(0,0)"}));
  CHECK(art["graph"]["nodes"].size() == 6);

  m.auto_play(a2, "lowest", 10);
  art = m.artifacts(a2);
  CHECK(art["word"] == json::array({1, 2, 1}));
  CHECK(art["element"]["longest"] == true);
  CHECK(art["element"]["action"] == json::parse("[[0,-1],[-1,0]]"));
  CHECK(art["dfa_path"].back() == "(2,2)");
  CHECK_FALSE(art.contains("tableau"));

  const std::string a3 = m.create(modified("A3", {2})).id;
  m.auto_play(a3, "highest", 10);
  art = m.artifacts(a3);
  CHECK(art["tableau"]["shape"] == json::array({2, 2}));
  CHECK(art["moves"] == json::array({2, 3, 1, 2}));
  CHECK(art["word"] == json::array({2, 1, 3, 2}));

  ManagerOptions small;
  small.graph_node_cap = 10;
  SessionManager capped(small);
  art = capped.artifacts(capped.create(modified("B3", {1, 2, 3})).id);
  CHECK_FALSE(art.contains("graph"));
  CHECK(art.contains("graph_omitted"));
  CHECK(art.contains("dfa_path"));
}

TEST_CASE("views are determined by history; words are always accepted") {
  SessionManager m;
  std::mt19937 rng(7);
  for (const char* type : {"A3", "B3", "G2", "D4", "F4"}) {
    const DynkinDiagram d = catalog_diagram_from_name(type);
    for (int trial = 0; trial < 6; ++trial) {
      std::set<Vertex> active;
      for (Vertex v = 1; v <= d.rank(); ++v) {
        if (rng() % 2) active.insert(v);
      }
      if (active.empty()) active.insert(1);
      const game::GameSpec spec = game::GameSpec::modified(d, ActiveSet(d.rank(), active));
      const automaton::ReducedWordDFA dfa = automaton::build_dfa(d, spec.active);
      const std::string id = m.create(spec).id;
      for (int op = 0; op < 40; ++op) {
        const StateView cur = m.get(id);
        const int roll = static_cast<int>(rng() % 10);
        StateView v;
        if (roll < 2) {
          if (cur.word.empty()) continue;
          v = m.undo(id);
        } else if (roll < 4) {
          v = m.auto_play(id, "random", rng() % 4, rng());
        } else {
          const auto sad = game::sad_vertices(cur.chips, spec);
          if (sad.empty()) continue;
          v = m.fire(id, sad[rng() % sad.size()]);
        }
        CAPTURE(type);
        CHECK(automaton::accepts(dfa, v.word));
        CHECK(v.element_length == static_cast<int>(v.word.size()));
        CHECK(v.chips == game::replay(spec, v.word).final);
        // A fresh session fed the same history shows the same view.
        const std::string twin = m.create(spec).id;
        for (Vertex x : v.word) m.fire(twin, x);
        CHECK(to_json(m.get(twin)) == to_json(v));
        CHECK(m.artifacts(id)["element"]["length"] == v.word.size());
      }
    }
  }
}

TEST_CASE("isolation and concurrency") {
  SessionManager m;
  const std::string a = m.create(modified("A2", {1, 2})).id;
  const std::string b = m.create(modified("A2", {1, 2})).id;
  m.fire(a, 1);
  CHECK(m.get(b).word.empty());

  // Many threads hammer one session with fire/undo; each mutation sees the last.
  const std::string e = m.create(modified("E6", {1, 6})).id;
  const game::GameSpec spec = modified("E6", {1, 6});
  std::atomic<int> fires{0}, undos{0};
  std::vector<std::thread> workers;
  for (int t = 0; t < 8; ++t) {
    workers.emplace_back([&, t] {
      std::mt19937 rng(t);
      for (int k = 0; k < 200; ++k) {
        try {
          if (rng() % 3 == 0) {
            m.undo(e);
            ++undos;
          } else {
            const auto sad = game::sad_vertices(m.get(e).chips, spec);
            if (sad.empty()) continue;
            m.fire(e, sad[rng() % sad.size()]);
            ++fires;
          }
        } catch (const ConflictError&) {
          // Another thread changed the state in between; that is fine.
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  const StateView v = m.get(e);
  CHECK(static_cast<int>(v.word.size()) == fires - undos);
  CHECK(v.chips == game::replay(spec, v.word).final);
  CHECK(v.element_length == static_cast<int>(v.word.size()));
}

TEST_CASE("idle eviction") {
  FakeClock clock;
  ManagerOptions opts;
  opts.now = clock.fn();
  SessionManager m(opts);
  const std::string old_id = m.create(modified("A2", {1})).id;
  clock.t += std::chrono::minutes(40);
  const std::string new_id = m.create(modified("A2", {1})).id;
  clock.t += std::chrono::minutes(30);
  CHECK(m.evict_idle() == 1);
  CHECK_THROWS_AS(m.get(old_id), NotFoundError);
  m.get(new_id);
  clock.t += std::chrono::minutes(59);
  CHECK(m.evict_idle() == 0);
  clock.t += std::chrono::minutes(2);
  CHECK(m.evict_idle() == 1);
  CHECK(m.size() == 0);
}

TEST_CASE("persistence log replay") {
  const auto path = temp_log("replay");
  ManagerOptions opts;
  opts.log_path = path;
  std::string a, b, c;
  json va, vb;
  {
    SessionManager m(opts);
    a = m.create(modified("A3", {2})).id;
    b = m.create(game::GameSpec::classical(catalog_diagram_from_name("D4"), cfg({1, 0, 0, 0}))).id;
    c = m.create(modified("A2", {1})).id;
    m.fire(a, 2);
    m.auto_play(a, "random", 2, 99);
    m.undo(a);
    m.auto_play(b, "random", 100, 5);
    va = to_json(m.get(a));
    vb = to_json(m.get(b));
  }
  SessionManager again;
  CHECK(again.replay_log(path) == 7);
  CHECK(to_json(again.get(a)) == va);
  CHECK(to_json(again.get(b)) == vb);
  CHECK(again.get(c).word.empty());

  // Replay then continue logging to the same file.
  {
    SessionManager m(opts);
    m.replay_log(path);
    m.fire(c, 1);
  }
  SessionManager third;
  third.replay_log(path);
  CHECK(third.get(c).word == game::MoveSequence{1});

  std::ofstream(path, std::ios::app) << "{\"op\":\"fire\",\"id\":\"" << a << "\",\"vertex\":9}\n";
  SessionManager bad;
  CHECK_THROWS_AS(bad.replay_log(path), ValidationError);
  std::filesystem::remove(path);
}

TEST_CASE("catalog") {
  const json cat = catalog_json();
  std::vector<std::string> fams;
  for (const auto& f : cat["families"]) fams.push_back(f["family"]);
  CHECK(fams == std::vector<std::string>{"A", "B", "C", "D", "E", "F", "G"});
  CHECK(cat["families"][5]["diagrams"][0]["ascii"] == "o--o=>o--o");
}

TEST_CASE("HTTP on localhost") {
  SessionManager m;
  HttpServer server(m);
  const int port = server.bind_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  httplib::Client cli("127.0.0.1", port);

  auto post = [&](const std::string& path, const std::string& body) {
    return cli.Post(path, body, "application/json");
  };

  auto r = post("/v1/sessions", R"({"type": "A3", "active": [2]})");
  REQUIRE(r);
  CHECK(r->status == 201);
  const json created = json::parse(r->body);
  const std::string id = created["id"];
  CHECK(created["state"]["chips"] == json::array({0, 0, 0}));
  CHECK(created["state"]["states"] == json::array({"happy", "sad", "happy"}));
  CHECK(created["state"]["tableau"]["rows"] == json::array());

  for (int v : {2, 1, 3, 2}) {
    r = post("/v1/sessions/" + id + "/fire", json{{"vertex", v}}.dump());
    REQUIRE(r);
    CHECK(r->status == 200);
  }
  json st = json::parse(r->body);
  CHECK(st["chips"] == json::array({1, 2, 1}));
  CHECK(st["word"] == json::array({2, 1, 3, 2}));
  CHECK(st["terminal"] == true);
  CHECK(st["tableau"]["rows"] == json::parse("[[1,3],[2,4]]"));

  // Happy vertex: 409 naming its state, no change.
  r = post("/v1/sessions/" + id + "/fire", R"({"vertex": 1})");
  CHECK(r->status == 409);
  CHECK(json::parse(r->body)["error"]["message"].get<std::string>().find("vertex 1 is happy") !=
        std::string::npos);
  CHECK(json::parse(cli.Get("/v1/sessions/" + id)->body) == st);

  r = post("/v1/sessions/" + id + "/undo", "");
  CHECK(r->status == 200);
  CHECK(json::parse(r->body)["word"] == json::array({2, 1, 3}));
  r = post("/v1/sessions/" + id + "/auto", R"({"strategy": "lowest", "steps": 5})");
  CHECK(r->status == 200);
  CHECK(json::parse(r->body)["terminal"] == true);

  r = cli.Get("/v1/sessions/" + id + "/artifacts");
  CHECK(r->status == 200);
  CHECK(json::parse(r->body)["tableau"]["shape"] == json::array({2, 2}));

  // Strictness and status codes.
  CHECK(post("/v1/sessions/" + id + "/fire", R"({"vertex": 1, "x": 0})")->status == 400);
  CHECK(post("/v1/sessions/" + id + "/fire", R"({"vertex": "1"})")->status == 400);
  CHECK(post("/v1/sessions/" + id + "/fire", R"({"vertex": 9})")->status == 400);
  CHECK(post("/v1/sessions/" + id + "/fire", "not json")->status == 400);
  CHECK(post("/v1/sessions/" + id + "/auto", R"({"steps": 1, "speed": 2})")->status == 400);
  CHECK(post("/v1/sessions/" + id + "/undo", R"({"n": 1})")->status == 400);
  CHECK(post("/v1/sessions", R"({"type": "A3", "colour": 1})")->status == 400);
  CHECK(post("/v1/sessions", R"({"type": "Z9"})")->status == 400);
  CHECK(post("/v1/sessions", R"({"type": "A3", "active": [1], "inactive": [2]})")->status == 400);
  CHECK(cli.Get("/v1/sessions/deadbeef")->status == 404);
  CHECK(post("/v1/sessions/deadbeef/fire", R"({"vertex": 1})")->status == 404);
  CHECK(cli.Get("/v1/nothing")->status == 404);

  const std::string fresh = json::parse(post("/v1/sessions", R"({"type": "A2"})")->body)["id"];
  CHECK(post("/v1/sessions/" + fresh + "/undo", "{}")->status == 409);

  r = cli.Get("/v1/catalog");
  CHECK(r->status == 200);
  CHECK(json::parse(r->body)["families"].size() == 7);

  server.stop();
  th.join();
}
