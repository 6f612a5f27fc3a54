#include "kostant/game_engine.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <sstream>
#include <unordered_map>

#include <boost/functional/hash.hpp>

#include "kostant/errors.hpp"

namespace kostant::game {

using nlohmann::json;

Configuration Configuration::basis(int rank, Vertex v) {
  if (v < 1 || v > rank) throw ValidationError("basis vertex out of range");
  Configuration c = zero(rank);
  c.chips[v - 1] = 1;
  return c;
}

Configuration Configuration::from_ints(const std::vector<long long>& values) {
  Configuration c;
  for (long long x : values) c.chips.emplace_back(x);
  return c;
}

Chip Configuration::total() const {
  Chip t = 0;
  for (const Chip& x : chips) t += x;
  return t;
}

std::size_t ConfigurationHash::operator()(const Configuration& c) const noexcept {
  std::size_t h = 0;
  for (const Chip& x : c.chips) boost::hash_combine(h, boost::multiprecision::hash_value(x));
  return h;
}

std::string to_string(const Configuration& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.chips.size(); ++i) {
    if (i) s += ",";
    s += kostant::to_string(c.chips[i]);
  }
  return s + ")";
}

// ---------------------------------------------------------------------------

GameSpec GameSpec::modified(DynkinDiagram d, ActiveSet active, std::size_t step_cap) {
  GameSpec g;
  g.diagram = std::move(d);
  g.mode = Mode::Modified;
  g.active = std::move(active);
  g.initial = Configuration::zero(g.diagram.rank());
  g.step_cap = step_cap;
  g.validate();
  return g;
}

GameSpec GameSpec::classical(DynkinDiagram d, Configuration initial, std::size_t step_cap) {
  GameSpec g;
  g.diagram = std::move(d);
  g.mode = Mode::Classical;
  g.active = ActiveSet(g.diagram.rank(), {});
  g.initial = std::move(initial);
  g.step_cap = step_cap;
  g.validate();
  return g;
}

Configuration GameSpec::start() const {
  return mode == Mode::Modified ? Configuration::zero(diagram.rank()) : initial;
}

void GameSpec::validate() const {
  const int n = diagram.rank();
  if (n < 1) throw ValidationError("game needs a diagram with at least one vertex");
  if (step_cap == 0) throw ValidationError("step_cap must be positive");
  if (mode == Mode::Modified) {
    if (active.rank() != n) throw ValidationError("active set rank does not match the diagram");
    if (active.empty()) throw ValidationError("modified game needs a nonempty active set");
  } else {
    if (initial.rank() != n) throw ValidationError("initial configuration has the wrong length");
    bool positive = false;
    for (const Chip& x : initial.chips) {
      if (x < 0) throw ValidationError("initial configuration has a negative entry");
      if (x > 0) positive = true;
    }
    if (!positive) throw ValidationError("classical game needs a positive entry in the start");
  }
}

int GameSpec::source(Vertex v) const {
  return mode == Mode::Modified && active.contains(v) ? 1 : 0;
}

std::string to_string(VertexState s) {
  switch (s) {
    case VertexState::Sad: return "sad";
    case VertexState::Happy: return "happy";
    case VertexState::Excited: return "excited";
  }
  return "?";
}

namespace {

Chip neighbor_sum(const Configuration& c, const GameSpec& g, Vertex v) {
  Chip s = g.source(v);
  for (Vertex u : g.diagram.neighbors(v)) s += g.diagram.arrows(u, v) * c.at(u);
  return s;
}

void check_vertex(const GameSpec& g, Vertex v) {
  if (v < 1 || v > g.diagram.rank()) {
    throw ValidationError("vertex " + std::to_string(v) + " out of range");
  }
}

}  // namespace

VertexState vertex_state(const Configuration& c, const GameSpec& g, Vertex v) {
  check_vertex(g, v);
  const Chip lhs = 2 * c.at(v);
  const Chip rhs = neighbor_sum(c, g, v);
  if (lhs < rhs) return VertexState::Sad;
  if (lhs == rhs) return VertexState::Happy;
  return VertexState::Excited;
}

std::vector<Vertex> sad_vertices(const Configuration& c, const GameSpec& g) {
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= g.diagram.rank(); ++v) {
    if (vertex_state(c, g, v) == VertexState::Sad) out.push_back(v);
  }
  return out;
}

Chip firing_gain(const Configuration& c, const GameSpec& g, Vertex v) {
  check_vertex(g, v);
  return neighbor_sum(c, g, v) - 2 * c.at(v);
}

Configuration fire(const Configuration& c, const GameSpec& g, Vertex v) {
  Chip gain = firing_gain(c, g, v);
  if (gain <= 0) {
    throw IllegalMoveError("vertex " + std::to_string(v) + " is not sad in " + to_string(c), -1,
                           v);
  }
  Configuration out = c;
  out.chips[v - 1] += gain;
  return out;
}

// ---------------------------------------------------------------------------

Strategy Strategy::lowest() { return Strategy{}; }

Strategy Strategy::highest() {
  Strategy s;
  s.kind_ = Kind::Highest;
  return s;
}

Strategy Strategy::random(std::uint64_t seed) {
  Strategy s;
  s.kind_ = Kind::Random;
  s.rng_.seed(seed);
  return s;
}

Strategy Strategy::interactive(Callback cb) {
  if (!cb) throw ValidationError("interactive strategy needs a callback");
  Strategy s;
  s.kind_ = Kind::Interactive;
  s.callback_ = std::move(cb);
  return s;
}

Strategy Strategy::from_name(const std::string& name, std::uint64_t seed) {
  if (name == "lowest") return lowest();
  if (name == "highest") return highest();
  if (name == "random") return random(seed);
  throw ValidationError("unknown strategy '" + name + "'");
}

Vertex Strategy::choose(const Configuration& c, const std::vector<Vertex>& sad) {
  if (sad.empty()) throw ValidationError("no sad vertex to choose from");
  switch (kind_) {
    case Kind::Lowest: return sad.front();
    case Kind::Highest: return sad.back();
    case Kind::Random: {
      std::uniform_int_distribution<std::size_t> pick(0, sad.size() - 1);
      return sad[pick(rng_)];
    }
    case Kind::Interactive: return callback_(c, sad);
  }
  return sad.front();
}

// ---------------------------------------------------------------------------

AlgebraicState algebraic_start(const GameSpec& g) {
  AlgebraicState st;
  st.root_part = g.start().chips;
  st.source_part.assign(g.diagram.rank(), 0);
  for (Vertex v = 1; v <= g.diagram.rank(); ++v) st.source_part[v - 1] = g.source(v);
  return st;
}

Chip algebraic_pairing(const AlgebraicState& st, const CartanMatrix& a, Vertex i) {
  Chip p = -st.source_part[i - 1];
  for (int j = 1; j <= a.rank(); ++j) {
    if (a(j, i) != 0) p += st.root_part[j - 1] * a(j, i);
  }
  return p;
}

AlgebraicState algebraic_step(const AlgebraicState& st, const CartanMatrix& a, Vertex v) {
  if (v < 1 || v > a.rank()) throw ValidationError("vertex out of range");
  Chip p = algebraic_pairing(st, a, v);
  if (p >= 0) throw IllegalMoveError("pairing with alpha_" + std::to_string(v) + "^vee is not negative", -1, v);
  AlgebraicState out = st;
  out.root_part[v - 1] -= p;
  return out;
}

namespace {

// The Cartan matrix only needs the arrow counts, so it is available for any
// diagram, Dynkin or not.
CartanMatrix game_cartan(const DynkinDiagram& d) {
  CartanMatrix a(d.rank());
  for (Vertex u = 1; u <= d.rank(); ++u) {
    for (Vertex v = 1; v <= d.rank(); ++v) a(u, v) = u == v ? 2 : -d.arrows(u, v);
  }
  return a;
}

struct Stepper {
  const GameSpec& g;
  CrossCheck* cross;
  CartanMatrix a;
  AlgebraicState st;

  Stepper(const GameSpec& spec, CrossCheck* cc) : g(spec), cross(cc) {
    if (cross) {
      a = game_cartan(g.diagram);
      st = algebraic_start(g);
    }
  }

  Configuration step(const Configuration& c, Vertex v) {
    Configuration next = fire(c, g, v);
    if (cross) {
      st = algebraic_step(st, a, v);
      if (st.root_part != next.chips) {
        throw ConsistencyError("algebraic state diverged from chips after firing " +
                               std::to_string(v) + " at " + to_string(c));
      }
      ++cross->steps;
    }
    return next;
  }
};

}  // namespace

PlayResult play(const GameSpec& g, Strategy strategy, CrossCheck* cross) {
  g.validate();
  PlayResult r;
  Configuration c = g.start();
  r.configs.push_back(c);
  Stepper stepper(g, cross);
  for (;;) {
    std::vector<Vertex> sad = sad_vertices(c, g);
    if (sad.empty()) break;
    if (r.moves.size() >= g.step_cap) {
      r.diverged = true;
      break;
    }
    const Vertex v = strategy.choose(c, sad);
    if (std::find(sad.begin(), sad.end(), v) == sad.end()) {
      throw IllegalMoveError("strategy chose non-sad vertex " + std::to_string(v),
                             static_cast<int>(r.moves.size()), v);
    }
    Configuration next = stepper.step(c, v);
    r.increments.push_back(next.at(v) - c.at(v));
    r.moves.push_back(v);
    c = std::move(next);
    r.configs.push_back(c);
  }
  r.final = c;
  return r;
}

PlayResult replay(const GameSpec& g, const MoveSequence& moves, CrossCheck* cross) {
  g.validate();
  PlayResult r;
  Configuration c = g.start();
  r.configs.push_back(c);
  Stepper stepper(g, cross);
  for (std::size_t k = 0; k < moves.size(); ++k) {
    const Vertex v = moves[k];
    if (v < 1 || v > g.diagram.rank()) {
      throw IllegalMoveError("move " + std::to_string(k) + " names vertex " + std::to_string(v) +
                                 ", which does not exist",
                             static_cast<int>(k), v);
    }
    if (vertex_state(c, g, v) != VertexState::Sad) {
      throw IllegalMoveError("move " + std::to_string(k) + ": vertex " + std::to_string(v) +
                                 " is " + to_string(vertex_state(c, g, v)) + " in " + to_string(c),
                             static_cast<int>(k), v);
    }
    Configuration next = stepper.step(c, v);
    r.increments.push_back(next.at(v) - c.at(v));
    r.moves.push_back(v);
    c = std::move(next);
    r.configs.push_back(c);
  }
  r.final = c;
  r.diverged = false;
  return r;
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> ConfigGraph::find(const Configuration& c) const {
  auto it = std::lower_bound(by_config.begin(), by_config.end(), c,
                             [&](std::size_t i, const Configuration& x) { return nodes[i] < x; });
  if (it != by_config.end() && nodes[*it] == c) return *it;
  return std::nullopt;
}

ConfigGraph reachable_graph(const GameSpec& g, std::size_t node_cap, CrossCheck* cross) {
  g.validate();
  return reachable_graph_from(g, {g.start()}, node_cap, cross);
}

ConfigGraph reachable_graph_from(const GameSpec& g, const std::vector<Configuration>& starts,
                                 std::size_t node_cap, CrossCheck* cross) {
  if (starts.empty()) throw ValidationError("no starting configuration");
  if (g.mode == Mode::Modified && (starts.size() != 1 || starts[0] != g.start())) {
    throw ValidationError("the modified game starts at the zero configuration");
  }
  ConfigGraph graph;
  std::unordered_map<Configuration, std::size_t, ConfigurationHash> index;
  // Algebraic states travel with nodes when cross-checking.
  std::vector<AlgebraicState> alg;
  const CartanMatrix a = game_cartan(g.diagram);

  auto add = [&](const Configuration& c) -> std::pair<std::size_t, bool> {
    auto [it, inserted] = index.emplace(c, graph.nodes.size());
    if (!inserted) return {it->second, false};
    if (graph.nodes.size() >= node_cap) {
      throw GraphTooLargeError("reachable graph exceeds node cap of " + std::to_string(node_cap));
    }
    graph.nodes.push_back(c);
    graph.out.emplace_back();
    return {it->second, true};
  };

  for (const Configuration& s : starts) {
    if (s.rank() != g.diagram.rank()) throw ValidationError("start has the wrong length");
    auto [id, fresh] = add(s);
    if (!fresh) continue;
    graph.starts.push_back(id);
    if (cross) {
      AlgebraicState st = algebraic_start(g);
      st.root_part = s.chips;
      alg.push_back(std::move(st));
    }
  }

  for (std::size_t head = 0; head < graph.nodes.size(); ++head) {
    const Configuration cur = graph.nodes[head];
    for (Vertex v = 1; v <= g.diagram.rank(); ++v) {
      const Chip gain = firing_gain(cur, g, v);
      if (gain <= 0) continue;
      Configuration next = cur;
      next.chips[v - 1] += gain;
      auto [to, fresh] = add(next);
      if (cross) {
        AlgebraicState st = algebraic_step(alg[head], a, v);
        if (st.root_part != next.chips) {
          throw ConsistencyError("algebraic state diverged from chips at " + to_string(cur));
        }
        if (fresh) alg.push_back(std::move(st));
        ++cross->steps;
      }
      graph.out[head].push_back(graph.edges.size());
      graph.edges.push_back({head, v, to});
    }
    if (graph.out[head].empty()) graph.sinks.push_back(head);
  }

  graph.by_config.resize(graph.nodes.size());
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) graph.by_config[i] = i;
  std::sort(graph.by_config.begin(), graph.by_config.end(),
            [&](std::size_t x, std::size_t y) { return graph.nodes[x] < graph.nodes[y]; });
  return graph;
}

// ---------------------------------------------------------------------------

weyl::WeylElement word_of(const GameSpec& g, const MoveSequence& seq) {
  replay(g, seq);
  if (!g.diagram.is_dynkin()) {
    throw NonCrystallographicError("word_of needs a finite Dynkin diagram");
  }
  const CartanMatrix a = cartan_matrix(g.diagram);
  const std::vector<RootVector> roots = positive_roots(g.diagram);
  weyl::Word written(seq.rbegin(), seq.rend());
  weyl::WeylElement w = weyl::element_of_word(a, written, roots);
  if (g.mode == Mode::Modified) {
    if (w.length != static_cast<int>(seq.size())) {
      throw ConsistencyError("legal move sequence gave a non-reduced word");
    }
    const std::set<Vertex> J = g.active.inactive();
    for (const RootVector& r : weyl::inversion_set(w, roots)) {
      if (supported_on(r, J)) throw ConsistencyError("legal move sequence left W^J");
    }
  }
  return w;
}

Configuration config_of_element(const weyl::WeylGroup& group, std::size_t w,
                                const ActiveSet& active, std::size_t word_cap) {
  if (active.rank() != group.rank()) throw ValidationError("active set rank mismatch");
  for (Vertex j : active.inactive()) {
    if (group.length(group.mul(w, j, weyl::WeylGroup::Side::Right)) < group.length(w)) {
      throw DomainError("element has a right descent at inactive vertex " + std::to_string(j) +
                        ", so it is not a minimal coset representative");
    }
  }
  const GameSpec g = GameSpec::modified(group.diagram(), active);
  const CartanMatrix& a = group.cartan();
  std::optional<Configuration> result;
  for (const weyl::Word& word : weyl::reduced_words_limited(group, w, std::max<std::size_t>(word_cap, 1))) {
    AlgebraicState st = algebraic_start(g);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      try {
        st = algebraic_step(st, a, *it);
      } catch (const IllegalMoveError&) {
        throw ConsistencyError("reduced word of a W^J element is not a legal move sequence");
      }
    }
    Configuration c{st.root_part};
    if (result && *result != c) {
      throw ConsistencyError("configuration depends on the chosen reduced word");
    }
    result = std::move(c);
  }
  return *result;
}

// ---------------------------------------------------------------------------

namespace {

std::string word_string(const weyl::Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (Vertex v : w) s += "s" + std::to_string(v);
  return s;
}

}  // namespace

BijectionReport verify_bijection(const GameSpec& g, const BijectionOptions& opts) {
  g.validate();
  if (g.mode != Mode::Modified) throw ValidationError("bijection check needs the modified game");
  BijectionReport rep;
  auto fail = [&](const std::string& msg) {
    rep.ok = false;
    if (rep.counterexample.empty()) rep.counterexample = msg;
    return rep;
  };

  const weyl::WeylGroup group = weyl::generate(g.diagram, opts.oracle_cap);
  const std::set<Vertex> J = g.active.inactive();
  const weyl::CosetSystem cosets = weyl::minimal_coset_reps(group, J);
  rep.coset_size = cosets.reps.size();

  CrossCheck cross;
  const ConfigGraph graph = reachable_graph(g, opts.node_cap, &cross);
  rep.cross_checks = cross.steps;
  rep.nodes = graph.nodes.size();

  // (a)
  if (rep.nodes != rep.coset_size) {
    return fail("reachable configurations: " + std::to_string(rep.nodes) +
                ", |W^J|: " + std::to_string(rep.coset_size));
  }
  if (graph.sinks.size() != 1) return fail("expected a unique terminal configuration");

  // Elements of nodes by left multiplication along edges; BFS order is
  // topological because every edge adds one to the length.
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> elem(graph.nodes.size(), kUnset);
  elem[graph.starts.front()] = group.identity();
  for (std::size_t x = 0; x < graph.nodes.size(); ++x) {
    for (std::size_t e : graph.out[x]) {
      const auto& edge = graph.edges[e];
      const std::size_t w = group.mul(elem[x], edge.vertex, weyl::WeylGroup::Side::Left);
      if (group.length(w) != group.length(elem[x]) + 1) {
        return fail("config " + to_string(graph.nodes[edge.to]) + ": firing " +
                    std::to_string(edge.vertex) + " does not lengthen the element");
      }
      if (elem[edge.to] == kUnset) {
        elem[edge.to] = w;
      } else if (elem[edge.to] != w) {
        return fail("config " + to_string(graph.nodes[edge.to]) +
                    " is reached by paths with different Weyl elements");
      }
    }
  }

  // (b)
  std::vector<std::size_t> owner(group.size(), kUnset);
  std::vector<bool> is_rep(group.size(), false);
  for (std::size_t w : cosets.reps) is_rep[w] = true;
  for (std::size_t x = 0; x < graph.nodes.size(); ++x) {
    const std::size_t w = elem[x];
    const std::string where = "config " + to_string(graph.nodes[x]) + ", element " +
                              word_string(weyl::reduced_words_limited(group, w, 1).front());
    if (!is_rep[w]) return fail(where + ": element is not in W^J");
    if (owner[w] != kUnset) return fail(where + ": two configurations share an element");
    owner[w] = x;
    if (config_of_element(group, w, g.active) != graph.nodes[x]) {
      return fail(where + ": config_of_element gives " +
                  to_string(config_of_element(group, w, g.active)));
    }
  }

  // (c), (d): path counts first, then the paths themselves when affordable.
  const std::vector<BigInt> words = weyl::reduced_word_counts(group);
  std::vector<BigInt> paths(graph.nodes.size(), 0);
  paths[graph.starts.front()] = 1;
  for (std::size_t x = 0; x < graph.nodes.size(); ++x) {
    for (std::size_t e : graph.out[x]) paths[graph.edges[e].to] += paths[x];
  }
  BigInt total = 0;
  for (std::size_t x = 0; x < graph.nodes.size(); ++x) {
    total += paths[x];
    if (paths[x] != words[elem[x]]) {
      return fail("config " + to_string(graph.nodes[x]) + ": " + kostant::to_string(paths[x]) +
                  " paths but " + kostant::to_string(words[elem[x]]) + " reduced words");
    }
  }

  if (total <= opts.path_enumeration_cap) {
    // Every path, as a move sequence, must spell its endpoint's element.
    rep.paths_enumerated = true;
    BigInt walked = 0;
    MoveSequence seq;
    std::string bad;
    std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t x, std::size_t w) {
      if (!bad.empty()) return;
      if (w != elem[x] || group.length(w) != static_cast<int>(seq.size())) {
        weyl::Word written(seq.rbegin(), seq.rend());
        bad = "config " + to_string(graph.nodes[x]) + ", word " + word_string(written) +
              " is not a reduced word of the node's element";
        return;
      }
      ++walked;
      for (std::size_t e : graph.out[x]) {
        const auto& edge = graph.edges[e];
        seq.push_back(edge.vertex);
        walk(edge.to, group.mul(w, edge.vertex, weyl::WeylGroup::Side::Left));
        seq.pop_back();
      }
    };
    walk(graph.starts.front(), group.identity());
    if (!bad.empty()) return fail(bad);
    if (walked != total) return fail("path enumeration count disagrees with the path DP");
    rep.paths_checked = walked;
  } else {
    // Local form of (d): the last moves into x are exactly the left descents of elem(x).
    std::vector<std::vector<std::pair<Vertex, std::size_t>>> incoming(graph.nodes.size());
    for (const auto& edge : graph.edges) incoming[edge.to].push_back({edge.vertex, elem[edge.from]});
    for (std::size_t x = 0; x < graph.nodes.size(); ++x) {
      std::vector<std::pair<Vertex, std::size_t>> expected;
      for (Vertex v = 1; v <= group.rank(); ++v) {
        const std::size_t sw = group.mul(elem[x], v, weyl::WeylGroup::Side::Left);
        if (group.length(sw) < group.length(elem[x])) expected.push_back({v, sw});
      }
      auto got = incoming[x];
      std::sort(got.begin(), got.end());
      if (got != expected) {
        return fail("config " + to_string(graph.nodes[x]) +
                    ": incoming moves differ from the element's left descents");
      }
    }
    rep.paths_checked = total;
  }
  return rep;
}

RootCountReport root_counting_check(const DynkinDiagram& d, const ActiveSet& active) {
  RootCountReport rep;
  const GameSpec g = GameSpec::modified(d, active);
  CrossCheck cross;
  PlayResult r = play(g, Strategy::lowest(), &cross);
  if (r.diverged) throw ConsistencyError("modified game on a Dynkin diagram did not terminate");
  rep.cross_checks = cross.steps;
  rep.moves = r.moves.size();
  rep.final = r.final;
  rep.total_chips = r.final.total();

  const std::set<Vertex> J = active.inactive();
  for (const RootVector& c : positive_coroots(d)) {
    if (!supported_on(c, J)) rep.coroot_height_sum += i_height(c, active);
  }
  rep.equal = rep.total_chips == rep.coroot_height_sum;

  // K_l = ht_I(s_{i_1} ... s_{i_{l-1}} alpha_{i_l}^vee), computed on coroots.
  const CartanMatrix dual = cartan_matrix(d).transposed();
  for (std::size_t l = 0; l < r.moves.size(); ++l) {
    RootVector gamma = simple_root(d.rank(), r.moves[l], true);
    for (std::size_t m = l; m-- > 0;) gamma = reflect(dual, gamma, r.moves[m]);
    if (!gamma.is_positive() || supported_on(gamma, J) ||
        r.increments[l] != i_height(gamma, active)) {
      rep.increments_match = false;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

json chip_to_json(const Chip& c) {
  if (c >= std::numeric_limits<std::int64_t>::min() &&
      c <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(c);
  }
  return kostant::to_string(c);
}

Chip chip_from_json(const json& j) {
  if (j.is_number_integer()) return Chip(j.get<std::int64_t>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const std::size_t first = !s.empty() && s[0] == '-' ? 1 : 0;
    if (s.size() == first || s.find_first_not_of("0123456789", first) != std::string::npos) {
      throw ValidationError("chip value '" + s + "' is not an integer");
    }
    return Chip(s);
  }
  throw ValidationError("chip value must be an integer");
}

json config_to_json(const Configuration& c) {
  json out = json::array();
  for (const Chip& x : c.chips) out.push_back(chip_to_json(x));
  return out;
}

Configuration config_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("configuration must be an array");
  Configuration c;
  for (const json& x : j) c.chips.push_back(chip_from_json(x));
  return c;
}

json spec_to_json(const GameSpec& g) {
  json out;
  out["diagram"] = diagram_to_json(g.diagram);
  out["mode"] = g.mode == Mode::Modified ? "modified" : "classical";
  if (g.mode == Mode::Modified) {
    out["active"] = std::vector<int>(g.active.active().begin(), g.active.active().end());
  } else {
    out["initial"] = config_to_json(g.initial);
  }
  out["step_cap"] = g.step_cap;
  return out;
}

namespace {

std::set<Vertex> vertex_set_from_json(const json& j, const char* field) {
  if (!j.is_array()) throw ValidationError(std::string(field) + " must be an array of vertices");
  std::set<Vertex> out;
  for (const json& x : j) {
    if (!x.is_number_integer()) throw ValidationError(std::string(field) + " entries must be integers");
    out.insert(x.get<int>());
  }
  return out;
}

}  // namespace

GameSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("game spec must be a JSON object");
  static const std::set<std::string> known = {"type",    "diagram", "mode",    "active",
                                              "inactive", "initial", "step_cap"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw ValidationError("unknown field '" + key + "' in game spec");
  }
  DynkinDiagram d;
  if (j.contains("type") == j.contains("diagram")) {
    throw ValidationError("game spec needs exactly one of 'type' and 'diagram'");
  }
  if (j.contains("type")) {
    if (!j["type"].is_string()) throw ValidationError("'type' must be a string like \"A3\"");
    d = catalog_diagram_from_name(j["type"].get<std::string>());
  } else {
    d = diagram_from_json(j["diagram"]);
  }

  std::size_t step_cap = 10'000;
  if (j.contains("step_cap")) {
    if (!j["step_cap"].is_number_integer() || j["step_cap"].get<long long>() <= 0) {
      throw ValidationError("'step_cap' must be a positive integer");
    }
    step_cap = j["step_cap"].get<std::size_t>();
  }

  std::string mode;
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) throw ValidationError("'mode' must be a string");
    mode = j["mode"].get<std::string>();
    if (mode != "modified" && mode != "classical") {
      throw ValidationError("'mode' must be \"modified\" or \"classical\"");
    }
  } else {
    mode = j.contains("initial") ? "classical" : "modified";
  }

  if (mode == "classical") {
    if (j.contains("active") || j.contains("inactive")) {
      throw ValidationError("classical games take no active set");
    }
    if (!j.contains("initial")) throw ValidationError("classical games need 'initial'");
    return GameSpec::classical(d, config_from_json(j["initial"]), step_cap);
  }
  if (j.contains("initial")) throw ValidationError("modified games start at zero; drop 'initial'");
  if (j.contains("active") && j.contains("inactive")) {
    throw ValidationError("give 'active' or 'inactive', not both");
  }
  ActiveSet active;
  if (j.contains("active")) {
    active = ActiveSet(d.rank(), vertex_set_from_json(j["active"], "active"));
  } else if (j.contains("inactive")) {
    active = ActiveSet::from_inactive(d.rank(), vertex_set_from_json(j["inactive"], "inactive"));
  } else {
    active = ActiveSet::all(d.rank());
  }
  return GameSpec::modified(d, active, step_cap);
}

json trace_to_json(const GameSpec& g, const PlayResult& r) {
  json out;
  out["spec"] = spec_to_json(g);
  out["moves"] = r.moves;
  json configs = json::array();
  for (const Configuration& c : r.configs) configs.push_back(config_to_json(c));
  out["configs"] = std::move(configs);
  out["final"] = config_to_json(r.final);
  out["word"] = std::vector<Vertex>(r.moves.rbegin(), r.moves.rend());
  out["diverged"] = r.diverged;
  return out;
}

std::string graph_to_dot(const ConfigGraph& graph) {
  std::ostringstream os;
  os << "digraph reachable {\n  rankdir=TB;\n  node [shape=box];\n";
  std::vector<bool> sink(graph.nodes.size(), false);
  for (std::size_t s : graph.sinks) sink[s] = true;
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    os << "  n" << i << " [label=\"" << to_string(graph.nodes[i]) << "\"";
    if (sink[i]) os << ", peripheries=2";
    os << "];\n";
  }
  for (const auto& e : graph.edges) {
    os << "  n" << e.from << " -> n" << e.to << " [label=\"" << e.vertex << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

json graph_to_json(const ConfigGraph& graph) {
  json out;
  json nodes = json::array();
  for (const Configuration& c : graph.nodes) nodes.push_back(config_to_json(c));
  out["nodes"] = std::move(nodes);
  json edges = json::array();
  for (const auto& e : graph.edges) edges.push_back({{"from", e.from}, {"vertex", e.vertex}, {"to", e.to}});
  out["edges"] = std::move(edges);
  out["starts"] = graph.starts;
  out["sinks"] = graph.sinks;
  return out;
}

}  // namespace kostant::game
