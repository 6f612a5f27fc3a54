#include "kostant/automaton.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "kostant/errors.hpp"

namespace kostant::automaton {

using nlohmann::json;

std::size_t ReducedWordDFA::step(std::size_t state, Letter letter) const {
  if (letter < 1 || letter > alphabet) {
    throw ValidationError("letter " + std::to_string(letter) + " outside 1.." +
                          std::to_string(alphabet));
  }
  return delta[state][letter - 1];
}

void ReducedWordDFA::validate() const {
  const std::size_t n = delta.size();
  if (n == 0) throw ValidationError("automaton has no states");
  if (alphabet < 1) throw ValidationError("automaton has an empty alphabet");
  if (labels.size() != n || accepting.size() != n) {
    throw ValidationError("labels and accepting flags must cover every state");
  }
  if (start >= n || trap >= n) throw ValidationError("start or trap index out of range");
  for (std::size_t s = 0; s < n; ++s) {
    if (delta[s].size() != static_cast<std::size_t>(alphabet)) {
      throw ValidationError("transition table row " + std::to_string(s) + " is not total");
    }
    for (std::size_t t : delta[s]) {
      if (t >= n) throw ValidationError("transition target out of range");
    }
    if (accepting[s] == (s == trap)) {
      throw ValidationError("exactly the non-trap states must be accepting");
    }
  }
  for (std::size_t t : delta[trap]) {
    if (t != trap) throw ValidationError("trap state is not absorbing");
  }
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    for (std::size_t t : delta[s]) {
      if (!seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (!seen[s] && s != trap) {
      throw ValidationError("state " + std::to_string(s) + " is unreachable from the start");
    }
  }
}

ReducedWordDFA dfa_from_graph(const game::ConfigGraph& graph, int rank) {
  ReducedWordDFA a;
  a.alphabet = rank;
  const std::size_t n = graph.nodes.size();
  a.trap = n;
  a.start = graph.starts.at(0);
  a.delta.assign(n + 1, std::vector<std::size_t>(rank, a.trap));
  for (const auto& e : graph.edges) a.delta[e.from][e.vertex - 1] = e.to;
  for (const auto& c : graph.nodes) a.labels.push_back(game::to_string(c));
  a.labels.push_back("trap");
  a.accepting.assign(n + 1, true);
  a.accepting[a.trap] = false;
  return a;
}

ReducedWordDFA build_dfa(const DynkinDiagram& d, const ActiveSet& active, std::size_t node_cap) {
  const game::GameSpec g = game::GameSpec::modified(d, active);
  return dfa_from_graph(game::reachable_graph(g, node_cap), d.rank());
}

bool accepts(const ReducedWordDFA& a, const Word& word) {
  std::size_t s = a.start;
  for (Letter x : word) {
    s = a.step(s, x);  // validates every letter, even after reaching the trap
  }
  return a.accepting[s];
}

WordLanguage enumerate_language(const ReducedWordDFA& a, std::size_t max_len) {
  WordLanguage out;
  // Words that never visit the trap; prefix closure lets us grow layer by layer.
  std::vector<std::pair<Word, std::size_t>> layer{{{}, a.start}};
  for (std::size_t len = 0; len <= max_len && !layer.empty(); ++len) {
    std::vector<std::pair<Word, std::size_t>> next;
    for (const auto& [w, s] : layer) {
      out[len].insert(w);
      if (len == max_len) continue;
      for (Letter x = 1; x <= a.alphabet; ++x) {
        const std::size_t t = a.delta[s][x - 1];
        if (!a.accepting[t]) continue;
        Word longer = w;
        longer.push_back(x);
        next.emplace_back(std::move(longer), t);
      }
    }
    layer = std::move(next);
  }
  return out;
}

std::vector<BigInt> count_words(const ReducedWordDFA& a, std::size_t max_len) {
  std::vector<BigInt> counts;
  std::vector<BigInt> at(a.size(), 0);
  at[a.start] = 1;
  for (std::size_t len = 0; len <= max_len; ++len) {
    BigInt total = 0;
    for (std::size_t s = 0; s < a.size(); ++s) {
      if (a.accepting[s]) total += at[s];
    }
    counts.push_back(total);
    std::vector<BigInt> next(a.size(), 0);
    for (std::size_t s = 0; s < a.size(); ++s) {
      if (!a.accepting[s] || at[s] == 0) continue;
      for (std::size_t t : a.delta[s]) next[t] += at[s];
    }
    at = std::move(next);
  }
  return counts;
}

ReducedWordDFA minimize(const ReducedWordDFA& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> cls(n);
  for (std::size_t s = 0; s < n; ++s) cls[s] = a.accepting[s] ? 1 : 0;
  std::size_t classes = 0;
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<std::size_t> sig{cls[s]};
      for (std::size_t t : a.delta[s]) sig.push_back(cls[t]);
      next[s] = ids.emplace(std::move(sig), ids.size()).first->second;
    }
    const bool stable = ids.size() == classes;
    classes = ids.size();
    cls = std::move(next);
    if (stable) break;
  }

  // Renumber classes in BFS order from the start; unreachable classes drop out.
  std::vector<std::size_t> order(classes, static_cast<std::size_t>(-1));
  std::vector<std::size_t> rep;
  std::deque<std::size_t> queue{a.start};
  order[cls[a.start]] = 0;
  rep.push_back(a.start);
  while (!queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    for (std::size_t t : a.delta[s]) {
      if (order[cls[t]] != static_cast<std::size_t>(-1)) continue;
      order[cls[t]] = rep.size();
      rep.push_back(t);
      queue.push_back(t);
    }
  }
  if (order[cls[a.trap]] == static_cast<std::size_t>(-1)) {
    order[cls[a.trap]] = rep.size();
    rep.push_back(a.trap);
  }

  ReducedWordDFA m;
  m.alphabet = a.alphabet;
  m.start = 0;
  m.trap = order[cls[a.trap]];
  m.delta.resize(rep.size());
  m.labels.resize(rep.size());
  m.accepting.resize(rep.size());
  for (std::size_t k = 0; k < rep.size(); ++k) {
    for (std::size_t t : a.delta[rep[k]]) m.delta[k].push_back(order[cls[t]]);
    m.accepting[k] = a.accepting[rep[k]];
  }
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t k = order[cls[s]];
    if (k == static_cast<std::size_t>(-1)) continue;
    if (!m.labels[k].empty()) m.labels[k] += " | ";
    m.labels[k] += a.labels[s];
  }
  return m;
}

std::string to_dot(const ReducedWordDFA& a) {
  std::ostringstream os;
  os << "digraph dfa {\n  rankdir=LR;\n  init [shape=point];\n";
  for (std::size_t s = 0; s < a.size(); ++s) {
    os << "  q" << s << " [label=\"" << a.labels[s] << "\", shape="
       << (a.accepting[s] ? "doublecircle" : "circle") << "];\n";
  }
  os << "  init -> q" << a.start << ";\n";
  for (std::size_t s = 0; s < a.size(); ++s) {
    // Group letters that share a target so the trap does not get n parallel edges.
    std::map<std::size_t, std::string> by_target;
    for (Letter x = 1; x <= a.alphabet; ++x) {
      std::string& lbl = by_target[a.delta[s][x - 1]];
      if (!lbl.empty()) lbl += ",";
      lbl += "s" + std::to_string(x);
    }
    for (const auto& [t, lbl] : by_target) {
      os << "  q" << s << " -> q" << t << " [label=\"" << lbl << "\"";
      if (t == a.trap) os << ", style=dashed";
      os << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

json to_json(const ReducedWordDFA& a) {
  json accepting = json::array();
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (a.accepting[s]) accepting.push_back(s);
  }
  return {{"states", a.labels},
          {"trap", a.trap},
          {"start", a.start},
          {"delta", a.delta},
          {"accepting", accepting}};
}

ReducedWordDFA from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("automaton JSON must be an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "states" && key != "trap" && key != "start" && key != "delta" &&
        key != "accepting") {
      throw ValidationError("unknown automaton field '" + key + "'");
    }
  }
  ReducedWordDFA a;
  try {
    a.labels = j.at("states").get<std::vector<std::string>>();
    a.trap = j.at("trap").get<std::size_t>();
    a.start = j.at("start").get<std::size_t>();
    a.delta = j.at("delta").get<std::vector<std::vector<std::size_t>>>();
    a.accepting.assign(a.labels.size(), false);
    for (std::size_t s : j.at("accepting").get<std::vector<std::size_t>>()) {
      if (s >= a.accepting.size()) throw ValidationError("accepting state out of range");
      a.accepting[s] = true;
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed automaton JSON: ") + e.what());
  }
  a.alphabet = a.delta.empty() ? 0 : static_cast<int>(a.delta.front().size());
  a.validate();
  return a;
}

}  // namespace kostant::automaton
