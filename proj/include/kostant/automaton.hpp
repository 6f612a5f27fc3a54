#pragma once

// Deterministic automaton for the reduced words of W^J, read in move order.
// States are the reachable game configurations plus an explicit trap; a
// letter i leads to fire(c, i) when vertex i is sad and to the trap otherwise.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "kostant/bigint.hpp"
#include "kostant/game_engine.hpp"
#include "kostant/root_system.hpp"

namespace kostant::automaton {

using Letter = Vertex;
using Word = std::vector<Letter>;

struct ReducedWordDFA {
  int alphabet = 0;                 // letters are 1..alphabet
  std::vector<std::string> labels;  // chip vectors; "trap" for the trap
  std::size_t start = 0;
  std::size_t trap = 0;
  std::vector<std::vector<std::size_t>> delta;  // delta[state][letter - 1]
  std::vector<bool> accepting;

  std::size_t size() const noexcept { return delta.size(); }

  /// Throws ValidationError for letters outside 1..alphabet.
  std::size_t step(std::size_t state, Letter letter) const;

  /// Checks totality, trap absorption, accepting = non-trap and reachability.
  void validate() const;

  friend bool operator==(const ReducedWordDFA&, const ReducedWordDFA&) = default;
};

/// Graph nodes keep their BFS order; the trap is the last state.
ReducedWordDFA dfa_from_graph(const game::ConfigGraph& graph, int rank);

ReducedWordDFA build_dfa(const DynkinDiagram& d, const ActiveSet& active,
                         std::size_t node_cap = game::kDefaultNodeCap);

bool accepts(const ReducedWordDFA& a, const Word& word);

/// Accepted words grouped by length, up to max_len.
using WordLanguage = std::map<std::size_t, std::set<Word>>;
WordLanguage enumerate_language(const ReducedWordDFA& a, std::size_t max_len);

/// Number of accepted words of each length 0..max_len, without listing them.
std::vector<BigInt> count_words(const ReducedWordDFA& a, std::size_t max_len);

/// Moore partition refinement. States are renumbered in BFS order from the
/// start; merged states carry their labels joined by " | ".
ReducedWordDFA minimize(const ReducedWordDFA& a);

std::string to_dot(const ReducedWordDFA& a);
nlohmann::json to_json(const ReducedWordDFA& a);
ReducedWordDFA from_json(const nlohmann::json& j);

}  // namespace kostant::automaton
