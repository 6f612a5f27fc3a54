#pragma once

// Classical and modified Kostant games.
//
// A vertex v is sad when 2*c_v < sum_u arrows(u, v) * c_u + [v in I]; firing a
// sad vertex replaces c_v by sum_u arrows(u, v) * c_u + [v in I] - c_v. The
// classical game has I empty and an explicit start; the modified game starts
// at zero with a nonempty I.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "kostant/bigint.hpp"
#include "kostant/root_system.hpp"
#include "kostant/weyl_oracle.hpp"

namespace kostant::game {

using Chip = BigInt;
using MoveSequence = std::vector<Vertex>;

struct Configuration {
  std::vector<Chip> chips;

  static Configuration zero(int rank) { return {std::vector<Chip>(rank, 0)}; }
  static Configuration basis(int rank, Vertex v);
  static Configuration from_ints(const std::vector<long long>& values);

  int rank() const noexcept { return static_cast<int>(chips.size()); }
  const Chip& at(Vertex v) const { return chips.at(v - 1); }
  Chip total() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration& a, const Configuration& b) {
    return a.chips <=> b.chips;
  }
};

struct ConfigurationHash {
  std::size_t operator()(const Configuration& c) const noexcept;
};

std::string to_string(const Configuration& c);

enum class Mode { Classical, Modified };

struct GameSpec {
  DynkinDiagram diagram;
  Mode mode = Mode::Modified;
  ActiveSet active;       // modified mode only
  Configuration initial;  // classical mode only
  std::size_t step_cap = 10'000;

  static GameSpec modified(DynkinDiagram d, ActiveSet active, std::size_t step_cap = 10'000);
  static GameSpec classical(DynkinDiagram d, Configuration initial, std::size_t step_cap = 10'000);

  /// Zero for the modified game, `initial` for the classical game.
  Configuration start() const;

  /// Throws ValidationError when the mode invariants do not hold.
  void validate() const;

  /// 1 on active vertices in modified mode, 0 otherwise.
  int source(Vertex v) const;
};

enum class VertexState { Sad, Happy, Excited };

std::string to_string(VertexState s);

VertexState vertex_state(const Configuration& c, const GameSpec& g, Vertex v);
std::vector<Vertex> sad_vertices(const Configuration& c, const GameSpec& g);

/// Throws IllegalMoveError when v is not sad.
Configuration fire(const Configuration& c, const GameSpec& g, Vertex v);

/// Chips gained by firing v: -<c + beta, alpha_v^vee>. Positive exactly when v is sad.
Chip firing_gain(const Configuration& c, const GameSpec& g, Vertex v);

/// Move-selection policy. The engine never breaks ties itself.
class Strategy {
 public:
  using Callback = std::function<Vertex(const Configuration&, const std::vector<Vertex>& sad)>;

  static Strategy lowest();
  static Strategy highest();
  static Strategy random(std::uint64_t seed);
  static Strategy interactive(Callback cb);

  /// Parses "lowest", "highest" or "random"; the seed applies to "random".
  static Strategy from_name(const std::string& name, std::uint64_t seed = 0);

  Vertex choose(const Configuration& c, const std::vector<Vertex>& sad);

 private:
  enum class Kind { Lowest, Highest, Random, Interactive };
  Kind kind_ = Kind::Lowest;
  std::mt19937_64 rng_;
  Callback callback_;
};

/// Counts the algebraic-model checks performed when cross-checking is enabled.
struct CrossCheck {
  std::uint64_t steps = 0;
};

struct PlayResult {
  bool diverged = false;
  Configuration final;
  MoveSequence moves;
  std::vector<Configuration> configs;  // start plus one entry per move
  std::vector<Chip> increments;        // chips gained at each move
};

/// Fires until no vertex is sad or step_cap moves have been made. When
/// `cross` is non-null every step is replayed through algebraic_step and any
/// disagreement throws ConsistencyError.
PlayResult play(const GameSpec& g, Strategy strategy, CrossCheck* cross = nullptr);

/// Replays a move sequence; throws IllegalMoveError naming the first bad step.
PlayResult replay(const GameSpec& g, const MoveSequence& moves, CrossCheck* cross = nullptr);

struct ConfigGraph {
  struct Edge {
    std::size_t from;
    Vertex vertex;
    std::size_t to;
  };
  std::vector<Configuration> nodes;
  std::vector<Edge> edges;
  std::vector<std::size_t> starts;
  std::vector<std::size_t> sinks;
  /// out[node] lists indices into `edges`, in vertex order.
  std::vector<std::vector<std::size_t>> out;
  /// Node indices sorted by configuration, for find().
  std::vector<std::size_t> by_config;

  std::optional<std::size_t> find(const Configuration& c) const;
};

inline constexpr std::size_t kDefaultNodeCap = 1'000'000;

/// BFS over configurations reachable from the spec's start.
ConfigGraph reachable_graph(const GameSpec& g, std::size_t node_cap = kDefaultNodeCap,
                            CrossCheck* cross = nullptr);

/// Classical-mode BFS from several starting configurations at once.
ConfigGraph reachable_graph_from(const GameSpec& g, const std::vector<Configuration>& starts,
                                 std::size_t node_cap = kDefaultNodeCap,
                                 CrossCheck* cross = nullptr);

/// Extended-space state v = c + beta: root part over simple roots, source part
/// over the beta_p (indicator of I, never changes).
struct AlgebraicState {
  std::vector<Chip> root_part;
  std::vector<int> source_part;

  friend bool operator==(const AlgebraicState&, const AlgebraicState&) = default;
};

AlgebraicState algebraic_start(const GameSpec& g);

/// <v, alpha_i^vee> = sum_j root_j a(j, i) - source_i.
Chip algebraic_pairing(const AlgebraicState& st, const CartanMatrix& a, Vertex i);

/// Extended reflection s_v; throws IllegalMoveError unless the pairing is negative.
AlgebraicState algebraic_step(const AlgebraicState& st, const CartanMatrix& a, Vertex v);

/// s_{i_m} ... s_{i_1}. In modified mode on a Dynkin diagram the result is
/// asserted reduced and in W^J (ConsistencyError otherwise).
weyl::WeylElement word_of(const GameSpec& g, const MoveSequence& seq);

/// c = w(beta) - beta via algebraic steps along reduced words of w read
/// right-to-left; up to `word_cap` reduced words are tried and must agree.
Configuration config_of_element(const weyl::WeylGroup& group, std::size_t w,
                                const ActiveSet& active, std::size_t word_cap = 8);

struct BijectionReport {
  bool ok = true;
  std::size_t nodes = 0;
  std::size_t coset_size = 0;
  BigInt paths_checked = 0;
  bool paths_enumerated = false;  // false: local descent check used instead
  std::uint64_t cross_checks = 0;
  std::string counterexample;
};

struct BijectionOptions {
  std::size_t oracle_cap = weyl::kDefaultOracleCap;
  std::size_t node_cap = kDefaultNodeCap;
  /// Paths are enumerated one by one when their total count is at most this.
  std::uint64_t path_enumeration_cap = 50'000'000;
};

/// Checks node count, config <-> element bijectivity, and path sets against
/// reduced words. Mismatches are reported, not thrown.
BijectionReport verify_bijection(const GameSpec& g, const BijectionOptions& opts = {});

struct RootCountReport {
  Chip total_chips = 0;
  long long coroot_height_sum = 0;
  bool equal = false;
  bool increments_match = true;
  std::size_t moves = 0;
  std::uint64_t cross_checks = 0;
  Configuration final;
};

RootCountReport root_counting_check(const DynkinDiagram& d, const ActiveSet& active);

// ---------------------------------------------------------------------------
// Serialization

nlohmann::json chip_to_json(const Chip& c);
Chip chip_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const Configuration& c);
Configuration config_from_json(const nlohmann::json& j);

/// {"diagram": ..., "mode": "classical"|"modified", "active": [..], "initial": [..], "step_cap": n}
nlohmann::json spec_to_json(const GameSpec& g);

/// Accepts either "type": "A3" or "diagram": {...}. Unknown fields are rejected.
GameSpec spec_from_json(const nlohmann::json& j);

/// {"spec", "moves", "configs", "final", "word", "diverged"}; "word" is the
/// written-order reduced expression, i.e. the moves reversed.
nlohmann::json trace_to_json(const GameSpec& g, const PlayResult& r);

std::string graph_to_dot(const ConfigGraph& graph);
nlohmann::json graph_to_json(const ConfigGraph& graph);

}  // namespace kostant::game
