#include "kostant/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "kostant/automaton.hpp"
#include "kostant/errors.hpp"
#include "kostant/game_engine.hpp"
#include "kostant/mukai_checker.hpp"
#include "kostant/session_service.hpp"
#include "kostant/syt_builder.hpp"
#include "kostant/weyl_oracle.hpp"

namespace kostant::cli {

using nlohmann::json;

namespace {

struct UsageError : Error {
  using Error::Error;
};

std::vector<long long> parse_list(const std::string& text, const std::string& flag) {
  std::vector<long long> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw UsageError(flag + ": '" + item + "' is not an integer");
    }
    out.push_back(v);
  }
  return out;
}

std::set<Vertex> parse_vertices(const std::string& text, const std::string& flag) {
  std::set<Vertex> out;
  for (long long v : parse_list(text, flag)) out.insert(static_cast<Vertex>(v));
  return out;
}

std::string word_text(const game::MoveSequence& w) {
  if (w.empty()) return "e";
  std::string s;
  for (Vertex v : w) s += (s.empty() ? "s" : " s") + std::to_string(v);
  return s;
}

// Flags shared by every subcommand that needs a game.
struct GameFlags {
  std::string type;
  std::string diagram_file;
  std::optional<std::string> active;
  std::optional<std::string> inactive;
  std::optional<std::string> initial;
  std::size_t step_cap = 10'000;

  void add_diagram(CLI::App* app) {
    app->add_option("--type", type, "catalog diagram, e.g. A3, F4");
    app->add_option("--diagram-file", diagram_file, "diagram JSON file");
  }
  void add_active(CLI::App* app) {
    app->add_option("--active", active, "active vertices I, e.g. 1,3");
    app->add_option("--inactive", inactive, "inactive vertices J, e.g. 2");
  }
  void add_initial(CLI::App* app) {
    app->add_option("--initial", initial, "classical game start, e.g. 1,0,0,0");
    app->add_option("--step-cap", step_cap, "move cap for divergent games");
  }

  DynkinDiagram diagram() const {
    if (type.empty() == diagram_file.empty()) {
      throw UsageError("give exactly one of --type and --diagram-file");
    }
    if (!type.empty()) return catalog_diagram_from_name(type);
    std::ifstream in(diagram_file);
    if (!in) throw UsageError("cannot read " + diagram_file);
    try {
      return diagram_from_json(json::parse(in));
    } catch (const json::exception& e) {
      throw UsageError(diagram_file + ": " + e.what());
    }
  }

  ActiveSet active_set(const DynkinDiagram& d) const {
    if (active && inactive) throw UsageError("--active and --inactive are mutually exclusive");
    if (active) return ActiveSet(d.rank(), parse_vertices(*active, "--active"));
    if (inactive) return ActiveSet::from_inactive(d.rank(), parse_vertices(*inactive, "--inactive"));
    return ActiveSet::all(d.rank());
  }

  game::GameSpec spec() const {
    const DynkinDiagram d = diagram();
    game::GameSpec g;
    if (initial) {
      if (active || inactive) throw UsageError("classical games (--initial) take no active set");
      g = game::GameSpec::classical(d, game::Configuration::from_ints(parse_list(*initial, "--initial")),
                                    step_cap);
    } else {
      g = game::GameSpec::modified(d, active_set(d), step_cap);
    }
    g.validate();
    return g;
  }
};

std::vector<ActiveSet> nonempty_active_sets(int n) {
  std::vector<ActiveSet> out;
  for (unsigned m = 1; m < (1u << n); ++m) {
    std::set<Vertex> s;
    for (Vertex v = 1; v <= n; ++v) {
      if (m & (1u << (v - 1))) s.insert(v);
    }
    out.emplace_back(n, s);
  }
  return out;
}

std::string set_text(const std::set<Vertex>& s) {
  std::string out = "{";
  for (Vertex v : s) out += (out.size() > 1 ? "," : "") + std::to_string(v);
  return out + "}";
}

// ---------------------------------------------------------------------------
// verify sweeps

struct SweepOutcome {
  bool ok = true;
  std::string counterexample;
};

SweepOutcome verify_bijection_sweep(int max_rank, std::ostream& out) {
  std::size_t diagrams = 0, cases = 0, nodes = 0;
  BigInt paths = 0;
  std::uint64_t cross = 0;
  for (const DynkinDiagram& d : catalog_up_to_rank(max_rank)) {
    ++diagrams;
    for (const ActiveSet& a : nonempty_active_sets(d.rank())) {
      const game::BijectionReport r = game::verify_bijection(game::GameSpec::modified(d, a));
      ++cases;
      nodes += r.nodes;
      paths += r.paths_checked;
      cross += r.cross_checks;
      if (!r.ok) {
        return {false, d.label() + " I=" + set_text(a.active()) + ": " + r.counterexample};
      }
    }
  }
  out << "bijection: " << diagrams << " diagrams, " << cases << " active sets, " << nodes
      << " configurations, " << paths << " paths, " << cross << " cross-checked steps\n";
  return {};
}

SweepOutcome verify_root_counting_sweep(int max_rank, std::ostream& out) {
  std::size_t diagrams = 0, cases = 0, moves = 0;
  std::uint64_t cross = 0;
  for (const DynkinDiagram& d : catalog_up_to_rank(max_rank)) {
    ++diagrams;
    for (const ActiveSet& a : nonempty_active_sets(d.rank())) {
      const game::RootCountReport r = game::root_counting_check(d, a);
      ++cases;
      moves += r.moves;
      cross += r.cross_checks;
      if (!r.equal || !r.increments_match) {
        std::ostringstream os;
        os << d.label() << " I=" << set_text(a.active()) << ": total chips " << r.total_chips
           << ", coroot height sum " << r.coroot_height_sum
           << (r.increments_match ? "" : ", per-step increments differ");
        return {false, os.str()};
      }
    }
  }
  out << "root-counting: " << diagrams << " diagrams, " << cases << " active sets, " << moves
      << " moves, " << cross << " cross-checked steps\n";
  return {};
}

SweepOutcome verify_dfa_language_sweep(int max_rank, std::ostream& out) {
  std::size_t diagrams = 0, cases = 0, listed = 0;
  BigInt words = 0;
  for (const DynkinDiagram& d : catalog_up_to_rank(max_rank)) {
    ++diagrams;
    const weyl::WeylGroup g = weyl::generate(d);
    const auto counts = weyl::reduced_word_counts(g);
    for (const ActiveSet& a : nonempty_active_sets(d.rank())) {
      const std::set<Vertex> J = a.inactive();
      const automaton::ReducedWordDFA dfa = automaton::build_dfa(d, a);
      const weyl::CosetSystem cs = weyl::minimal_coset_reps(g, J);
      const std::size_t top = static_cast<std::size_t>(g.length(cs.longest));
      BigInt oracle_total = 0;
      for (std::size_t w : cs.reps) oracle_total += counts[w];
      BigInt total = 0;
      const auto by_len = automaton::count_words(dfa, top + 1);
      for (const BigInt& c : by_len) total += c;
      ++cases;
      const std::string where = d.label() + " J=" + set_text(J);
      if (total != oracle_total || by_len[top + 1] != 0) {
        std::ostringstream os;
        os << where << ": automaton has " << total << " words up to length " << top + 1
           << ", oracle has " << oracle_total;
        return {false, os.str()};
      }
      words += total;
      if (oracle_total <= 200'000) {
        std::set<weyl::Word> expected;
        for (std::size_t w : cs.reps) {
          for (const weyl::Word& m : weyl::move_sequences(g, w)) expected.insert(m);
        }
        std::set<weyl::Word> got;
        for (const auto& [len, ws] : automaton::enumerate_language(dfa, top)) {
          got.insert(ws.begin(), ws.end());
        }
        if (got != expected) return {false, where + ": word lists differ"};
        listed += got.size();
      }
    }
  }
  out << "dfa-language: " << diagrams << " diagrams, " << cases << " inactive sets, " << words
      << " words counted, " << listed << " compared one by one\n";
  return {};
}

SweepOutcome verify_syt_sweep(int max_rank, std::ostream& out) {
  std::size_t cases = 0, elements = 0, sequences = 0;
  for (int n = 2; n <= max_rank + 1; ++n) {
    for (Vertex k = 1; k < n; ++k) {
      const syt::SytBijectionReport r = syt::verify_syt_bijection(n, k);
      ++cases;
      elements += r.elements;
      sequences += r.sequences;
      if (!r.ok) {
        return {false, "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " +
                           r.counterexample};
      }
    }
  }
  out << "syt-bijection: " << cases << " (n, k) pairs, " << elements
      << " Grassmannian permutations, " << sequences << " sequences\n";
  return {};
}

// ---------------------------------------------------------------------------

void print_play_text(const game::GameSpec& g, const game::PlayResult& r, std::ostream& out) {
  out << "start " << game::to_string(r.configs.front()) << "\n";
  for (std::size_t i = 0; i < r.moves.size(); ++i) {
    out << std::setw(4) << i + 1 << "  fire " << r.moves[i] << "  "
        << game::to_string(r.configs[i + 1]) << "\n";
  }
  if (r.diverged) {
    out << "diverged: no terminal configuration within " << g.step_cap << " moves\n";
    return;
  }
  out << "terminal " << game::to_string(r.final) << " after " << r.moves.size() << " moves\n";
  out << "word " << word_text(game::MoveSequence(r.moves.rbegin(), r.moves.rend())) << "\n";
}

std::vector<std::vector<int>> grassmannian_lines(int n, Vertex k) {
  // Increasing on positions 1..k and k+1..n: pick the first block's values.
  std::vector<std::vector<int>> out;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + k, true);
  do {
    std::vector<int> line;
    for (int v = 1; v <= n; ++v) {
      if (pick[v - 1]) line.push_back(v);
    }
    for (int v = 1; v <= n; ++v) {
      if (!pick[v - 1]) line.push_back(v);
    }
    out.push_back(line);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

syt::StandardTableau parse_tableau(const std::string& text) {
  // Rows separated by '/', entries by ','.
  syt::StandardTableau t;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, '/')) {
    std::vector<int> r;
    for (long long v : parse_list(row, "--tableau")) r.push_back(static_cast<int>(v));
    t.rows.push_back(r);
  }
  return t;
}

std::string parts_text(const std::vector<int>& parts) {
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
  return s + ")";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out_default, std::ostream& err) {
  CLI::App app{"Kostant chip-firing games on Dynkin diagrams", "kostant"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "write output to this file instead of stdout");

  GameFlags gf;

  CLI::App* roots = app.add_subcommand("roots", "list positive roots or coroots");
  bool coroots = false;
  std::string roots_format = "text";
  gf.add_diagram(roots);
  roots->add_flag("--coroots", coroots, "list coroots instead of roots");
  roots->add_option("--format", roots_format)->check(CLI::IsMember({"text", "json"}));

  CLI::App* play = app.add_subcommand("play", "play one game");
  std::string strategy = "lowest";
  std::uint64_t seed = 0;
  std::string play_format = "text";
  bool cross_check = false;
  gf.add_diagram(play);
  gf.add_active(play);
  gf.add_initial(play);
  play->add_option("--strategy", strategy)->check(CLI::IsMember({"lowest", "highest", "random"}));
  play->add_option("--seed", seed, "seed for --strategy random");
  play->add_option("--format", play_format)->check(CLI::IsMember({"text", "json"}));
  play->add_flag("--cross-check", cross_check, "replay every step in the algebraic model");

  CLI::App* graph = app.add_subcommand("graph", "reachable configuration graph");
  std::string graph_emit = "dot";
  bool all_basis = false;
  std::size_t node_cap = game::kDefaultNodeCap;
  gf.add_diagram(graph);
  gf.add_active(graph);
  gf.add_initial(graph);
  graph->add_option("--emit", graph_emit)->check(CLI::IsMember({"dot", "json", "summary"}));
  graph->add_flag("--all-basis", all_basis, "classical: union over every start e_i");
  graph->add_option("--node-cap", node_cap);

  CLI::App* dfa = app.add_subcommand("dfa", "reduced-word automaton of W^J");
  std::string dfa_emit = "table";
  bool minimize_dfa = false;
  std::optional<std::size_t> max_len;
  gf.add_diagram(dfa);
  gf.add_active(dfa);
  dfa->add_option("--emit", dfa_emit)->check(CLI::IsMember({"dot", "json", "table", "words", "counts"}));
  dfa->add_flag("--minimize", minimize_dfa);
  dfa->add_option("--max-len", max_len, "word length bound for words/counts");

  CLI::App* sytc = app.add_subcommand("syt", "sequences and standard tableaux in type A");
  int syt_n = 0;
  Vertex syt_k = 0;
  std::optional<std::string> syt_sequence, syt_tableau;
  bool syt_counts = false;
  sytc->add_option("--n", syt_n, "permutations of 1..n (diagram A_{n-1})")->required();
  sytc->add_option("--k", syt_k, "source vertex")->required();
  sytc->add_option("--sequence", syt_sequence, "move sequence, e.g. 2,1,3,2");
  sytc->add_option("--tableau", syt_tableau, "rows separated by '/', e.g. 1,3/2,4");
  sytc->add_flag("--counts", syt_counts, "per-shape tableau counts");

  CLI::App* mukai_cmd = app.add_subcommand("mukai", "parabolic data and Mukai inequalities");
  std::optional<std::string> delta_p;
  bool mukai_sweep = false;
  int mukai_max_rank = 6;
  gf.add_diagram(mukai_cmd);
  mukai_cmd->add_option("--delta-p", delta_p, "vertices of Delta_P, e.g. 1,3 (empty for the Borel)");
  mukai_cmd->add_flag("--sweep", mukai_sweep, "all catalog data as CSV");
  mukai_cmd->add_option("--max-rank", mukai_max_rank);

  CLI::App* verify = app.add_subcommand("verify", "exhaustive verification sweeps");
  std::string what;
  std::optional<int> verify_rank;
  verify->add_option("what", what)
      ->required()
      ->check(CLI::IsMember({"bijection", "root-counting", "dfa-language", "syt-bijection"}));
  verify->add_option("--max-rank", verify_rank);

  CLI::App* serve = app.add_subcommand("serve", "HTTP session service");
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir, log_path, replay_path;
  int idle_seconds = 3600;
  serve->add_option("--host", host);
  serve->add_option("--port", port)->check(CLI::Range(0, 65535));
  serve->add_option("--static-dir", static_dir, "serve the web UI bundle from here");
  serve->add_option("--log", log_path, "append-only JSON-lines session log");
  serve->add_option("--replay", replay_path, "rebuild sessions from a log first");
  serve->add_option("--idle-timeout", idle_seconds)->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out_default, err);
    return code == 0 ? 0 : 2;
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      err << "error: cannot write " << out_path << "\n";
      return 2;
    }
  }
  std::ostream& out = out_path.empty() ? out_default : file;

  // Flags are interpreted here; failures are usage errors.
  auto usage = [&](auto&& fn) {
    try {
      return fn();
    } catch (const UsageError&) {
      throw;
    } catch (const ValidationError& e) {
      throw UsageError(e.what());
    } catch (const ClassificationError& e) {
      throw UsageError(e.what());
    } catch (const DegenerateDatumError& e) {
      throw UsageError(e.what());
    }
  };

  try {
    if (*roots) {
      const DynkinDiagram d = usage([&] { return gf.diagram(); });
      const auto list = coroots ? positive_coroots(d) : positive_roots(d);
      if (roots_format == "json") {
        json arr = json::array();
        for (const RootVector& r : list) arr.push_back(json{{"coefficients", r.coeffs}, {"height", r.height()}});
        out << json{{"diagram", d.label()}, {coroots ? "coroots" : "roots", arr}}.dump(2) << "\n";
      } else {
        out << d.label() << ": " << list.size() << (coroots ? " positive coroots" : " positive roots")
            << "\n";
        for (const RootVector& r : list) out << to_string(r) << "  height " << r.height() << "\n";
      }
    } else if (*play) {
      const game::GameSpec g = usage([&] { return gf.spec(); });
      game::CrossCheck cc;
      const game::PlayResult r =
          game::play(g, game::Strategy::from_name(strategy, seed), cross_check ? &cc : nullptr);
      if (play_format == "json") {
        json j = game::trace_to_json(g, r);
        if (cross_check) j["cross_checked_steps"] = cc.steps;
        out << j.dump(2) << "\n";
      } else {
        print_play_text(g, r, out);
        if (cross_check) out << "cross-checked " << cc.steps << " steps\n";
      }
      return r.diverged ? 1 : 0;
    } else if (*graph) {
      const game::GameSpec g = usage([&] {
        if (all_basis && !gf.initial) {
          // The union over basis starts needs a classical spec; e_1 stands in.
          GameFlags copy = gf;
          const DynkinDiagram d = gf.diagram();
          std::string init = "1";
          for (int i = 1; i < d.rank(); ++i) init += ",0";
          copy.initial = init;
          return copy.spec();
        }
        if (all_basis) throw UsageError("--all-basis replaces --initial");
        return gf.spec();
      });
      game::ConfigGraph cg;
      if (all_basis) {
        std::vector<game::Configuration> starts;
        for (Vertex v = 1; v <= g.diagram.rank(); ++v) {
          starts.push_back(game::Configuration::basis(g.diagram.rank(), v));
        }
        cg = game::reachable_graph_from(g, starts, node_cap);
      } else {
        cg = game::reachable_graph(g, node_cap);
      }
      if (graph_emit == "dot") {
        out << game::graph_to_dot(cg);
      } else if (graph_emit == "json") {
        out << game::graph_to_json(cg).dump(2) << "\n";
      } else {
        out << cg.nodes.size() << " configurations, " << cg.edges.size() << " edges, "
            << cg.sinks.size() << " sinks:";
        for (std::size_t s : cg.sinks) out << " " << game::to_string(cg.nodes[s]);
        out << "\n";
      }
    } else if (*dfa) {
      const auto [d, a] = usage([&] {
        const DynkinDiagram d = gf.diagram();
        if (!d.is_dynkin()) throw UsageError("dfa needs a finite Dynkin diagram");
        return std::pair{d, gf.active_set(d)};
      });
      automaton::ReducedWordDFA m = automaton::build_dfa(d, a);
      if (minimize_dfa) m = automaton::minimize(m);
      const std::size_t bound =
          max_len ? *max_len
                  : positive_roots(d).size() - weyl::parabolic_roots(positive_roots(d), a.inactive()).size();
      if (dfa_emit == "dot") {
        out << automaton::to_dot(m);
      } else if (dfa_emit == "json") {
        out << automaton::to_json(m).dump(2) << "\n";
      } else if (dfa_emit == "words") {
        for (const auto& [len, ws] : automaton::enumerate_language(m, bound)) {
          for (const weyl::Word& w : ws) out << (w.empty() ? "e" : word_text(w)) << "\n";
        }
      } else if (dfa_emit == "counts") {
        const auto counts = automaton::count_words(m, bound);
        for (std::size_t len = 0; len < counts.size(); ++len) out << len << " " << counts[len] << "\n";
      } else {
        out << m.size() << " states, start q" << m.start << ", trap q" << m.trap << "\n";
        for (std::size_t s = 0; s < m.size(); ++s) {
          out << "q" << s << (m.accepting[s] ? "*" : " ") << " " << m.labels[s] << ":";
          for (automaton::Letter x = 1; x <= m.alphabet; ++x) out << "  s" << x << "->q" << m.delta[s][x - 1];
          out << "\n";
        }
      }
    } else if (*sytc) {
      usage([&] {
        if (syt_n < 2) throw UsageError("--n must be at least 2");
        if (syt_k < 1 || syt_k >= syt_n) throw UsageError("--k must lie in 1..n-1");
        if (static_cast<int>(bool(syt_sequence)) + bool(syt_tableau) + syt_counts != 1) {
          throw UsageError("give exactly one of --sequence, --tableau, --counts");
        }
        return 0;
      });
      if (syt_sequence) {
        game::MoveSequence seq;
        for (long long v : usage([&] { return parse_list(*syt_sequence, "--sequence"); })) {
          seq.push_back(static_cast<Vertex>(v));
        }
        const syt::StandardTableau t = syt::fill_tableau(seq, syt_n, syt_k);
        out << syt::render(t);
        out << "shape " << parts_text(t.shape().parts) << "\n";
      } else if (syt_tableau) {
        const syt::StandardTableau t = usage([&] { return parse_tableau(*syt_tableau); });
        out << word_text(syt::sequence_of_tableau(t, syt_n, syt_k)) << "\n";
      } else {
        BigInt total = 0;
        for (const auto& line : grassmannian_lines(syt_n, syt_k)) {
          const syt::YoungShape s = syt::shape_of(syt::make_grassmannian(line, syt_k));
          const BigInt c = syt::count_syt(s);
          total += c;
          out << "shape " << parts_text(s.parts) << "  length " << s.size() << "  tableaux " << c
              << "\n";
        }
        out << "total " << total << "\n";
      }
    } else if (*mukai_cmd) {
      if (mukai_sweep) {
        if (!gf.type.empty() || !gf.diagram_file.empty() || delta_p) {
          throw UsageError("--sweep takes no diagram or --delta-p");
        }
        const mukai::SweepReport r = mukai::sweep(mukai_max_rank);
        out << mukai::to_csv(r);
        err << r.rows.size() << " data, " << r.violations << " violations, " << r.equalities
            << " equalities\n";
        return r.violations == 0 ? 0 : 1;
      }
      const auto [d, dp] = usage([&] {
        if (!delta_p) throw UsageError("give --delta-p or --sweep");
        return std::pair{gf.diagram(), parse_vertices(*delta_p, "--delta-p")};
      });
      const mukai::ParabolicDatum p = usage([&] { return mukai::parabolic_datum(d, dp); });
      const mukai::Inequality strong = mukai::check_strong_inequality(p);
      const mukai::Inequality cons = mukai::check_mukai_consequence(p);
      out << d.label() << " Delta_P=" << set_text(p.delta_p) << "\n";
      out << "picard " << p.picard << "  dimension " << p.dimension << "  index " << p.index_gcd
          << "\n";
      for (const auto& [beta, n] : p.n_beta) out << "n_" << beta << " = " << n << "\n";
      out << "strong: " << strong.lhs << " <= " << strong.rhs << (strong.holds ? "  holds" : "  FAILS")
          << (strong.equality ? " (equality)" : "") << "\n";
      out << "mukai:  " << cons.lhs << " <= " << cons.rhs << (cons.holds ? "  holds" : "  FAILS")
          << (cons.equality ? " (equality)" : "") << "\n";
      bool strings_ok = true;
      for (const mukai::StringIdentity& s : mukai::check_string_identity(p)) {
        out << "string beta=" << s.beta << ": n_beta - 1 = " << s.n_beta - 1 << ", chain "
            << s.chain_height << (s.holds ? "" : "  MISMATCH") << "\n";
        strings_ok = strings_ok && s.holds;
      }
      return strong.holds && cons.holds && strings_ok ? 0 : 1;
    } else if (*verify) {
      SweepOutcome r;
      if (what == "bijection") {
        r = verify_bijection_sweep(verify_rank.value_or(4), out);
      } else if (what == "root-counting") {
        r = verify_root_counting_sweep(verify_rank.value_or(5), out);
      } else if (what == "dfa-language") {
        r = verify_dfa_language_sweep(verify_rank.value_or(3), out);
      } else {
        r = verify_syt_sweep(verify_rank.value_or(5), out);
      }
      if (!r.ok) {
        err << "counterexample: " << r.counterexample << "\n";
        return 1;
      }
      out << "all checks passed\n";
    } else if (*serve) {
      session::ManagerOptions opts;
      opts.idle_timeout = std::chrono::seconds(idle_seconds);
      opts.log_path = log_path;
      session::SessionManager manager(opts);
      if (!replay_path.empty()) {
        out << "replayed " << manager.replay_log(replay_path) << " events\n";
      }
      session::HttpServer server(manager, static_dir);
      out << "listening on http://" << host << ":" << port << "/v1\n" << std::flush;
      if (!server.listen(host, port)) {
        err << "error: cannot listen on " << host << ":" << port << "\n";
        return 1;
      }
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace kostant::cli
