// Acceptance run: one PASS/FAIL line per primary criterion.

#include <chrono>
#include <cstdio>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "kostant/automaton.hpp"
#include "kostant/errors.hpp"
#include "kostant/game_engine.hpp"
#include "kostant/mukai_checker.hpp"
#include "kostant/syt_builder.hpp"
#include "kostant/weyl_oracle.hpp"

using namespace kostant;
using game::Configuration;
using game::GameSpec;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

int failures = 0;

void criterion(const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.ok && secs > limit_s) {
    std::ostringstream os;
    os << "took " << secs << " s, limit " << limit_s << " s";
    o.fail(os.str());
  }
  if (!o.ok) ++failures;
  std::printf("%s  %-28s %8.3f s  %s\n", o.ok ? "PASS" : "FAIL", name, secs, o.detail.c_str());
  std::fflush(stdout);
}

Configuration cfg(std::vector<long long> v) { return Configuration::from_ints(v); }

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

std::string where(const DynkinDiagram& d, const ActiveSet& a) {
  std::string s = d.label() + " I={";
  for (Vertex v : a.active()) s += (s.back() == '{' ? "" : ",") + std::to_string(v);
  return s + "}";
}

// |W_J| by closing {e} under right multiplication by J.
std::size_t parabolic_order(const weyl::WeylGroup& g, const std::set<Vertex>& J) {
  std::vector<bool> seen(g.size(), false);
  std::deque<std::size_t> queue{g.identity()};
  seen[g.identity()] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    const std::size_t w = queue.front();
    queue.pop_front();
    for (Vertex j : J) {
      const std::size_t x = g.mul(w, j, weyl::WeylGroup::Side::Right);
      if (!seen[x]) {
        seen[x] = true;
        ++count;
        queue.push_back(x);
      }
    }
  }
  return count;
}

// Cross-model audit of a configuration graph: every edge is replayed through
// the algebraic model, and at every node sadness must coincide with a
// negative pairing.
struct Audit {
  std::uint64_t steps = 0;
  std::uint64_t states = 0;
};

bool audit_graph(const GameSpec& g, const game::ConfigGraph& cg, Audit& audit, std::string& why) {
  const CartanMatrix a = cartan_matrix(g.diagram);
  const int n = g.diagram.rank();
  std::vector<int> source(n, 0);
  for (Vertex v = 1; v <= n; ++v) source[v - 1] = g.source(v);
  for (const Configuration& c : cg.nodes) {
    const game::AlgebraicState st{c.chips, source};
    for (Vertex v = 1; v <= n; ++v) {
      const bool sad = game::vertex_state(c, g, v) == game::VertexState::Sad;
      if (sad != (game::algebraic_pairing(st, a, v) < 0)) {
        why = "sadness and pairing disagree at " + game::to_string(c);
        return false;
      }
      ++audit.states;
    }
  }
  for (const auto& e : cg.edges) {
    const game::AlgebraicState st{cg.nodes[e.from].chips, source};
    if (game::algebraic_step(st, a, e.vertex).root_part != cg.nodes[e.to].chips) {
      why = "algebraic step disagrees with firing at " + game::to_string(cg.nodes[e.from]);
      return false;
    }
    ++audit.steps;
  }
  return true;
}

Audit cross_model;

bool has_path(const game::ConfigGraph& cg, const std::vector<Configuration>& chain) {
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const auto from = cg.find(chain[i]);
    const auto to = cg.find(chain[i + 1]);
    if (!from || !to) return false;
    bool linked = false;
    for (std::size_t e : cg.out[*from]) linked = linked || cg.edges[e].to == *to;
    if (!linked) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Outcome a2_worked_example() {
  Outcome o;
  const GameSpec g = GameSpec::modified(catalog_diagram_from_name("A2"), ActiveSet::all(2));
  game::play(g, game::Strategy::lowest());  // warm-up
  const auto t0 = std::chrono::steady_clock::now();
  game::CrossCheck cc;
  const game::PlayResult r = game::play(g, game::Strategy::lowest(), &cc);
  const double us = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
  const std::vector<Configuration> expected{cfg({0, 0}), cfg({1, 0}), cfg({1, 2}), cfg({2, 2})};
  if (r.configs != expected) o.fail("configurations differ");
  if (game::MoveSequence(r.moves.rbegin(), r.moves.rend()) != game::MoveSequence{1, 2, 1}) {
    o.fail("word is not s1 s2 s1");
  }
  if (us >= 1000) o.fail("game took " + std::to_string(us) + " us");
  cross_model.steps += cc.steps;
  if (o.ok) {
    std::ostringstream os;
    os << "(1,0) (1,2) (2,2), word s1 s2 s1, " << us << " us";
    o.detail = os.str();
  }
  return o;
}

Outcome reachable_count() {
  Outcome o;
  std::size_t cases = 0, nodes = 0;
  for (const DynkinDiagram& d : catalog_up_to_rank(4)) {
    const weyl::WeylGroup g = weyl::generate(d);
    for (const ActiveSet& a : nonempty_active_sets(d.rank())) {
      const GameSpec spec = GameSpec::modified(d, a);
      game::CrossCheck cc;
      const game::ConfigGraph cg = game::reachable_graph(spec, game::kDefaultNodeCap, &cc);
      const std::size_t expect = g.size() / parabolic_order(g, a.inactive());
      ++cases;
      nodes += cg.nodes.size();
      cross_model.steps += cc.steps;
      if (cg.nodes.size() != expect) {
        o.fail(where(d, a) + ": " + std::to_string(cg.nodes.size()) + " nodes, |W/W_J| = " +
               std::to_string(expect));
      }
      std::string why;
      if (!audit_graph(spec, cg, cross_model, why)) o.fail(where(d, a) + ": " + why);
    }
  }
  if (o.ok) o.detail = std::to_string(cases) + " (diagram, I) cases, " + std::to_string(nodes) + " nodes";
  return o;
}

Outcome bijection() {
  Outcome o;
  std::size_t cases = 0, enumerated = 0;
  BigInt paths = 0;
  for (const DynkinDiagram& d : catalog_up_to_rank(4)) {
    for (const ActiveSet& a : nonempty_active_sets(d.rank())) {
      const game::BijectionReport r = game::verify_bijection(GameSpec::modified(d, a));
      ++cases;
      paths += r.paths_checked;
      enumerated += r.paths_enumerated;
      cross_model.steps += r.cross_checks;
      if (!r.ok) o.fail(where(d, a) + ": " + r.counterexample);
    }
  }
  if (o.ok) {
    std::ostringstream os;
    os << cases << " cases, " << paths << " paths = reduced words, " << enumerated
       << " cases enumerated path by path";
    o.detail = os.str();
  }
  return o;
}

Outcome binomial() {
  Outcome o;
  std::size_t cases = 0;
  for (int n = 2; n <= 8; ++n) {
    const DynkinDiagram d = build_catalog_diagram('A', n - 1);
    for (Vertex k = 1; k < n; ++k) {
      const GameSpec spec = GameSpec::modified(d, ActiveSet(n - 1, {k}));
      const game::ConfigGraph cg = game::reachable_graph(spec);
      std::size_t binom = 1;
      for (int i = 1; i <= k; ++i) binom = binom * (n - k + i) / i;
      ++cases;
      if (cg.nodes.size() != binom) {
        o.fail("n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " +
               std::to_string(cg.nodes.size()) + " != " + std::to_string(binom));
      }
      std::string why;
      if (!audit_graph(spec, cg, cross_model, why)) o.fail(why);
    }
  }
  if (o.ok) o.detail = std::to_string(cases) + " (n, k) pairs, all C(n,k)";
  return o;
}

Outcome root_counting() {
  Outcome o;
  std::size_t cases = 0, steps = 0;
  for (const DynkinDiagram& d : catalog_up_to_rank(5)) {
    const CartanMatrix dual = cartan_matrix(d.dual());
    const std::vector<RootVector> coroots = positive_coroots(d);
    const std::vector<RootVector> dual_roots = positive_roots(d.dual());
    for (const ActiveSet& a : nonempty_active_sets(d.rank())) {
      const std::set<Vertex> J = a.inactive();
      const GameSpec spec = GameSpec::modified(d, a);
      game::CrossCheck cc;
      const game::PlayResult r = game::play(spec, game::Strategy::lowest(), &cc);
      cross_model.steps += cc.steps;
      ++cases;
      long long expected = 0;
      std::multiset<std::vector<int>> outside;
      for (const RootVector& c : coroots) {
        if (supported_on(c, J)) continue;
        expected += i_height(c, a);
        outside.insert(c.coeffs);
      }
      if (r.diverged || r.final.total() != expected) {
        o.fail(where(d, a) + ": total chips differ from the coroot height sum");
        continue;
      }
      // gamma_l = s_{i_1} ... s_{i_{l-1}} (alpha_{i_l}^vee), via the dual group's action.
      std::multiset<std::vector<int>> seen;
      for (std::size_t l = 0; l < r.moves.size(); ++l) {
        const weyl::Word prefix(r.moves.begin(), r.moves.begin() + static_cast<long>(l));
        const weyl::WeylElement w = weyl::element_of_word(dual, prefix, dual_roots);
        std::vector<int> e(d.rank(), 0);
        e[r.moves[l] - 1] = 1;
        const RootVector gamma{w.apply(e), true};
        seen.insert(gamma.coeffs);
        ++steps;
        if (r.increments[l] != i_height(gamma, a)) {
          o.fail(where(d, a) + ": increment at step " + std::to_string(l + 1) + " is not K_l");
        }
      }
      if (seen != outside) o.fail(where(d, a) + ": step coroots are not the coroots outside J");
      const game::RootCountReport rep = game::root_counting_check(d, a);
      if (!rep.equal || !rep.increments_match) o.fail(where(d, a) + ": engine report disagrees");
    }
  }
  if (o.ok) {
    o.detail = std::to_string(cases) + " cases, " + std::to_string(steps) +
               " increments matched, step coroots enumerate the coroots outside J";
  }
  return o;
}

Outcome classical_facts() {
  Outcome o;
  const DynkinDiagram d4 = catalog_diagram_from_name("D4");
  const GameSpec d4_spec = GameSpec::classical(d4, Configuration::basis(4, 1));
  std::vector<Configuration> basis;
  for (Vertex v = 1; v <= 4; ++v) basis.push_back(Configuration::basis(4, v));
  const game::ConfigGraph d4_all = game::reachable_graph_from(d4_spec, basis);
  const game::ConfigGraph d4_e1 = game::reachable_graph(d4_spec);
  // The figure's sixteen transitions between the twelve positive roots.
  const std::vector<std::pair<std::string, std::string>> figure = {
      {"1000", "1100"}, {"0100", "1100"}, {"0100", "0110"}, {"0010", "0110"},
      {"0100", "0101"}, {"0001", "0101"}, {"1100", "1110"}, {"0110", "1110"},
      {"1100", "1101"}, {"0101", "1101"}, {"0110", "0111"}, {"0101", "0111"},
      {"1110", "1111"}, {"1101", "1111"}, {"0111", "1111"}, {"1111", "1211"}};
  auto digits = [](const std::string& s) {
    std::vector<long long> v;
    for (char ch : s) v.push_back(ch - '0');
    return cfg(v);
  };
  if (d4_all.nodes.size() != 12) o.fail("D4: " + std::to_string(d4_all.nodes.size()) + " nodes");
  if (d4_all.sinks.size() != 1 || d4_all.nodes[d4_all.sinks[0]] != cfg({1, 2, 1, 1})) {
    o.fail("D4: sink is not unique (1,2,1,1)");
  }
  if (d4_all.edges.size() != figure.size()) o.fail("D4: edge count differs from the figure");
  for (const auto& [a, b] : figure) {
    if (!has_path(d4_all, {digits(a), digits(b)})) o.fail("D4: missing edge " + a + " -> " + b);
  }
  if (d4_e1.sinks.size() != 1 || d4_e1.nodes[d4_e1.sinks[0]] != cfg({1, 2, 1, 1})) {
    o.fail("D4 from e1: sink is not (1,2,1,1)");
  }
  std::string why;
  if (!audit_graph(d4_spec, d4_all, cross_model, why)) o.fail(why);

  const DynkinDiagram f4 = catalog_diagram_from_name("F4");
  const GameSpec f4_spec = GameSpec::classical(f4, Configuration::basis(4, 1));
  const game::ConfigGraph f4_all = game::reachable_graph_from(f4_spec, basis);
  std::set<Configuration> sinks;
  for (std::size_t s : f4_all.sinks) sinks.insert(f4_all.nodes[s]);
  if (sinks != std::set<Configuration>{cfg({2, 3, 4, 2}), cfg({1, 2, 3, 2})}) {
    o.fail("F4: terminal set differs");
  }
  const std::vector<Configuration> left{cfg({1, 0, 0, 0}), cfg({1, 1, 0, 0}), cfg({1, 1, 2, 0}),
                                        cfg({1, 1, 2, 2}), cfg({1, 2, 2, 2}), cfg({1, 2, 4, 2}),
                                        cfg({1, 3, 4, 2}), cfg({2, 3, 4, 2})};
  const std::vector<Configuration> right{cfg({0, 0, 0, 1}), cfg({0, 0, 1, 1}), cfg({0, 1, 1, 1}),
                                         cfg({0, 1, 2, 1}), cfg({1, 1, 2, 1}), cfg({1, 2, 2, 1}),
                                         cfg({1, 2, 3, 1}), cfg({1, 2, 3, 2})};
  if (!has_path(f4_all, left) || !has_path(f4_all, right)) o.fail("F4: figure chains not found");
  if (f4_all.nodes.size() != positive_roots(f4).size()) o.fail("F4: reachable set is not Phi+");
  if (!audit_graph(f4_spec, f4_all, cross_model, why)) o.fail(why);

  const DynkinDiagram aff = build_custom_diagram(5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}}, "D4~");
  const GameSpec aff_spec = GameSpec::classical(aff, cfg({1, 1, 1, 1, 1}), 1000);
  game::CrossCheck cc;
  const game::PlayResult r = game::play(aff_spec, game::Strategy::lowest(), &cc);
  cross_model.steps += cc.steps;
  if (!r.diverged || r.moves.size() != 1000) o.fail("D4~: not flagged divergent at 1000 steps");
  for (std::size_t i = 1; i < r.configs.size(); ++i) {
    if (r.configs[i].total() <= r.configs[i - 1].total()) o.fail("D4~: chip total did not grow");
  }

  if (o.ok) {
    std::ostringstream os;
    os << "D4 union of e_i starts: 12 nodes, 16 figure edges, sink 1211 (e1 alone: "
       << d4_e1.nodes.size() << "); F4 terminals {2342, 1232}; D4~ divergent at 1000";
    o.detail = os.str();
  }
  return o;
}

Outcome dfa_language() {
  Outcome o;
  std::size_t cases = 0, words = 0;
  for (const DynkinDiagram& d : catalog_up_to_rank(3)) {
    const weyl::WeylGroup g = weyl::generate(d);
    const std::vector<RootVector> roots = positive_roots(d);
    for (const ActiveSet& a : nonempty_active_sets(d.rank())) {
      const std::set<Vertex> J = a.inactive();
      const std::size_t top = roots.size() - weyl::parabolic_roots(roots, J).size();
      const automaton::ReducedWordDFA m = automaton::build_dfa(d, a);
      std::set<weyl::Word> got;
      for (const auto& [len, ws] : automaton::enumerate_language(m, top + 1)) {
        got.insert(ws.begin(), ws.end());
      }
      // Oracle: move-order reduced words of the elements of W with no right descent in J.
      std::set<weyl::Word> expected;
      for (std::size_t w = 0; w < g.size(); ++w) {
        bool minimal = true;
        for (Vertex j : J) {
          minimal = minimal && g.length(g.mul(w, j, weyl::WeylGroup::Side::Right)) > g.length(w);
        }
        if (!minimal) continue;
        for (const weyl::Word& word : weyl::reduced_words(g, w)) {
          expected.insert(weyl::Word(word.rbegin(), word.rend()));
        }
      }
      ++cases;
      words += got.size();
      if (got != expected) o.fail(where(d, a) + ": language differs from the oracle");
    }
  }
  const automaton::ReducedWordDFA a2 = automaton::build_dfa(catalog_diagram_from_name("A2"), ActiveSet(2, {2}));
  std::set<weyl::Word> lang;
  for (const auto& [len, ws] : automaton::enumerate_language(a2, 6)) lang.insert(ws.begin(), ws.end());
  if (lang != std::set<weyl::Word>{{}, {2}, {2, 1}}) o.fail("A2 J={s1}: language differs");
  // q0 = e, q1 = s2, q2 = s1 s2, q3 = trap.
  const std::vector<std::vector<std::size_t>> table{{3, 1}, {2, 3}, {3, 3}, {3, 3}};
  if (a2.delta != table || a2.start != 0 || a2.trap != 3) o.fail("A2 J={s1}: transition table differs");
  if (o.ok) {
    o.detail = std::to_string(cases) + " (diagram, J) cases, " + std::to_string(words) +
               " words; A2 J={s1} accepts {e, s2, s2 s1}, table matches";
  }
  return o;
}

Outcome syt_bijection() {
  Outcome o;
  std::size_t cases = 0, sequences = 0;
  for (int n = 2; n <= 6; ++n) {
    for (Vertex k = 1; k < n; ++k) {
      const syt::SytBijectionReport r = syt::verify_syt_bijection(n, k);
      ++cases;
      sequences += r.sequences;
      if (!r.ok) o.fail("n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " + r.counterexample);
    }
  }
  // The A3, k = 2 example: every complete play and its tableau.
  const GameSpec g = GameSpec::modified(catalog_diagram_from_name("A3"), ActiveSet(3, {2}));
  const game::ConfigGraph cg = game::reachable_graph(g);
  std::map<game::MoveSequence, std::vector<std::vector<int>>> plays;
  std::function<void(std::size_t, game::MoveSequence&)> dfs = [&](std::size_t node, game::MoveSequence& seq) {
    if (cg.out[node].empty()) {
      plays[seq] = syt::fill_tableau(seq, 4, 2).rows;
      return;
    }
    for (std::size_t e : cg.out[node]) {
      seq.push_back(cg.edges[e].vertex);
      dfs(cg.edges[e].to, seq);
      seq.pop_back();
    }
  };
  game::MoveSequence seq;
  dfs(cg.starts[0], seq);
  const std::map<game::MoveSequence, std::vector<std::vector<int>>> expected{
      {{2, 1, 3, 2}, {{1, 3}, {2, 4}}}, {{2, 3, 1, 2}, {{1, 2}, {3, 4}}}};
  if (plays != expected) o.fail("A3 k=2: plays or tableaux differ from the example");
  if (o.ok) {
    o.detail = std::to_string(cases) + " (n, k) pairs, " + std::to_string(sequences) +
               " sequences; A3 k=2 gives [[1,3],[2,4]] and [[1,2],[3,4]]";
  }
  return o;
}

Outcome mukai_sweep() {
  Outcome o;
  const mukai::SweepReport rep = mukai::sweep(6);
  if (rep.violations != 0) o.fail(std::to_string(rep.violations) + " violations");
  for (const mukai::SweepRow& row : rep.rows) {
    if (!row.holds) o.fail(row.diagram + " " + row.label + ": inequality fails");
  }
  std::size_t borel = 0;
  for (const DynkinDiagram& d : catalog_up_to_rank(6)) {
    const mukai::ParabolicDatum p = mukai::parabolic_datum(d, {});
    for (const auto& [beta, n] : p.n_beta) {
      if (n != 2) o.fail(d.label() + ": n_beta = " + std::to_string(n) + " at the Borel");
    }
    ++borel;
  }
  std::size_t cpm = 0;
  for (int m = 1; m <= 6; ++m) {
    const DynkinDiagram d = build_catalog_diagram('A', m);
    for (Vertex end : {1, m}) {
      std::set<Vertex> dp;
      for (Vertex v = 1; v <= m; ++v) {
        if (v != end) dp.insert(v);
      }
      const mukai::ParabolicDatum p = mukai::parabolic_datum(d, dp);
      const mukai::Inequality c = mukai::check_mukai_consequence(p);
      if (!c.equality || p.dimension != m || p.index_gcd != m + 1) {
        o.fail("A" + std::to_string(m) + " end vertex " + std::to_string(end) + ": no equality");
      }
      ++cpm;
    }
  }
  if (o.ok) {
    o.detail = std::to_string(rep.rows.size()) + " data, 0 violations, " +
               std::to_string(rep.equalities) + " equalities; n_beta = 2 on " +
               std::to_string(borel) + " Borel data; CP^m equality on " + std::to_string(cpm) +
               " end-vertex data";
  }
  return o;
}

Outcome cross_model_total() {
  Outcome o;
  if (cross_model.steps == 0) o.fail("no steps were cross-checked");
  std::ostringstream os;
  os << cross_model.steps << " steps and " << cross_model.states
     << " vertex states agreed between chips and the algebraic model";
  o.detail = os.str();
  return o;
}

}  // namespace

int main() {
  criterion("A2 worked example", 0.5, a2_worked_example);
  criterion("reachable count = |W/W_J|", 60, reachable_count);
  criterion("bijection", 300, bijection);
  criterion("type A binomial counts", 10, binomial);
  criterion("root counting", 60, root_counting);
  criterion("classical game facts", 60, classical_facts);
  criterion("DFA language", 30, dfa_language);
  criterion("SYT bijection", 120, syt_bijection);
  criterion("Mukai sweep", 120, mukai_sweep);
  // Any disagreement above throws ConsistencyError inside the engine and
  // would already have failed its criterion.
  criterion("cross-model", 1, cross_model_total);
  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
