#include "kostant/syt_builder.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "kostant/errors.hpp"

namespace kostant::syt {

using nlohmann::json;

int YoungShape::size() const { return std::accumulate(parts.begin(), parts.end(), 0); }

bool YoungShape::fits(int rows, int cols) const {
  return static_cast<int>(parts.size()) <= rows && (parts.empty() || parts.front() <= cols);
}

void YoungShape::validate() const {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] <= 0) throw ValidationError("shape parts must be positive");
    if (i > 0 && parts[i] > parts[i - 1]) throw ValidationError("shape parts must not increase");
  }
}

YoungShape StandardTableau::shape() const {
  YoungShape s;
  for (const auto& r : rows) s.parts.push_back(static_cast<int>(r.size()));
  return s;
}

bool StandardTableau::is_standard() const {
  const YoungShape s = shape();
  try {
    s.validate();
  } catch (const ValidationError&) {
    return false;
  }
  std::vector<bool> seen(static_cast<std::size_t>(s.size()) + 1, false);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      const int x = rows[r][c];
      if (x < 1 || x > s.size() || seen[x]) return false;
      seen[x] = true;
      if (c > 0 && rows[r][c - 1] >= x) return false;
      if (r > 0 && rows[r - 1][c] >= x) return false;
    }
  }
  return true;
}

Cell StandardTableau::find(int j) const {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (rows[r][c] == j) return {static_cast<int>(r) + 1, static_cast<int>(c) + 1};
    }
  }
  throw DomainError("entry " + std::to_string(j) + " not in tableau");
}

// ---------------------------------------------------------------------------

std::vector<int> one_line_of_moves(int n, const game::MoveSequence& seq) {
  // Track where each value goes: w(j) = s_{i_t}(... s_{i_1}(j)).
  std::vector<int> w(n);
  std::iota(w.begin(), w.end(), 1);
  for (Vertex i : seq) {
    if (i < 1 || i >= n) throw ValidationError("move " + std::to_string(i) + " outside 1..n-1");
    for (int& x : w) {
      if (x == i) x = i + 1;
      else if (x == i + 1) x = i;
    }
  }
  return w;
}

std::vector<int> one_line_of_element(const weyl::WeylElement& w) {
  const int r = w.rank;
  const int n = r + 1;
  std::vector<int> out(n, 0);
  for (int i = 0; i < r; ++i) {
    // Row i is w(alpha_{i+1}) = e_a - e_b = +-(alpha_lo + ... + alpha_hi).
    int lo = -1, hi = -1, sign = 0;
    for (int j = 0; j < r; ++j) {
      const int c = w.action[i * r + j];
      if (c == 0) continue;
      if ((c != 1 && c != -1) || (sign != 0 && c != sign) || (hi >= 0 && j != hi + 1)) {
        throw DomainError("action matrix is not of type A");
      }
      if (lo < 0) lo = j;
      hi = j;
      sign = c;
    }
    if (sign == 0) throw DomainError("action matrix is not of type A");
    const int a = sign > 0 ? lo + 1 : hi + 2;
    const int b = sign > 0 ? hi + 2 : lo + 1;
    if ((out[i] != 0 && out[i] != a) || (out[i + 1] != 0 && out[i + 1] != b)) {
      throw ConsistencyError("inconsistent one-line reconstruction");
    }
    out[i] = a;
    out[i + 1] = b;
  }
  return out;
}

int inversions(const std::vector<int>& w) {
  int c = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) c += w[i] > w[j];
  }
  return c;
}

bool is_grassmannian(const std::vector<int>& w, Vertex k) {
  const int n = static_cast<int>(w.size());
  for (int i = 1; i < n; ++i) {
    if (i != k && w[i - 1] > w[i]) return false;
  }
  return true;
}

GrassmannianPermutation make_grassmannian(std::vector<int> one_line, Vertex k) {
  const int n = static_cast<int>(one_line.size());
  if (k < 1 || k >= n) throw ValidationError("source vertex k must lie in 1..n-1");
  std::vector<int> sorted = one_line;
  std::sort(sorted.begin(), sorted.end());
  for (int j = 0; j < n; ++j) {
    if (sorted[j] != j + 1) throw ValidationError("not a permutation of 1..n");
  }
  if (!is_grassmannian(one_line, k)) {
    throw DomainError("permutation has a descent away from position k");
  }
  return {n, k, std::move(one_line)};
}

YoungShape shape_of(const GrassmannianPermutation& w) {
  if (!is_grassmannian(w.one_line, w.k)) throw DomainError("permutation is not Grassmannian");
  YoungShape s;
  for (int i = 1; i <= w.k; ++i) {
    const int pos = w.k + 1 - i;
    const int part = w.one_line[pos - 1] - pos;
    if (part > 0) s.parts.push_back(part);
  }
  if (s.size() != inversions(w.one_line)) {
    throw ConsistencyError("shape size differs from the permutation length");
  }
  return s;
}

// ---------------------------------------------------------------------------

StandardTableau fill_tableau(const game::MoveSequence& seq, int n, Vertex k) {
  if (n < 2 || k < 1 || k >= n) throw ValidationError("need n >= 2 and 1 <= k < n");
  const DynkinDiagram d = build_catalog_diagram('A', n - 1);
  game::replay(game::GameSpec::modified(d, ActiveSet(n - 1, {k})), seq);

  StandardTableau t;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    const int want = seq[j] - k;
    // Addable cells: end of each row, plus a new row, where the row above is longer.
    std::vector<int> hits;
    for (std::size_t r = 0; r <= t.rows.size(); ++r) {
      const int len = r < t.rows.size() ? static_cast<int>(t.rows[r].size()) : 0;
      const bool addable = r == 0 || static_cast<int>(t.rows[r - 1].size()) > len;
      const int row = static_cast<int>(r) + 1, col = len + 1;
      if (addable && col - row == want) hits.push_back(static_cast<int>(r));
    }
    if (hits.size() != 1) {
      throw ConsistencyError("step " + std::to_string(j + 1) + " firing " +
                             std::to_string(seq[j]) + " finds " + std::to_string(hits.size()) +
                             " addable cells of content " + std::to_string(want));
    }
    const auto r = static_cast<std::size_t>(hits.front());
    if (r == t.rows.size()) t.rows.emplace_back();
    t.rows[r].push_back(static_cast<int>(j) + 1);
  }

  const YoungShape expect = shape_of(make_grassmannian(one_line_of_moves(n, seq), k));
  if (t.shape() != expect) throw ConsistencyError("filled shape differs from shape_of(w)");
  return t;
}

game::MoveSequence sequence_of_tableau(const StandardTableau& t, int n, Vertex k) {
  if (n < 2 || k < 1 || k >= n) throw ValidationError("need n >= 2 and 1 <= k < n");
  if (!t.is_standard()) throw ValidationError("tableau is not standard");
  if (!t.shape().fits(k, n - k)) {
    throw DomainError("shape does not fit in a " + std::to_string(k) + " x " +
                      std::to_string(n - k) + " rectangle");
  }
  const int m = t.shape().size();
  game::MoveSequence seq(m);
  for (int j = m; j >= 1; --j) seq[j - 1] = k + t.find(j).content();
  if (fill_tableau(seq, n, k) != t) throw ConsistencyError("tableau round trip failed");
  return seq;
}

BigInt count_syt(const YoungShape& shape) {
  shape.validate();
  BigInt num = 1;
  for (int i = 2; i <= shape.size(); ++i) num *= i;
  BigInt den = 1;
  const int rows = static_cast<int>(shape.parts.size());
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < shape.parts[r]; ++c) {
      int below = 0;
      while (r + below + 1 < rows && shape.parts[r + below + 1] > c) ++below;
      den *= shape.parts[r] - c - 1 + below + 1;
    }
  }
  return num / den;
}

json tableau_to_json(const StandardTableau& t) {
  return {{"shape", t.shape().parts}, {"rows", t.rows}};
}

StandardTableau tableau_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows")) throw ValidationError("tableau JSON needs 'rows'");
  for (const auto& [key, _] : j.items()) {
    if (key != "rows" && key != "shape") throw ValidationError("unknown tableau field '" + key + "'");
  }
  StandardTableau t;
  try {
    t.rows = j["rows"].get<std::vector<std::vector<int>>>();
  } catch (const json::exception&) {
    throw ValidationError("tableau rows must be arrays of integers");
  }
  if (j.contains("shape") && j["shape"] != json(t.shape().parts)) {
    throw ValidationError("tableau shape does not match its rows");
  }
  return t;
}

std::string render(const StandardTableau& t) {
  std::size_t width = 1;
  for (const auto& r : t.rows) {
    for (int x : r) width = std::max(width, std::to_string(x).size());
  }
  std::ostringstream os;
  for (const auto& r : t.rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      const std::string s = std::to_string(r[c]);
      if (c) os << ' ';
      os << std::string(width - s.size(), ' ') << s;
    }
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------

SytBijectionReport verify_syt_bijection(int n, Vertex k) {
  SytBijectionReport rep;
  const DynkinDiagram d = build_catalog_diagram('A', n - 1);
  const game::GameSpec g = game::GameSpec::modified(d, ActiveSet(n - 1, {k}));
  const game::ConfigGraph graph = game::reachable_graph(g);
  const weyl::WeylGroup group = weyl::generate(d);
  rep.elements = graph.nodes.size();

  std::vector<std::set<std::vector<std::vector<int>>>> seen(graph.nodes.size());
  game::MoveSequence seq;
  auto fail = [&](const std::string& msg) {
    if (rep.ok) rep.counterexample = msg;
    rep.ok = false;
  };
  std::function<void(std::size_t)> walk = [&](std::size_t x) {
    if (!rep.ok) return;
    ++rep.sequences;
    const StandardTableau t = fill_tableau(seq, n, k);
    std::string where = "moves (";
    for (std::size_t i = 0; i < seq.size(); ++i) where += (i ? "," : "") + std::to_string(seq[i]);
    where += ")";
    if (!t.is_standard()) return fail(where + ": filling is not standard");
    for (std::size_t j = 0; j < seq.size(); ++j) {
      const Cell c = t.find(static_cast<int>(j) + 1);
      if (c.content() != seq[j] - k) return fail(where + ": content rule violated");
    }
    if (sequence_of_tableau(t, n, k) != seq) return fail(where + ": round trip failed");
    if (!seen[x].insert(t.rows).second) return fail(where + ": two sequences give one tableau");
    // The permutation from the moves must match the oracle element.
    const weyl::WeylElement w =
        group.element(group.index_of_word(weyl::Word(seq.rbegin(), seq.rend())));
    if (one_line_of_element(w) != one_line_of_moves(n, seq)) {
      return fail(where + ": one-line notation disagrees with the oracle");
    }
    for (std::size_t e : graph.out[x]) {
      seq.push_back(graph.edges[e].vertex);
      walk(graph.edges[e].to);
      seq.pop_back();
    }
  };
  walk(graph.starts.front());
  if (!rep.ok) return rep;

  // Every node's sequences fill every SYT of its shape.
  for (std::size_t x = 0; x < graph.nodes.size(); ++x) {
    if (seen[x].empty()) {
      rep.ok = false;
      rep.counterexample = "node " + game::to_string(graph.nodes[x]) + " was never reached";
      return rep;
    }
    const StandardTableau any{*seen[x].begin()};
    const BigInt expect = count_syt(any.shape());
    if (expect != seen[x].size()) {
      rep.ok = false;
      rep.counterexample = "node " + game::to_string(graph.nodes[x]) + ": " +
                           std::to_string(seen[x].size()) + " tableaux, hook length gives " +
                           kostant::to_string(expect);
      return rep;
    }
  }
  return rep;
}

}  // namespace kostant::syt
