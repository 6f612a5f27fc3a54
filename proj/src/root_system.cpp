#include "kostant/root_system.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <sstream>

#include "kostant/errors.hpp"

namespace kostant {

namespace {

bool valid_catalog_pair(char family, int rank) {
  switch (family) {
    case 'A': return rank >= 1;
    case 'B':
    case 'C': return rank >= 2;
    case 'D': return rank >= 4;
    case 'E': return rank >= 6 && rank <= 8;
    case 'F': return rank == 4;
    case 'G': return rank == 2;
    default: return false;
  }
}

// Closure without the Dynkin check; used to classify custom graphs.
std::vector<RootVector> closure(const CartanMatrix& a, std::size_t cap, bool coroot) {
  const int n = a.rank();
  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> queue;
  for (Vertex i = 1; i <= n; ++i) {
    auto r = simple_root(n, i).coeffs;
    seen.insert(r);
    queue.push_back(std::move(r));
  }
  while (!queue.empty()) {
    RootVector cur{std::move(queue.front()), false};
    queue.pop_front();
    for (Vertex i = 1; i <= n; ++i) {
      RootVector next = reflect(a, cur, i);
      if (!next.is_positive() || seen.count(next.coeffs)) continue;
      if (seen.size() >= cap) {
        throw NonFiniteTypeError("positive root closure exceeded cap of " +
                                 std::to_string(cap) + " roots");
      }
      seen.insert(next.coeffs);
      queue.push_back(std::move(next.coeffs));
    }
  }
  std::vector<RootVector> out;
  out.reserve(seen.size());
  for (const auto& c : seen) out.push_back(RootVector{c, coroot});
  std::sort(out.begin(), out.end());
  return out;
}

bool classify_dynkin(const DynkinDiagram& d) {
  const int n = d.rank();
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v) {
      const int p = d.arrows(u, v), q = d.arrows(v, u);
      if (p * q > 3) return false;
      if (p * q > 1 && p != 1 && q != 1) return false;
    }
  }
  try {
    closure(cartan_matrix(d), kDefaultRootCap, false);
  } catch (const NonFiniteTypeError&) {
    return false;
  }
  return true;
}

void require_dynkin(const DynkinDiagram& d) {
  if (!d.is_dynkin()) {
    throw NonCrystallographicError("diagram '" + d.label() +
                                   "' is not a finite crystallographic Dynkin diagram");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// DynkinDiagram

int DynkinDiagram::arrows(Vertex u, Vertex v) const {
  if (u < 1 || u > n_ || v < 1 || v > n_) {
    throw ValidationError("vertex out of range");
  }
  return arrows_[static_cast<std::size_t>(u - 1) * n_ + (v - 1)];
}

std::vector<Vertex> DynkinDiagram::neighbors(Vertex v) const {
  std::vector<Vertex> out;
  for (Vertex u = 1; u <= n_; ++u) {
    if (u != v && arrows(v, u) > 0) out.push_back(u);
  }
  return out;
}

DynkinDiagram DynkinDiagram::dual() const {
  DynkinDiagram d = *this;
  for (int u = 0; u < n_; ++u) {
    for (int v = 0; v < n_; ++v) d.arrows_[u * n_ + v] = arrows_[v * n_ + u];
  }
  if (family_ == 'B') d.family_ = 'C';
  else if (family_ == 'C') d.family_ = 'B';
  if (family_ && (*family_ == 'B' || *family_ == 'C')) {
    d.label_ = std::string(1, *d.family_) + std::to_string(n_);
  } else if (!family_) {
    d.label_ = label_ + "^dual";
  }
  return d;
}

DynkinDiagram DynkinDiagram::restrict_to(const std::vector<Vertex>& vertices) const {
  std::vector<EdgeSpec> edges;
  const int k = static_cast<int>(vertices.size());
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      const int m = arrows(vertices[i], vertices[j]);
      if (m > 0) edges.push_back({i + 1, j + 1, m});
    }
  }
  return build_custom_diagram(k, edges, label_ + "|sub");
}

std::vector<EdgeSpec> DynkinDiagram::edges() const {
  std::vector<EdgeSpec> out;
  for (Vertex u = 1; u <= n_; ++u) {
    for (Vertex v = 1; v <= n_; ++v) {
      if (u != v && arrows(u, v) > 0) out.push_back({u, v, arrows(u, v)});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// CartanMatrix

CartanMatrix CartanMatrix::transposed() const {
  CartanMatrix t(n_);
  for (Vertex u = 1; u <= n_; ++u) {
    for (Vertex v = 1; v <= n_; ++v) t(v, u) = (*this)(u, v);
  }
  return t;
}

std::vector<std::vector<int>> CartanMatrix::rows() const {
  std::vector<std::vector<int>> out(n_, std::vector<int>(n_));
  for (Vertex u = 1; u <= n_; ++u) {
    for (Vertex v = 1; v <= n_; ++v) out[u - 1][v - 1] = (*this)(u, v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// RootVector

int RootVector::height() const { return std::accumulate(coeffs.begin(), coeffs.end(), 0); }

bool RootVector::is_positive() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c >= 0; }) &&
         std::any_of(coeffs.begin(), coeffs.end(), [](int c) { return c > 0; });
}

bool RootVector::is_negative() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c <= 0; }) &&
         std::any_of(coeffs.begin(), coeffs.end(), [](int c) { return c < 0; });
}

std::strong_ordering operator<=>(const RootVector& a, const RootVector& b) {
  if (auto c = a.height() <=> b.height(); c != 0) return c;
  // Reverse lexicographic: larger leading coefficient first.
  if (auto c = b.coeffs <=> a.coeffs; c != 0) return c;
  return a.coroot <=> b.coroot;
}

// ---------------------------------------------------------------------------
// ActiveSet

ActiveSet::ActiveSet(int rank, std::set<Vertex> active) : rank_(rank), active_(std::move(active)) {
  for (Vertex v : active_) {
    if (v < 1 || v > rank_) {
      throw ValidationError("active vertex " + std::to_string(v) + " outside 1.." +
                            std::to_string(rank_));
    }
  }
}

ActiveSet ActiveSet::from_inactive(int rank, const std::set<Vertex>& inactive) {
  std::set<Vertex> active;
  for (Vertex v : inactive) {
    if (v < 1 || v > rank) {
      throw ValidationError("inactive vertex " + std::to_string(v) + " outside 1.." +
                            std::to_string(rank));
    }
  }
  for (Vertex v = 1; v <= rank; ++v) {
    if (!inactive.count(v)) active.insert(v);
  }
  return ActiveSet(rank, std::move(active));
}

ActiveSet ActiveSet::all(int rank) {
  std::set<Vertex> s;
  for (Vertex v = 1; v <= rank; ++v) s.insert(v);
  return ActiveSet(rank, std::move(s));
}

std::set<Vertex> ActiveSet::inactive() const {
  std::set<Vertex> out;
  for (Vertex v = 1; v <= rank_; ++v) {
    if (!active_.count(v)) out.insert(v);
  }
  return out;
}

std::vector<int> ActiveSet::indicator() const {
  std::vector<int> out(rank_, 0);
  for (Vertex v : active_) out[v - 1] = 1;
  return out;
}

// ---------------------------------------------------------------------------
// Construction

DynkinDiagram build_catalog_diagram(char family, int rank) {
  family = static_cast<char>(std::toupper(static_cast<unsigned char>(family)));
  if (!valid_catalog_pair(family, rank)) {
    throw ClassificationError(std::string("no crystallographic Dynkin diagram of type ") +
                              family + std::to_string(rank));
  }
  std::vector<EdgeSpec> e;
  auto simple = [&e](Vertex u, Vertex v) {
    e.push_back({u, v, 1});
    e.push_back({v, u, 1});
  };
  // Arrows point from the long root to the short root.
  auto multiple = [&e](Vertex long_root, Vertex short_root, int m) {
    e.push_back({long_root, short_root, m});
    e.push_back({short_root, long_root, 1});
  };
  switch (family) {
    case 'A':
      for (Vertex v = 1; v < rank; ++v) simple(v, v + 1);
      break;
    case 'B':
      for (Vertex v = 1; v + 1 < rank; ++v) simple(v, v + 1);
      multiple(rank - 1, rank, 2);
      break;
    case 'C':
      for (Vertex v = 1; v + 1 < rank; ++v) simple(v, v + 1);
      multiple(rank, rank - 1, 2);
      break;
    case 'D':
      for (Vertex v = 1; v + 2 < rank; ++v) simple(v, v + 1);
      simple(rank - 2, rank - 1);
      simple(rank - 2, rank);
      break;
    case 'E':
      simple(1, 3);
      simple(3, 4);
      simple(2, 4);
      for (Vertex v = 4; v < rank; ++v) simple(v, v + 1);
      break;
    case 'F':
      simple(1, 2);
      multiple(2, 3, 2);
      simple(3, 4);
      break;
    case 'G':
      multiple(2, 1, 3);
      break;
  }
  DynkinDiagram d = build_custom_diagram(rank, e, std::string(1, family) + std::to_string(rank));
  d.family_ = family;
  d.dynkin_ = true;
  return d;
}

DynkinDiagram catalog_diagram_from_name(const std::string& name) {
  if (name.size() < 2 || !std::isalpha(static_cast<unsigned char>(name[0]))) {
    throw ClassificationError("bad diagram name '" + name + "'");
  }
  int rank = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) {
      throw ClassificationError("bad diagram name '" + name + "'");
    }
    rank = rank * 10 + (name[i] - '0');
    if (rank > 1000) throw ClassificationError("rank too large in '" + name + "'");
  }
  return build_catalog_diagram(name[0], rank);
}

std::vector<DynkinDiagram> catalog_up_to_rank(int max_rank) {
  std::vector<DynkinDiagram> out;
  for (char f : std::string("ABCDEFG")) {
    for (int r = 1; r <= max_rank; ++r) {
      if (f == 'C' && r == 2) continue;
      if (valid_catalog_pair(f, r)) out.push_back(build_catalog_diagram(f, r));
    }
  }
  return out;
}

DynkinDiagram build_custom_diagram(int n, const std::vector<EdgeSpec>& edges, std::string label) {
  if (n < 1) throw ValidationError("diagram needs at least one vertex");
  DynkinDiagram d;
  d.n_ = n;
  d.label_ = std::move(label);
  d.arrows_.assign(static_cast<std::size_t>(n) * n, 0);
  auto at = [&](Vertex u, Vertex v) -> int& {
    return d.arrows_[static_cast<std::size_t>(u - 1) * n + (v - 1)];
  };
  for (const EdgeSpec& e : edges) {
    if (e.from < 1 || e.from > n || e.to < 1 || e.to > n) {
      throw ValidationError("edge (" + std::to_string(e.from) + "," + std::to_string(e.to) +
                            ") references a vertex outside 1.." + std::to_string(n));
    }
    if (e.from == e.to) {
      throw ValidationError("self-loop at vertex " + std::to_string(e.from));
    }
    if (e.arrows < 1) {
      throw ValidationError("edge (" + std::to_string(e.from) + "," + std::to_string(e.to) +
                            ") has non-positive multiplicity; one-sided edges are not allowed");
    }
    int& slot = at(e.from, e.to);
    if (slot != 0 && slot != e.arrows) {
      throw ValidationError("conflicting multiplicities for edge (" + std::to_string(e.from) +
                            "," + std::to_string(e.to) + ")");
    }
    slot = e.arrows;
  }
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = 1; v <= n; ++v) {
      if (at(u, v) > 0 && at(v, u) == 0) at(v, u) = 1;
    }
  }
  d.dynkin_ = classify_dynkin(d);
  return d;
}

DynkinDiagram diagram_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("diagram JSON must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() != "n" && it.key() != "edges" && it.key() != "label") {
      throw ValidationError("unknown diagram field '" + it.key() + "'");
    }
  }
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw ValidationError("diagram field 'n' must be an integer");
  }
  std::vector<EdgeSpec> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw ValidationError("diagram field 'edges' must be an array");
    for (const auto& e : j["edges"]) {
      if (!e.is_object() || !e.contains("from") || !e.contains("to") ||
          !e["from"].is_number_integer() || !e["to"].is_number_integer()) {
        throw ValidationError("edge records need integer 'from' and 'to'");
      }
      for (auto it = e.begin(); it != e.end(); ++it) {
        if (it.key() != "from" && it.key() != "to" && it.key() != "arrows") {
          throw ValidationError("unknown edge field '" + it.key() + "'");
        }
      }
      EdgeSpec s{e["from"].get<int>(), e["to"].get<int>(), 1};
      if (e.contains("arrows")) {
        if (!e["arrows"].is_number_integer()) throw ValidationError("'arrows' must be an integer");
        s.arrows = e["arrows"].get<int>();
      }
      edges.push_back(s);
    }
  }
  std::string label = "custom";
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw ValidationError("diagram field 'label' must be a string");
    label = j["label"].get<std::string>();
  }
  // A catalog label on a matching graph keeps its catalog identity.
  try {
    DynkinDiagram cat = catalog_diagram_from_name(label);
    DynkinDiagram custom = build_custom_diagram(j["n"].get<int>(), edges, label);
    if (cat == custom) return cat;
    return custom;
  } catch (const ClassificationError&) {
    return build_custom_diagram(j["n"].get<int>(), edges, label);
  }
}

nlohmann::json diagram_to_json(const DynkinDiagram& d) {
  nlohmann::json edges = nlohmann::json::array();
  for (const EdgeSpec& e : d.edges()) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"arrows", e.arrows}});
  }
  return {{"n", d.rank()}, {"edges", edges}, {"label", d.label()}};
}

std::string render_ascii(const DynkinDiagram& d) {
  const int n = d.rank();
  bool chain = true;
  for (Vertex u = 1; u <= n && chain; ++u) {
    for (Vertex v = 1; v <= n; ++v) {
      if (d.adjacent(u, v) && std::abs(u - v) != 1) {
        chain = false;
        break;
      }
    }
  }
  for (Vertex v = 1; v < n && chain; ++v) chain = d.adjacent(v, v + 1);
  std::ostringstream os;
  if (chain) {
    os << 'o';
    for (Vertex v = 1; v < n; ++v) {
      const int fwd = d.arrows(v, v + 1), back = d.arrows(v + 1, v);
      if (fwd == 1 && back == 1) os << "--";
      else if (fwd > back) os << (fwd == 2 ? "=>" : std::to_string(fwd) + ">");
      else os << (back == 2 ? "<=" : "<" + std::to_string(back));
      os << 'o';
    }
    return os.str();
  }
  bool first = true;
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v) {
      if (!d.adjacent(u, v)) continue;
      if (!first) os << ' ';
      first = false;
      const int fwd = d.arrows(u, v), back = d.arrows(v, u);
      os << u;
      if (fwd == back) os << (fwd == 1 ? "--" : std::to_string(fwd) + "=" + std::to_string(back));
      else if (fwd > back) os << (fwd == 2 ? "=>" : std::to_string(fwd) + ">");
      else os << (back == 2 ? "<=" : "<" + std::to_string(back));
      os << v;
    }
  }
  if (first) {
    for (Vertex v = 1; v <= n; ++v) os << (v > 1 ? " " : "") << 'o';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Roots

CartanMatrix cartan_matrix(const DynkinDiagram& d) {
  const int n = d.rank();
  CartanMatrix a(n);
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = 1; v <= n; ++v) a(u, v) = (u == v) ? 2 : -d.arrows(u, v);
  }
  return a;
}

int pairing(const CartanMatrix& a, const std::vector<int>& lambda, Vertex i) {
  int s = 0;
  for (Vertex j = 1; j <= a.rank(); ++j) s += lambda[j - 1] * a(j, i);
  return s;
}

RootVector reflect(const CartanMatrix& a, const RootVector& lambda, Vertex i) {
  RootVector out = lambda;
  out.coeffs[i - 1] -= pairing(a, lambda.coeffs, i);
  return out;
}

std::vector<RootVector> positive_roots(const DynkinDiagram& d, std::size_t cap) {
  require_dynkin(d);
  return closure(cartan_matrix(d), cap, false);
}

std::vector<RootVector> positive_coroots(const DynkinDiagram& d, std::size_t cap) {
  require_dynkin(d);
  return closure(cartan_matrix(d).transposed(), cap, true);
}

int i_height(const RootVector& gamma, const ActiveSet& active) {
  int s = 0;
  for (Vertex v : active.active()) s += gamma.coeffs[v - 1];
  return s;
}

bool supported_on(const RootVector& r, const std::set<Vertex>& support) {
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
    if (r.coeffs[i] != 0 && !support.count(static_cast<Vertex>(i + 1))) return false;
  }
  return true;
}

RootVector simple_root(int rank, Vertex i, bool coroot) {
  RootVector r{std::vector<int>(rank, 0), coroot};
  r.coeffs[i - 1] = 1;
  return r;
}

std::string to_string(const RootVector& r) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) os << (i ? "," : "") << r.coeffs[i];
  os << ')';
  return os.str();
}

}  // namespace kostant
