#pragma once

// Dynkin diagrams, Cartan matrices and (co)root enumeration.
//
// Conventions used across the whole library:
//   * Vertices are labelled 1..n. Positional vectors (chips, root
//     coefficients) store vertex v at index v-1.
//   * arrows(u, v) is the number of arrows pointing from u to v. The game
//     weight n_{v,u} equals arrows(u, v).
//   * Cartan entries a(u, v) = <alpha_u, alpha_v^vee>, so a(u, v) = -arrows(u, v)
//     for u != v and a(v, v) = 2.
//   * For lambda = sum_j c_j alpha_j, <lambda, alpha_i^vee> = sum_j c_j a(j, i).

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace kostant {

using Vertex = int;

/// Directed edge record with multiplicity, as found in diagram JSON.
struct EdgeSpec {
  Vertex from = 0;
  Vertex to = 0;
  int arrows = 1;
};

class DynkinDiagram {
 public:
  DynkinDiagram() = default;

  int rank() const noexcept { return n_; }
  const std::string& label() const noexcept { return label_; }

  /// Number of arrows pointing from u to v (0 when not adjacent).
  int arrows(Vertex u, Vertex v) const;
  bool adjacent(Vertex u, Vertex v) const { return arrows(u, v) > 0; }
  std::vector<Vertex> neighbors(Vertex v) const;

  /// True for catalog diagrams and custom graphs that define a finite
  /// crystallographic root system. Games run on any diagram; root, coroot
  /// and Weyl operations require this flag.
  bool is_dynkin() const noexcept { return dynkin_; }

  /// Catalog family letter, if built from the catalog.
  std::optional<char> family() const noexcept { return family_; }

  /// Arrow-reversed diagram (Cartan matrix transposed).
  DynkinDiagram dual() const;

  /// Induced subdiagram on the given vertices, relabelled 1..k in the given order.
  DynkinDiagram restrict_to(const std::vector<Vertex>& vertices) const;

  /// Directed edge list with every nonzero direction listed.
  std::vector<EdgeSpec> edges() const;

  friend bool operator==(const DynkinDiagram& a, const DynkinDiagram& b) {
    return a.n_ == b.n_ && a.arrows_ == b.arrows_;
  }

 private:
  friend DynkinDiagram build_catalog_diagram(char family, int rank);
  friend DynkinDiagram build_custom_diagram(int n, const std::vector<EdgeSpec>& edges,
                                            std::string label);

  int n_ = 0;
  std::vector<int> arrows_;  // row-major n x n, arrows_[u*n+v] = arrows(u+1, v+1)
  std::string label_;
  std::optional<char> family_;
  bool dynkin_ = false;
};

/// a(u, v) = <alpha_u, alpha_v^vee>; stored 0-based.
class CartanMatrix {
 public:
  CartanMatrix() = default;
  explicit CartanMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0) {}

  int rank() const noexcept { return n_; }

  /// 1-based vertex indices.
  int operator()(Vertex u, Vertex v) const { return a_[idx(u, v)]; }
  int& operator()(Vertex u, Vertex v) { return a_[idx(u, v)]; }

  CartanMatrix transposed() const;
  std::vector<std::vector<int>> rows() const;

  friend bool operator==(const CartanMatrix&, const CartanMatrix&) = default;

 private:
  std::size_t idx(Vertex u, Vertex v) const {
    return static_cast<std::size_t>(u - 1) * n_ + static_cast<std::size_t>(v - 1);
  }
  int n_ = 0;
  std::vector<int> a_;
};

/// Integer coefficient vector over simple roots (or simple coroots when `coroot`).
struct RootVector {
  std::vector<int> coeffs;
  bool coroot = false;

  int height() const;
  bool is_positive() const;
  bool is_negative() const;

  /// Orders by height, then reverse lexicographic on coefficients, so that
  /// simple roots come out as alpha_1, alpha_2, ...
  friend std::strong_ordering operator<=>(const RootVector& a, const RootVector& b);
  friend bool operator==(const RootVector& a, const RootVector& b) = default;
};

/// Modified vertices I; J is the complement.
class ActiveSet {
 public:
  ActiveSet() = default;
  ActiveSet(int rank, std::set<Vertex> active);

  static ActiveSet from_inactive(int rank, const std::set<Vertex>& inactive);
  static ActiveSet all(int rank);

  int rank() const noexcept { return rank_; }
  const std::set<Vertex>& active() const noexcept { return active_; }
  std::set<Vertex> inactive() const;
  bool contains(Vertex v) const { return active_.count(v) > 0; }
  bool empty() const noexcept { return active_.empty(); }

  /// 0/1 indicator of I, positional.
  std::vector<int> indicator() const;

  friend bool operator==(const ActiveSet&, const ActiveSet&) = default;

 private:
  int rank_ = 0;
  std::set<Vertex> active_;
};

/// Default cap on the number of positive roots produced by closure.
inline constexpr std::size_t kDefaultRootCap = 10'000;

DynkinDiagram build_catalog_diagram(char family, int rank);

/// Parses names like "A2", "f4", "E6".
DynkinDiagram catalog_diagram_from_name(const std::string& name);

/// Every valid catalog (family, rank) pair with rank <= max_rank, in a fixed
/// order: A, B, C, D, E, F, G and increasing rank. C2 is omitted (same as B2).
std::vector<DynkinDiagram> catalog_up_to_rank(int max_rank);

/// Missing reverse directions default to one arrow. Rejects self-loops,
/// out-of-range vertices and zero multiplicities.
DynkinDiagram build_custom_diagram(int n, const std::vector<EdgeSpec>& edges,
                                   std::string label = "custom");

DynkinDiagram diagram_from_json(const nlohmann::json& j);
nlohmann::json diagram_to_json(const DynkinDiagram& d);

/// ASCII sketch: chains render as e.g. "o--o=>o--o"; branched graphs as an edge list.
std::string render_ascii(const DynkinDiagram& d);

CartanMatrix cartan_matrix(const DynkinDiagram& d);

/// <lambda, alpha_i^vee> for lambda in simple-root coordinates.
int pairing(const CartanMatrix& a, const std::vector<int>& lambda, Vertex i);

/// s_i(lambda) = lambda - <lambda, alpha_i^vee> alpha_i. Pass the transposed
/// Cartan matrix to reflect coroot coordinates.
RootVector reflect(const CartanMatrix& a, const RootVector& lambda, Vertex i);

/// Closure of the simple roots under simple reflections, kept in the positive
/// orthant. Sorted by (height, reverse-lex).
std::vector<RootVector> positive_roots(const DynkinDiagram& d,
                                       std::size_t cap = kDefaultRootCap);

/// Positive roots of the dual diagram, flagged as coroots.
std::vector<RootVector> positive_coroots(const DynkinDiagram& d,
                                         std::size_t cap = kDefaultRootCap);

/// Sum of the coefficients at indices in I.
int i_height(const RootVector& gamma, const ActiveSet& active);

/// True when every nonzero coefficient sits on a vertex of `support`.
bool supported_on(const RootVector& r, const std::set<Vertex>& support);

RootVector simple_root(int rank, Vertex i, bool coroot = false);

std::string to_string(const RootVector& r);

}  // namespace kostant
