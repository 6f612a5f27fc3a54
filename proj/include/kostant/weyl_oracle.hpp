#pragma once

// Brute-force Weyl group engine. Everything here is computed from the action
// of group elements on simple-root coordinates and serves as the independent
// oracle for the game.
//
// Multiplication convention: (v*w)(x) = v(w(x)). A generator sequence
// (a_1, ..., a_t) denotes the product s_{a_1} s_{a_2} ... s_{a_t} in written order.

#include <cstddef>
#include <cstdint>
#include <set>
#include <unordered_map>
#include <vector>

#include "kostant/bigint.hpp"
#include "kostant/root_system.hpp"

namespace kostant::weyl {

using Word = std::vector<Vertex>;

/// Row i of `action` (0-based, row-major n x n) is the image of alpha_{i+1}.
struct WeylElement {
  int rank = 0;
  std::vector<int> action;
  int length = 0;

  /// w(lambda) for lambda in simple-root coordinates.
  std::vector<int> apply(const std::vector<int>& lambda) const;

  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return a.rank == b.rank && a.action == b.action;
  }
};

struct ActionHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept;
};

WeylElement identity_element(int rank);
WeylElement simple_reflection(const CartanMatrix& a, Vertex i);

/// v*w as actions. The length of the product is not known in general and is
/// recomputed from the inversion set against `roots`.
WeylElement multiply(const WeylElement& v, const WeylElement& w,
                     const std::vector<RootVector>& roots);

/// Product of a written-order generator sequence, without needing a generated group.
WeylElement element_of_word(const CartanMatrix& a, const Word& word,
                            const std::vector<RootVector>& roots);

/// Positive roots sent to negative roots by w.
std::vector<RootVector> inversion_set(const WeylElement& w, const std::vector<RootVector>& roots);

/// Left/right Cayley graph of a finite Weyl group, indexed by BFS order.
class WeylGroup {
 public:
  enum class Side { Left, Right };

  const DynkinDiagram& diagram() const noexcept { return diagram_; }
  const CartanMatrix& cartan() const noexcept { return cartan_; }
  const std::vector<RootVector>& roots() const noexcept { return roots_; }
  int rank() const noexcept { return cartan_.rank(); }

  std::size_t size() const noexcept { return elements_.size(); }
  const WeylElement& element(std::size_t idx) const { return elements_[idx]; }
  const std::vector<WeylElement>& elements() const noexcept { return elements_; }
  std::size_t identity() const noexcept { return 0; }

  /// Index of s_i * w (Left) or w * s_i (Right).
  std::size_t mul(std::size_t w, Vertex i, Side side) const {
    const auto& t = side == Side::Left ? left_ : right_;
    return t[w * static_cast<std::size_t>(rank()) + static_cast<std::size_t>(i - 1)];
  }
  int length(std::size_t w) const { return elements_[w].length; }

  /// Index of an element given by its action matrix; throws DomainError if absent.
  std::size_t index_of(const WeylElement& w) const;
  std::size_t index_of_word(const Word& word) const;

  std::size_t longest() const noexcept { return longest_; }

  /// Inverse element index.
  std::size_t inverse(std::size_t w) const;

 private:
  friend WeylGroup generate(const DynkinDiagram& d, std::size_t cap);

  DynkinDiagram diagram_;
  CartanMatrix cartan_;
  std::vector<RootVector> roots_;
  std::vector<WeylElement> elements_;
  std::unordered_map<std::vector<int>, std::size_t, ActionHash> index_;
  std::vector<std::size_t> left_, right_;
  std::size_t longest_ = 0;
};

inline constexpr std::size_t kDefaultOracleCap = 200'000;

/// BFS closure from the identity; lengths are BFS depths.
WeylGroup generate(const DynkinDiagram& d, std::size_t cap = kDefaultOracleCap);

struct CosetSystem {
  std::set<Vertex> J;
  std::vector<std::size_t> reps;  // sorted by (length, index)
  std::size_t longest = 0;
};

/// W^J by the right-descent condition, cross-checked against the inversion-set
/// characterization I(w) within Phi^+ \ Phi_J^+. Throws ConsistencyError on disagreement.
CosetSystem minimal_coset_reps(const WeylGroup& g, const std::set<Vertex>& J);

/// w = w^J * w_J with lengths additive.
std::pair<std::size_t, std::size_t> parabolic_decompose(const WeylGroup& g, std::size_t w,
                                                        const std::set<Vertex>& J);

/// All reduced words of w, written order, sorted lexicographically.
std::vector<Word> reduced_words(const WeylGroup& g, std::size_t w);

/// At most `limit` reduced words of w (depth-first, lexicographically smallest
/// last letters first). Avoids materializing huge word sets.
std::vector<Word> reduced_words_limited(const WeylGroup& g, std::size_t w, std::size_t limit);

/// Number of reduced words of every element, by index.
std::vector<BigInt> reduced_word_counts(const WeylGroup& g);

/// Reduced words read as move sequences: each reduced word reversed. These are
/// the sequences (i_1..i_t) with s_{i_t}...s_{i_1} = w.
std::vector<Word> move_sequences(const WeylGroup& g, std::size_t w);

/// Positive roots supported on J (the parabolic subsystem Phi_J^+).
std::vector<RootVector> parabolic_roots(const std::vector<RootVector>& roots,
                                        const std::set<Vertex>& J);

}  // namespace kostant::weyl
