#pragma once

// Type A, single source k: game move sequences as standard Young tableaux.
//
// One-line notation: a move sequence (i_1..i_t) gives w = s_{i_t} o ... o s_{i_1}
// acting on values 1..n, with s_i the transposition of i and i+1. Cells are
// (row, column) from 1, English notation; the content of (r, c) is c - r.

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "kostant/bigint.hpp"
#include "kostant/game_engine.hpp"
#include "kostant/weyl_oracle.hpp"

namespace kostant::syt {

struct YoungShape {
  std::vector<int> parts;  // weakly decreasing, no trailing zeros

  int size() const;
  bool fits(int rows, int cols) const;
  /// Throws ValidationError unless parts are positive and weakly decreasing.
  void validate() const;

  friend bool operator==(const YoungShape&, const YoungShape&) = default;
};

struct Cell {
  int row = 0;
  int col = 0;
  int content() const noexcept { return col - row; }
  friend bool operator==(const Cell&, const Cell&) = default;
};

struct StandardTableau {
  std::vector<std::vector<int>> rows;

  YoungShape shape() const;
  /// Rows and columns strictly increasing and entries exactly 1..|shape|.
  bool is_standard() const;
  /// Cell holding entry j; throws DomainError if absent.
  Cell find(int j) const;

  friend bool operator==(const StandardTableau&, const StandardTableau&) = default;
};

struct GrassmannianPermutation {
  int n = 0;
  Vertex k = 0;
  std::vector<int> one_line;  // one_line[j-1] = w(j)
};

std::vector<int> one_line_of_moves(int n, const game::MoveSequence& seq);

/// From the simple-root action of an element of W(A_{n-1}), using
/// w(alpha_i) = e_{w(i)} - e_{w(i+1)}.
std::vector<int> one_line_of_element(const weyl::WeylElement& w);

int inversions(const std::vector<int>& one_line);

bool is_grassmannian(const std::vector<int>& one_line, Vertex k);

/// Throws DomainError if the permutation is not Grassmannian for k.
GrassmannianPermutation make_grassmannian(std::vector<int> one_line, Vertex k);

/// lambda_i = w(k+1-i) - (k+1-i), zeros trimmed; |lambda| = l(w) is asserted.
YoungShape shape_of(const GrassmannianPermutation& w);

/// Places j at the addable cell of content i_j - k. The sequence is replayed
/// on A_{n-1} with I = {k} first, so illegal input raises IllegalMoveError.
StandardTableau fill_tableau(const game::MoveSequence& seq, int n, Vertex k);

/// Inverse of fill_tableau: peel the largest entry, i_m = k + content.
game::MoveSequence sequence_of_tableau(const StandardTableau& t, int n, Vertex k);

/// Hook length formula.
BigInt count_syt(const YoungShape& shape);

nlohmann::json tableau_to_json(const StandardTableau& t);
StandardTableau tableau_from_json(const nlohmann::json& j);

/// Right-aligned text grid, one row per line.
std::string render(const StandardTableau& t);

struct SytBijectionReport {
  bool ok = true;
  std::size_t elements = 0;   // Grassmannian permutations visited
  std::size_t sequences = 0;  // legal move sequences checked
  std::string counterexample;
};

/// For every Grassmannian w in S_n for k: the legal sequences reaching w are
/// counted against count_syt(shape_of(w)), fill_tableau is checked injective,
/// standard, content-respecting and inverted by sequence_of_tableau.
SytBijectionReport verify_syt_bijection(int n, Vertex k);

}  // namespace kostant::syt
