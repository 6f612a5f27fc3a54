#pragma once

// Picard number, index and dimension of the flag variety G/P attached to a
// subset Delta_P of simple roots, and the inequalities relating them.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "kostant/root_system.hpp"

namespace kostant::mukai {

struct ParabolicDatum {
  DynkinDiagram diagram;
  std::set<Vertex> delta_p;
  int picard = 0;                // |Delta \ Delta_P|
  int dimension = 0;             // |Phi^+ \ Phi_P^+|
  std::map<Vertex, int> n_beta;  // sum over Phi^+ \ Phi_P^+ of <alpha, beta^vee>
  int index_gcd = 0;

  /// Bit v-1 set for every v in Delta_P.
  unsigned bitmask() const;
};

/// Throws DegenerateDatumError when Delta_P is all of Delta.
ParabolicDatum parabolic_datum(const DynkinDiagram& d, const std::set<Vertex>& delta_p);

struct Inequality {
  long long lhs = 0;
  long long rhs = 0;
  bool holds = false;
  bool equality = false;
};

/// sum_beta (n_beta - 1) <= dimension.
Inequality check_strong_inequality(const ParabolicDatum& p);

/// picard * (gcd - 1) <= dimension. Throws ConsistencyError if its lhs
/// exceeds the strong lhs.
Inequality check_mukai_consequence(const ParabolicDatum& p);

/// n_beta - 1 = 1 + sum_j (h_j - 1), where h_j is the height of the final
/// coroot of the game on the dual of (component C_j of Delta_P next to beta)
/// plus beta, started at beta^vee with beta held fixed.
struct StringIdentity {
  Vertex beta = 0;
  int n_beta = 0;
  int chain_height = 0;  // 1 + sum_j (h_j - 1)
  bool holds = false;
};
std::vector<StringIdentity> check_string_identity(const ParabolicDatum& p);

struct SweepRow {
  std::string diagram;
  std::string label;  // Delta \ Delta_P, space separated
  unsigned delta_p_bitmask = 0;
  int picard = 0;
  int dimension = 0;
  int gcd = 0;
  long long lhs_strong = 0;
  long long lhs_mukai = 0;
  bool holds = false;     // both inequalities
  bool equality = false;  // lhs_mukai == dimension
};

struct SweepReport {
  std::vector<SweepRow> rows;  // ordered by (catalog order, bitmask)
  std::size_t violations = 0;
  std::size_t equalities = 0;
};

SweepReport sweep(int max_rank);

std::string to_csv(const SweepReport& r);

}  // namespace kostant::mukai
