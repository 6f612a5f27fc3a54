#include "kostant/mukai_checker.hpp"

#include <numeric>
#include <sstream>

#include "kostant/errors.hpp"
#include "kostant/game_engine.hpp"

namespace kostant::mukai {

unsigned ParabolicDatum::bitmask() const {
  unsigned m = 0;
  for (Vertex v : delta_p) m |= 1u << (v - 1);
  return m;
}

namespace {

ParabolicDatum datum_from_roots(const DynkinDiagram& d, const std::set<Vertex>& delta_p,
                                const std::vector<RootVector>& roots, const CartanMatrix& a) {
  for (Vertex v : delta_p) {
    if (v < 1 || v > d.rank()) throw ValidationError("Delta_P vertex out of range");
  }
  if (static_cast<int>(delta_p.size()) == d.rank()) {
    throw DegenerateDatumError("Delta_P must be a proper subset of the simple roots");
  }
  ParabolicDatum p;
  p.diagram = d;
  p.delta_p = delta_p;
  p.picard = d.rank() - static_cast<int>(delta_p.size());
  for (Vertex b = 1; b <= d.rank(); ++b) {
    if (!delta_p.count(b)) p.n_beta[b] = 0;
  }
  for (const RootVector& r : roots) {
    if (supported_on(r, delta_p)) continue;
    ++p.dimension;
    for (auto& [b, n] : p.n_beta) n += pairing(a, r.coeffs, b);
  }
  for (const auto& [b, n] : p.n_beta) p.index_gcd = std::gcd(p.index_gcd, n);
  return p;
}

}  // namespace

ParabolicDatum parabolic_datum(const DynkinDiagram& d, const std::set<Vertex>& delta_p) {
  return datum_from_roots(d, delta_p, positive_roots(d), cartan_matrix(d));
}

Inequality check_strong_inequality(const ParabolicDatum& p) {
  Inequality q;
  for (const auto& [b, n] : p.n_beta) q.lhs += n - 1;
  q.rhs = p.dimension;
  q.holds = q.lhs <= q.rhs;
  q.equality = q.lhs == q.rhs;
  return q;
}

Inequality check_mukai_consequence(const ParabolicDatum& p) {
  Inequality q;
  q.lhs = static_cast<long long>(p.picard) * (p.index_gcd - 1);
  q.rhs = p.dimension;
  q.holds = q.lhs <= q.rhs;
  q.equality = q.lhs == q.rhs;
  if (q.lhs > check_strong_inequality(p).lhs) {
    throw ConsistencyError("gcd bound exceeds the per-root sum");
  }
  return q;
}

std::vector<StringIdentity> check_string_identity(const ParabolicDatum& p) {
  const DynkinDiagram& d = p.diagram;
  std::vector<StringIdentity> out;
  for (const auto& [beta, n] : p.n_beta) {
    // Components of Delta_P adjacent to beta.
    std::set<Vertex> done;
    int chain = 1;
    for (Vertex start : d.neighbors(beta)) {
      if (!p.delta_p.count(start) || done.count(start)) continue;
      std::vector<Vertex> comp{start};
      done.insert(start);
      for (std::size_t i = 0; i < comp.size(); ++i) {
        for (Vertex u : d.neighbors(comp[i])) {
          if (p.delta_p.count(u) && !done.count(u)) {
            done.insert(u);
            comp.push_back(u);
          }
        }
      }
      // Vertex 1 of the restricted dual diagram is beta and never fires.
      std::vector<Vertex> verts{beta};
      verts.insert(verts.end(), comp.begin(), comp.end());
      const DynkinDiagram sub = d.dual().restrict_to(verts);
      const game::GameSpec g = game::GameSpec::classical(sub, game::Configuration::basis(sub.rank(), 1));
      game::Configuration c = g.start();
      for (;;) {
        auto sad = game::sad_vertices(c, g);
        std::erase(sad, 1);
        if (sad.empty()) break;
        c = game::fire(c, g, sad.front());
      }
      chain += static_cast<int>(c.total()) - 1;
    }
    out.push_back({beta, n, chain, n - 1 == chain});
  }
  return out;
}

SweepReport sweep(int max_rank) {
  SweepReport rep;
  for (const DynkinDiagram& d : catalog_up_to_rank(max_rank)) {
    const auto roots = positive_roots(d);
    const CartanMatrix a = cartan_matrix(d);
    const unsigned full = (1u << d.rank()) - 1;
    for (unsigned mask = 0; mask < full; ++mask) {
      std::set<Vertex> dp;
      std::string label;
      for (Vertex v = 1; v <= d.rank(); ++v) {
        if (mask & (1u << (v - 1))) {
          dp.insert(v);
        } else {
          if (!label.empty()) label += ' ';
          label += std::to_string(v);
        }
      }
      const ParabolicDatum p = datum_from_roots(d, dp, roots, a);
      const Inequality strong = check_strong_inequality(p);
      const Inequality weak = check_mukai_consequence(p);
      SweepRow row{d.label(), label, mask, p.picard, p.dimension, p.index_gcd,
                   strong.lhs, weak.lhs, strong.holds && weak.holds, weak.equality};
      if (!row.holds) ++rep.violations;
      if (row.equality) ++rep.equalities;
      rep.rows.push_back(std::move(row));
    }
  }
  return rep;
}

std::string to_csv(const SweepReport& r) {
  std::ostringstream os;
  os << "diagram,label,delta_p_bitmask,picard,dimension,gcd,lhs_strong,lhs_mukai,holds,equality\n";
  for (const SweepRow& row : r.rows) {
    os << row.diagram << ',' << row.label << ',' << row.delta_p_bitmask << ',' << row.picard << ','
       << row.dimension << ',' << row.gcd << ',' << row.lhs_strong << ',' << row.lhs_mukai << ','
       << (row.holds ? "true" : "false") << ',' << (row.equality ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace kostant::mukai
