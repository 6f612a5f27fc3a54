#include "kostant/weyl_oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "kostant/errors.hpp"

namespace kostant::weyl {

namespace {

// Left multiplication by s_i only changes column i of the action matrix.
std::vector<int> left_mul(const CartanMatrix& a, const std::vector<int>& m, Vertex i) {
  const int n = a.rank();
  std::vector<int> out = m;
  for (int r = 0; r < n; ++r) {
    int p = 0;
    for (int j = 0; j < n; ++j) p += m[r * n + j] * a(j + 1, i);
    out[r * n + (i - 1)] -= p;
  }
  return out;
}

// Right multiplication: row j of w*s_i is w(alpha_j) - a(j,i) w(alpha_i).
std::vector<int> right_mul(const CartanMatrix& a, const std::vector<int>& m, Vertex i) {
  const int n = a.rank();
  std::vector<int> out = m;
  for (int j = 0; j < n; ++j) {
    const int c = a(j + 1, i);
    if (c == 0) continue;
    for (int k = 0; k < n; ++k) out[j * n + k] -= c * m[(i - 1) * n + k];
  }
  return out;
}

}  // namespace

std::size_t ActionHash::operator()(const std::vector<int>& v) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int x : v) {
    h ^= static_cast<std::size_t>(x + 0x9e3779b9);
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<int> WeylElement::apply(const std::vector<int>& lambda) const {
  std::vector<int> out(rank, 0);
  for (int i = 0; i < rank; ++i) {
    if (lambda[i] == 0) continue;
    for (int k = 0; k < rank; ++k) out[k] += lambda[i] * action[i * rank + k];
  }
  return out;
}

WeylElement identity_element(int rank) {
  WeylElement e{rank, std::vector<int>(static_cast<std::size_t>(rank) * rank, 0), 0};
  for (int i = 0; i < rank; ++i) e.action[i * rank + i] = 1;
  return e;
}

WeylElement simple_reflection(const CartanMatrix& a, Vertex i) {
  WeylElement s = identity_element(a.rank());
  s.action = left_mul(a, s.action, i);
  s.length = 1;
  return s;
}

std::vector<RootVector> inversion_set(const WeylElement& w, const std::vector<RootVector>& roots) {
  std::vector<RootVector> out;
  for (const RootVector& r : roots) {
    RootVector img{w.apply(r.coeffs), r.coroot};
    if (img.is_negative()) out.push_back(r);
  }
  return out;
}

WeylElement multiply(const WeylElement& v, const WeylElement& w,
                     const std::vector<RootVector>& roots) {
  const int n = v.rank;
  WeylElement out{n, std::vector<int>(static_cast<std::size_t>(n) * n, 0), 0};
  // M_{vw} = M_w * M_v
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int c = w.action[i * n + j];
      if (c == 0) continue;
      for (int k = 0; k < n; ++k) out.action[i * n + k] += c * v.action[j * n + k];
    }
  }
  out.length = static_cast<int>(inversion_set(out, roots).size());
  return out;
}

WeylElement element_of_word(const CartanMatrix& a, const Word& word,
                            const std::vector<RootVector>& roots) {
  WeylElement e = identity_element(a.rank());
  for (Vertex i : word) {
    if (i < 1 || i > a.rank()) throw ValidationError("generator index out of range");
    e.action = right_mul(a, e.action, i);
  }
  e.length = static_cast<int>(inversion_set(e, roots).size());
  return e;
}

// ---------------------------------------------------------------------------

std::size_t WeylGroup::index_of(const WeylElement& w) const {
  auto it = index_.find(w.action);
  if (it == index_.end()) throw DomainError("element not in the generated group");
  return it->second;
}

std::size_t WeylGroup::index_of_word(const Word& word) const {
  std::size_t w = identity();
  for (Vertex i : word) {
    if (i < 1 || i > rank()) throw ValidationError("generator index out of range");
    w = mul(w, i, Side::Right);
  }
  return w;
}

std::size_t WeylGroup::inverse(std::size_t w) const {
  // Strip left descents: w = s_{a_1} ... s_{a_t}, so w^{-1} = s_{a_t} ... s_{a_1}.
  std::size_t inv = identity();
  std::size_t cur = w;
  while (length(cur) > 0) {
    for (Vertex i = 1; i <= rank(); ++i) {
      std::size_t next = mul(cur, i, Side::Left);
      if (length(next) < length(cur)) {
        inv = mul(inv, i, Side::Left);
        cur = next;
        break;
      }
    }
  }
  return inv;
}

WeylGroup generate(const DynkinDiagram& d, std::size_t cap) {
  WeylGroup g;
  g.diagram_ = d;
  g.cartan_ = cartan_matrix(d);
  g.roots_ = positive_roots(d);
  const int n = d.rank();

  WeylElement e = identity_element(n);
  g.index_.emplace(e.action, 0);
  g.elements_.push_back(std::move(e));
  for (std::size_t head = 0; head < g.elements_.size(); ++head) {
    for (Vertex i = 1; i <= n; ++i) {
      std::vector<int> m = left_mul(g.cartan_, g.elements_[head].action, i);
      if (g.index_.count(m)) continue;
      if (g.elements_.size() >= cap) {
        throw OracleTooLargeError("Weyl group of " + d.label() + " exceeds oracle cap of " +
                                  std::to_string(cap) + " elements");
      }
      const int len = g.elements_[head].length + 1;
      g.index_.emplace(m, g.elements_.size());
      g.elements_.push_back(WeylElement{n, std::move(m), len});
    }
  }
  const std::size_t size = g.elements_.size();
  g.left_.resize(size * n);
  g.right_.resize(size * n);
  for (std::size_t w = 0; w < size; ++w) {
    for (Vertex i = 1; i <= n; ++i) {
      g.left_[w * n + (i - 1)] = g.index_.at(left_mul(g.cartan_, g.elements_[w].action, i));
      g.right_[w * n + (i - 1)] = g.index_.at(right_mul(g.cartan_, g.elements_[w].action, i));
    }
    if (g.elements_[w].length > g.elements_[g.longest_].length) g.longest_ = w;
  }
  return g;
}

std::vector<RootVector> parabolic_roots(const std::vector<RootVector>& roots,
                                        const std::set<Vertex>& J) {
  std::vector<RootVector> out;
  for (const RootVector& r : roots) {
    if (supported_on(r, J)) out.push_back(r);
  }
  return out;
}

CosetSystem minimal_coset_reps(const WeylGroup& g, const std::set<Vertex>& J) {
  for (Vertex j : J) {
    if (j < 1 || j > g.rank()) throw ValidationError("generator in J out of range");
  }
  CosetSystem cs;
  cs.J = J;
  for (std::size_t w = 0; w < g.size(); ++w) {
    bool by_descent = true;
    for (Vertex j : J) {
      if (g.length(g.mul(w, j, WeylGroup::Side::Right)) < g.length(w)) {
        by_descent = false;
        break;
      }
    }
    bool by_inversions = true;
    for (const RootVector& r : inversion_set(g.element(w), g.roots())) {
      if (supported_on(r, J)) {
        by_inversions = false;
        break;
      }
    }
    if (by_descent != by_inversions) {
      throw ConsistencyError("descent and inversion-set characterizations of W^J disagree");
    }
    if (by_descent) cs.reps.push_back(w);
  }
  std::stable_sort(cs.reps.begin(), cs.reps.end(), [&](std::size_t x, std::size_t y) {
    return g.length(x) < g.length(y);
  });
  cs.longest = cs.reps.back();
  for (std::size_t w : cs.reps) {
    if (g.length(w) == g.length(cs.longest) && w != cs.longest) {
      throw ConsistencyError("W^J has two elements of maximal length");
    }
  }
  return cs;
}

std::pair<std::size_t, std::size_t> parabolic_decompose(const WeylGroup& g, std::size_t w,
                                                        const std::set<Vertex>& J) {
  // Invariant: w = u * v with v in W_J.
  std::size_t u = w;
  std::size_t v = g.identity();
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex j : J) {
      std::size_t us = g.mul(u, j, WeylGroup::Side::Right);
      if (g.length(us) < g.length(u)) {
        u = us;
        v = g.mul(v, j, WeylGroup::Side::Left);
        changed = true;
        break;
      }
    }
  }
  if (g.length(u) + g.length(v) != g.length(w)) {
    throw ConsistencyError("parabolic decomposition is not length-additive");
  }
  return {u, v};
}

std::vector<Word> reduced_words(const WeylGroup& g, std::size_t w) {
  std::map<std::size_t, std::vector<Word>> memo;
  std::function<const std::vector<Word>&(std::size_t)> rec =
      [&](std::size_t x) -> const std::vector<Word>& {
    if (auto it = memo.find(x); it != memo.end()) return it->second;
    std::vector<Word> out;
    if (g.length(x) == 0) {
      out.push_back({});
    } else {
      for (Vertex i = 1; i <= g.rank(); ++i) {
        std::size_t xs = g.mul(x, i, WeylGroup::Side::Right);
        if (g.length(xs) >= g.length(x)) continue;
        for (const Word& p : rec(xs)) {
          Word q = p;
          q.push_back(i);
          out.push_back(std::move(q));
        }
      }
    }
    std::sort(out.begin(), out.end());
    return memo.emplace(x, std::move(out)).first->second;
  };
  return rec(w);
}

std::vector<BigInt> reduced_word_counts(const WeylGroup& g) {
  std::vector<std::size_t> order(g.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return g.length(x) < g.length(y); });
  std::vector<BigInt> count(g.size(), 0);
  for (std::size_t x : order) {
    if (g.length(x) == 0) {
      count[x] = 1;
      continue;
    }
    for (Vertex i = 1; i <= g.rank(); ++i) {
      std::size_t xs = g.mul(x, i, WeylGroup::Side::Right);
      if (g.length(xs) < g.length(x)) count[x] += count[xs];
    }
  }
  return count;
}

std::vector<Word> move_sequences(const WeylGroup& g, std::size_t w) {
  std::vector<Word> out = reduced_words(g, w);
  for (Word& word : out) std::reverse(word.begin(), word.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Word> reduced_words_limited(const WeylGroup& g, std::size_t w, std::size_t limit) {
  std::vector<Word> out;
  Word suffix;  // letters peeled from the right, last letter first
  std::function<void(std::size_t)> rec = [&](std::size_t x) {
    if (out.size() >= limit) return;
    if (g.length(x) == 0) {
      out.emplace_back(suffix.rbegin(), suffix.rend());
      return;
    }
    for (Vertex i = 1; i <= g.rank() && out.size() < limit; ++i) {
      std::size_t xs = g.mul(x, i, WeylGroup::Side::Right);
      if (g.length(xs) >= g.length(x)) continue;
      suffix.push_back(i);
      rec(xs);
      suffix.pop_back();
    }
  };
  rec(w);
  return out;
}

}  // namespace kostant::weyl
