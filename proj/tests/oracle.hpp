#pragma once

// Naive finite abelian group arithmetic used as an independent check on the
// library. Elements are coordinate vectors reduced mod the invariant factors.

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "modspec/module.hpp"

namespace oracle {

using Vec = std::vector<long>;

struct Group {
  std::vector<long> mods;

  explicit Group(const modspec::FgModule& m) {
    for (const auto& e : m.factors()) mods.push_back(static_cast<long>(e));
  }
  explicit Group(std::vector<long> m) : mods(std::move(m)) {}

  [[nodiscard]] long order() const {
    return std::accumulate(mods.begin(), mods.end(), 1L, std::multiplies<>());
  }
  [[nodiscard]] Vec reduce(Vec v) const {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = ((v[i] % mods[i]) + mods[i]) % mods[i];
    return v;
  }
  [[nodiscard]] Vec add(const Vec& a, const Vec& b) const {
    Vec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return reduce(c);
  }
  [[nodiscard]] Vec scale(const Vec& a, long k) const {
    Vec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * (k % mods[i]);
    return reduce(c);
  }
  [[nodiscard]] std::vector<Vec> elements() const {
    std::vector<Vec> out{Vec(mods.size(), 0)};
    for (std::size_t i = 0; i < mods.size(); ++i) {
      std::vector<Vec> next;
      for (const auto& v : out) {
        for (long x = 0; x < mods[i]; ++x) {
          Vec w = v;
          w[i] = x;
          next.push_back(w);
        }
      }
      out = std::move(next);
    }
    return out;
  }
  /// Subgroup generated by gens, as a sorted set.
  [[nodiscard]] std::set<Vec> span(const std::vector<Vec>& gens) const {
    std::set<Vec> s{Vec(mods.size(), 0)};
    std::vector<Vec> frontier{Vec(mods.size(), 0)};
    while (!frontier.empty()) {
      std::vector<Vec> next;
      for (const auto& x : frontier) {
        for (const auto& g : gens) {
          auto y = add(x, reduce(g));
          if (s.insert(y).second) next.push_back(y);
        }
      }
      frontier = std::move(next);
    }
    return s;
  }
  [[nodiscard]] long exponent() const { return mods.empty() ? 1 : std::accumulate(mods.begin(), mods.end(), 1L, std::lcm<long, long>); }
};

inline Vec to_vec(const modspec::ModElement& e) {
  Vec v;
  for (const auto& x : e.coords()) v.push_back(static_cast<long>(x));
  return v;
}

/// Element set of a library submodule, rebuilt from its generators.
inline std::set<Vec> elements_of(const modspec::Submodule& n) {
  const Group g(n.parent());
  std::vector<Vec> gens;
  for (const auto& e : n.generators()) gens.push_back(to_vec(e));
  return g.span(gens);
}

/// #{x : d·x = 0} for every d dividing the exponent; determines the group.
inline std::vector<long> torsion_profile(const Group& g, long bound) {
  std::vector<long> out;
  const auto elems = g.elements();
  for (long d = 1; d <= bound; ++d) {
    long count = 0;
    for (const auto& x : elems) {
      const auto y = g.scale(x, d);
      if (std::all_of(y.begin(), y.end(), [](long c) { return c == 0; })) ++count;
    }
    out.push_back(count);
  }
  return out;
}

/// Same profile computed from invariant factors: Π gcd(d, e_i).
inline std::vector<long> torsion_profile(const std::vector<long>& factors, long bound) {
  std::vector<long> out;
  for (long d = 1; d <= bound; ++d) {
    long c = 1;
    for (auto e : factors) c *= std::gcd(d, e);
    out.push_back(c);
  }
  return out;
}

/// Brute-force prime test: a·m ∈ P ⇒ m ∈ P or aM ⊆ P, for a mod exponent.
inline bool is_prime(const Group& g, const std::set<Vec>& p) {
  const auto elems = g.elements();
  if (p.size() == elems.size()) return false;
  for (long a = 0; a < g.exponent(); ++a) {
    bool kills = std::all_of(elems.begin(), elems.end(), [&](const Vec& x) { return p.count(g.scale(x, a)) > 0; });
    if (kills) continue;
    for (const auto& x : elems) {
      if (p.count(g.scale(x, a)) && !p.count(x)) return false;
    }
  }
  return true;
}

/// Ann(M/N) generator: smallest positive a with aM ⊆ N (the exponent when N = 0).
inline long colon(const Group& g, const std::set<Vec>& n) {
  const auto elems = g.elements();
  for (long a = 1; a <= g.exponent(); ++a) {
    if (std::all_of(elems.begin(), elems.end(), [&](const Vec& x) { return n.count(g.scale(x, a)) > 0; })) return a;
  }
  return g.exponent();
}

/// Every subgroup, by closing under single generators.
inline std::set<std::set<Vec>> all_subgroups(const Group& g) {
  std::set<std::set<Vec>> seen;
  std::vector<std::set<Vec>> todo{{Vec(g.mods.size(), 0)}};
  seen.insert(todo[0]);
  const auto elems = g.elements();
  while (!todo.empty()) {
    auto h = todo.back();
    todo.pop_back();
    for (const auto& x : elems) {
      if (h.count(x)) continue;
      std::vector<Vec> gens(h.begin(), h.end());
      gens.push_back(x);
      auto k = g.span(gens);
      if (seen.insert(k).second) todo.push_back(std::move(k));
    }
  }
  return seen;
}

}  // namespace oracle
