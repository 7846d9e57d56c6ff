#include "modspec/corpus.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "modspec/integer.hpp"

namespace modspec {

std::vector<IntVector> invariant_chains(const std::vector<Int>& sources, std::size_t max_factors, const Int& max_order) {
  std::set<Int> pool;
  for (const auto& s : sources) {
    for (const auto& d : divisors(s)) {
      if (d > 1) pool.insert(d);
    }
  }
  const std::vector<Int> values(pool.begin(), pool.end());
  std::vector<IntVector> out{{}};
  IntVector chain;
  const std::function<void(const Int&)> grow = [&](const Int& order) {
    if (chain.size() == max_factors) return;
    for (const auto& d : values) {
      if (!chain.empty() && d % chain.back() != 0) continue;
      if (order * d > max_order) continue;
      chain.push_back(d);
      out.push_back(chain);
      grow(order * d);
      chain.pop_back();
    }
  };
  grow(1);
  std::sort(out.begin(), out.end(), [](const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<CorpusEntry> generate_corpus() {
  const auto chains = invariant_chains({4, 6, 8, 12, 36}, 3, 256);
  std::vector<CorpusEntry> out;
  const auto add = [&](const RingDesc& ring, const IntVector& chain) {
    const auto m = from_invariants(ring, chain);
    out.push_back({m.describe(), m});
  };
  for (const auto& c : chains) add(RingDesc::integers(), c);
  for (const long n : {4L, 6L, 12L, 36L}) {
    const auto ring = RingDesc::integers_mod(n);
    for (const auto& c : chains) {
      if (c.empty() || n % c.back() == 0) add(ring, c);
    }
  }
  for (const long p : {2L, 3L, 5L}) {
    const auto m = FgModule::prufer(p);
    out.push_back({m.describe(), m});
  }
  return out;
}

std::vector<CorpusEntry> finite_part(const std::vector<CorpusEntry>& corpus) {
  std::vector<CorpusEntry> out;
  std::copy_if(corpus.begin(), corpus.end(), std::back_inserter(out),
               [](const CorpusEntry& e) { return e.module.is_finite(); });
  return out;
}

}  // namespace modspec
