#include "modspec/spectrum.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace modspec {

std::size_t SpectrumView::size() const {
  std::size_t n = 0;
  for (const auto& [p, fiber] : fibers) n += fiber.size();
  return n;
}

std::vector<Int> SpectrumView::primes() const {
  std::vector<Int> out;
  for (const auto& [p, fiber] : fibers) out.push_back(p);
  return out;
}

std::vector<PrimeSubmodule> SpectrumView::all() const {
  std::vector<PrimeSubmodule> out;
  for (const auto& [p, fiber] : fibers) out.insert(out.end(), fiber.begin(), fiber.end());
  return out;
}

std::vector<Int> relevant_primes(const FgModule& m, const Limits& limits) {
  if (m.is_prufer()) return {};
  if (!m.is_finite()) {
    throw Error(ErrorKind::UnsupportedModule, "module with free rank has infinitely many relevant primes");
  }
  if (m.exponent() == 1) return {};
  return prime_divisors(m.exponent(), limits.factor_bound);
}

namespace {

/// Definition check on masks: a·m ∈ P ⇒ m ∈ P or aM ⊆ P, for a mod e_t.
/// a = u·gcd(a, e_t) with u a unit acting bijectively on M and on P, so
/// the divisors of e_t cover every a.
bool prime_condition_holds(const ElementIndexer& ix, const std::vector<char>& p_mask) {
  const std::int64_t e = ix.radices().empty() ? 1 : ix.radices().back();
  for (const auto& d : divisors(e)) {
    const std::int64_t a = to_i64(d);
    bool a_kills = true;
    for (std::size_t i = 0; i < ix.radices().size() && a_kills; ++i) {
      a_kills = p_mask[static_cast<std::size_t>(ix.scale(ix.unit(i), a))] != 0;
    }
    if (a_kills) continue;
    for (std::int64_t x = 0; x < ix.size(); ++x) {
      if (p_mask[static_cast<std::size_t>(ix.scale(x, a))] && !p_mask[static_cast<std::size_t>(x)]) return false;
    }
  }
  return true;
}

bool is_proper(const std::vector<char>& mask) {
  return std::any_of(mask.begin(), mask.end(), [](char c) { return c == 0; });
}

void sort_fibers(SpectrumView& view) {
  for (auto& [p, fiber] : view.fibers) {
    std::sort(fiber.begin(), fiber.end(),
              [](const PrimeSubmodule& a, const PrimeSubmodule& b) { return a.sub < b.sub; });
  }
}

SpectrumView spectrum_bruteforce(const FgModule& m, const Limits& limits) {
  if (*m.cardinality() > limits.bruteforce_cap) {
    throw Error(ErrorKind::CapExceeded, "brute-force spectrum refuses |M| = " + to_string(*m.cardinality()) +
                                            " > " + std::to_string(limits.bruteforce_cap));
  }
  const ElementIndexer ix(m, limits.bruteforce_cap);
  SpectrumView view{m, {}, false};
  for (const auto& mask : enumerate_subgroups(ix)) {
    if (!is_proper(mask) || !prime_condition_holds(ix, mask)) continue;
    Submodule sub = ix.submodule_from_mask(mask);
    Ideal c = colon(sub, m);
    if (!c.is_prime(limits.factor_bound)) {
      throw Error(ErrorKind::Violation, "prime submodule with non-prime colon " + c.to_string());
    }
    const Int p = c.gen();
    view.fibers[p].push_back({std::move(sub), std::move(c)});
  }
  sort_fibers(view);
  return view;
}

/// Proper subspaces of F_p^d as row bases in reduced row echelon form.
std::vector<std::vector<std::vector<std::int64_t>>> proper_subspaces(std::int64_t p, std::size_t d) {
  std::vector<std::vector<std::vector<std::int64_t>>> out;
  for (std::uint64_t pivots = 0; pivots < (1ULL << d); ++pivots) {
    if (pivots == (1ULL << d) - 1) continue;  // the whole space
    std::vector<std::size_t> pivot_cols;
    for (std::size_t c = 0; c < d; ++c) {
      if (pivots & (1ULL << c)) pivot_cols.push_back(c);
    }
    // Free positions: (row r, column c) with c > pivot_cols[r] and c not a pivot.
    std::vector<std::pair<std::size_t, std::size_t>> free_pos;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) {
      for (std::size_t c = pivot_cols[r] + 1; c < d; ++c) {
        if (!(pivots & (1ULL << c))) free_pos.emplace_back(r, c);
      }
    }
    std::vector<std::int64_t> digits(free_pos.size(), 0);
    while (true) {
      std::vector<std::vector<std::int64_t>> basis(pivot_cols.size(), std::vector<std::int64_t>(d, 0));
      for (std::size_t r = 0; r < pivot_cols.size(); ++r) basis[r][pivot_cols[r]] = 1;
      for (std::size_t i = 0; i < free_pos.size(); ++i) basis[free_pos[i].first][free_pos[i].second] = digits[i];
      out.push_back(std::move(basis));
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == p) digits[i++] = 0;
      if (i == digits.size()) break;
    }
  }
  return out;
}

SpectrumView spectrum_classified(const FgModule& m, const Limits& limits) {
  SpectrumView view{m, {}, false};
  const std::size_t dim = m.dimension();
  for (const auto& p : relevant_primes(m, limits)) {
    // M/pM ≅ F_p^d on the coordinates whose factor is divisible by p.
    std::vector<std::size_t> coords;
    for (std::size_t i = 0; i < m.factors().size(); ++i) {
      if (m.factors()[i] % p == 0) coords.push_back(i);
    }
    IntMatrix p_m(0, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      IntVector row(dim, Int(0));
      row[i] = p;
      p_m.append_row(std::move(row));
    }
    const Ideal char_ideal(m.ring(), p);
    for (const auto& basis : proper_subspaces(to_i64(p), coords.size())) {
      IntMatrix rows = p_m;
      for (const auto& v : basis) {
        IntVector row(dim, Int(0));
        for (std::size_t j = 0; j < coords.size(); ++j) row[coords[j]] = v[j];
        rows.append_row(std::move(row));
      }
      Submodule sub = Submodule::from_rows(m, rows);
      if (!(colon(sub, m) == char_ideal)) {
        throw Error(ErrorKind::Violation, "classified prime " + sub.describe() + " has unexpected colon");
      }
      view.fibers[p].push_back({std::move(sub), char_ideal});
    }
  }
  sort_fibers(view);
  return view;
}

bool same_fibers(const SpectrumView& a, const SpectrumView& b) {
  if (a.fibers.size() != b.fibers.size()) return false;
  for (const auto& [p, fiber] : a.fibers) {
    const auto it = b.fibers.find(p);
    if (it == b.fibers.end() || it->second.size() != fiber.size()) return false;
    for (std::size_t i = 0; i < fiber.size(); ++i) {
      if (!(fiber[i].sub == it->second[i].sub)) return false;
    }
  }
  return true;
}

}  // namespace

std::optional<Ideal> is_prime_submodule(const Submodule& p, const FgModule& m, const Limits& limits) {
  if (!(p.parent() == m)) throw Error(ErrorKind::InvalidArgument, "P is not a submodule of M");
  if (!m.is_finite()) throw Error(ErrorKind::UnsupportedModule, "is_prime_submodule needs a finite module");
  const ElementIndexer ix(m, limits.cardinality_cap);
  const auto mask = ix.mask(p);
  if (!is_proper(mask) || !prime_condition_holds(ix, mask)) return std::nullopt;
  return colon(p, m);
}

std::vector<std::vector<char>> enumerate_subgroups(const ElementIndexer& ix) {
  const auto n = static_cast<std::size_t>(ix.size());
  std::set<std::vector<char>> seen;
  std::deque<std::vector<char>> queue;
  std::vector<char> zero(n, 0);
  zero[0] = 1;
  seen.insert(zero);
  queue.push_back(std::move(zero));
  while (!queue.empty()) {
    const std::vector<char> h = std::move(queue.front());
    queue.pop_front();
    std::vector<std::int64_t> members;
    for (std::size_t i = 0; i < n; ++i) {
      if (h[i]) members.push_back(static_cast<std::int64_t>(i));
    }
    // H + <g> depends only on the coset g + H.
    std::vector<char> done = h;
    for (std::size_t g = 0; g < n; ++g) {
      if (done[g]) continue;
      for (const auto x : members) done[static_cast<std::size_t>(ix.add(x, static_cast<std::int64_t>(g)))] = 1;
      auto next = ix.extend(h, static_cast<std::int64_t>(g));
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return {seen.begin(), seen.end()};
}

SpectrumView spec_enumerate(const FgModule& m, SpectrumStrategy strategy, const Limits& limits) {
  if (m.is_prufer() || m.is_zero()) return {m, {}, strategy != SpectrumStrategy::Classified};
  if (!m.is_finite()) {
    throw Error(ErrorKind::UnsupportedModule, "Spec of a module with free rank is not enumerated");
  }
  switch (strategy) {
    case SpectrumStrategy::Bruteforce:
      return spectrum_bruteforce(m, limits);
    case SpectrumStrategy::Classified:
      return spectrum_classified(m, limits);
    case SpectrumStrategy::Both:
      break;
  }
  SpectrumView classified = spectrum_classified(m, limits);
  if (*m.cardinality() > limits.bruteforce_cap) return classified;
  const SpectrumView brute = spectrum_bruteforce(m, limits);
  if (!same_fibers(classified, brute)) {
    throw Error(ErrorKind::Violation, "spectrum strategies disagree on " + m.describe());
  }
  classified.strategies_compared = true;
  return classified;
}

// --- Topology ---------------------------------------------------------------

bool OpenSet::contains(const Int& p) const { return std::binary_search(fibers.begin(), fibers.end(), p); }

bool OpenSet::subset_of(const OpenSet& other) const {
  return std::includes(other.fibers.begin(), other.fibers.end(), fibers.begin(), fibers.end());
}

OpenSet complement(const ClosedSet& v) {
  OpenSet u{v.universe, {}};
  std::set_difference(v.universe.begin(), v.universe.end(), v.fibers.begin(), v.fibers.end(),
                      std::back_inserter(u.fibers));
  return u;
}

OpenSet open_union(const OpenSet& a, const OpenSet& b) {
  OpenSet u{a.universe, {}};
  std::set_union(a.fibers.begin(), a.fibers.end(), b.fibers.begin(), b.fibers.end(), std::back_inserter(u.fibers));
  return u;
}

OpenSet open_intersection(const OpenSet& a, const OpenSet& b) {
  OpenSet u{a.universe, {}};
  std::set_intersection(a.fibers.begin(), a.fibers.end(), b.fibers.begin(), b.fibers.end(),
                        std::back_inserter(u.fibers));
  return u;
}

std::vector<OpenSet> all_open_sets(const std::vector<Int>& universe) {
  if (universe.size() > 20) throw Error(ErrorKind::CapExceeded, "too many fibers to enumerate open sets");
  std::vector<OpenSet> out;
  for (std::uint64_t bits = 0; bits < (1ULL << universe.size()); ++bits) {
    OpenSet u{universe, {}};
    for (std::size_t i = 0; i < universe.size(); ++i) {
      if (bits & (1ULL << i)) u.fibers.push_back(universe[i]);
    }
    out.push_back(std::move(u));
  }
  return out;
}

OpenSet whole_spectrum(const FgModule& m, const Limits& limits) {
  const auto primes = relevant_primes(m, limits);
  return {primes, primes};
}

ClosedSet variety(const Submodule& n, const FgModule& m, const Limits& limits) {
  const Ideal c = colon(n, m);
  ClosedSet v{relevant_primes(m, limits), {}, ideal_radical(c, limits.factor_bound)};
  for (const auto& p : v.universe) {
    if (Ideal(m.ring(), p).contains(c.gen())) v.fibers.push_back(p);
  }
  return v;
}

OpenSet basic_open(const Int& f, const FgModule& m, const Limits& limits) {
  return complement(variety(scalar_multiple_submodule(f, m), m, limits));
}

// --- Prime radical and the P-radical condition ------------------------------

Submodule prime_radical(const Submodule& n, const FgModule& m, RadicalMethod method, const Limits& limits) {
  if (!(n.parent() == m)) throw Error(ErrorKind::InvalidArgument, "N is not a submodule of M");
  if (m.is_prufer()) return Submodule::full(m);  // primeless
  if (method == RadicalMethod::Bruteforce) {
    const SpectrumView spec = spec_enumerate(m, SpectrumStrategy::Bruteforce, limits);
    const ElementIndexer ix(m, limits.cardinality_cap);
    const auto n_mask = ix.mask(n);
    std::vector<char> meet(n_mask.size(), 1);
    bool any = false;
    for (const auto& prime : spec.all()) {
      const auto p_mask = ix.mask(prime.sub);
      bool contains_n = true;
      for (std::size_t i = 0; i < n_mask.size() && contains_n; ++i) contains_n = !n_mask[i] || p_mask[i];
      if (!contains_n) continue;
      any = true;
      for (std::size_t i = 0; i < meet.size(); ++i) meet[i] = static_cast<char>(meet[i] && p_mask[i]);
    }
    return any ? ix.submodule_from_mask(meet) : Submodule::full(m);
  }
  std::optional<Submodule> meet;
  for (const auto& p : relevant_primes(m, limits)) {
    Submodule candidate = submodule_sum(n, scalar_multiple_submodule(p, m));
    if (candidate.is_full()) continue;
    meet = meet ? submodule_intersection(*meet, candidate) : std::move(candidate);
  }
  return meet ? *meet : Submodule::full(m);
}

PradicalResult is_pradical(const FgModule& m, const Limits& limits) {
  PradicalResult result;
  const auto check = [&](const Ideal& prime) {
    result.primes_checked.push_back(prime);
    const Submodule radical = prime_radical(ideal_times_module(prime, m), m, RadicalMethod::ClosedForm, limits);
    Ideal lhs = colon(radical, m);
    if (lhs == prime) return true;
    result.pradical = false;
    result.certificate = PradicalCertificate{prime, std::move(lhs), prime};
    return false;
  };
  if (m.is_prufer()) {
    check(Ideal(m.ring(), m.prufer_prime()));
    return result;
  }
  if (!m.is_finite()) {
    // (𝒫M:M) = 𝒫 and √[p](𝒫M) = 𝒫M for every 𝒫 ≠ 0; for 𝒫 = 0 the torsion
    // submodule is a (0)-prime containing 0.
    result.symbolic = true;
    return result;
  }
  for (const auto& p : relevant_primes(m, limits)) {
    if (!check(Ideal(m.ring(), p))) break;
  }
  return result;
}

NaturalMap natural_map(const FgModule& m, const Limits& limits) {
  NaturalMap out;
  if (m.is_prufer()) {
    // Spec(M) is empty while Spec(Z) is not; (0) and (p) witness the codomain.
    out.codomain = {Ideal::zero(m.ring()), Ideal(m.ring(), m.prufer_prime())};
    out.surjective = false;
    return out;
  }
  const SpectrumView spec = spec_enumerate(m, SpectrumStrategy::Both, limits);
  std::set<Int> hit;
  for (const auto& prime : spec.all()) {
    Ideal image = colon(prime.sub, m);
    hit.insert(image.gen());
    out.image.emplace_back(prime, std::move(image));
  }
  bool surjective = true;
  for (const auto& p : relevant_primes(m, limits)) {
    out.codomain.emplace_back(m.ring(), p);
    surjective = surjective && hit.count(out.codomain.back().gen()) > 0;
  }
  out.surjective = m.is_zero() || surjective;
  return out;
}

}  // namespace modspec
