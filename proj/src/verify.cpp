#include "modspec/verify.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace modspec {

namespace {

constexpr std::size_t kKeptFailures = 20;

std::string name_of(const FgModule& m) { return m.describe(); }

std::vector<Int> range(long lo, const Int& hi) {
  std::vector<Int> out;
  for (Int v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

/// Runs `body`, turning library errors into failures and cap overruns into skips.
template <typename F>
void guarded(Tally& t, const std::string& what, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::CapExceeded) {
      t.skip();
    } else {
      t.record(false, what + ": " + e.what());
    }
  }
}

/// P ⊕ M2 (or M1 ⊕ P when `first` is false) inside the direct sum s.
Submodule lift_to_sum(const Submodule& p, const FgModule& a, const FgModule& b, const FgModule& s, bool first) {
  const std::size_t da = a.dimension();
  const std::size_t db = b.dimension();
  std::vector<ModElement> gens;
  const auto embed = [&](const IntVector& coords, bool in_a) {
    IntVector original(da + db, 0);
    std::copy(coords.begin(), coords.end(), original.begin() + (in_a ? 0 : static_cast<long>(da)));
    gens.emplace_back(s, s.to_canonical(original));
  };
  for (const auto& g : p.generators()) embed(g.coords(), first);
  const FgModule& other = first ? b : a;
  for (std::size_t j = 0; j < other.dimension(); ++j) {
    IntVector unit(other.dimension(), 0);
    unit[j] = 1;
    embed(unit, !first);
  }
  return submodule_from_generators(s, gens);
}

std::vector<MultSet> localization_sets(const FgModule& m, const Limits& limits) {
  std::vector<MultSet> out;
  for (const auto& f : range(0, element_bound(m, limits))) out.push_back(MultSet::powers_of(f));
  if (m.is_prufer()) {
    out.push_back(MultSet::complement_of_prime(m.prufer_prime()));
  } else {
    for (const auto& p : relevant_primes(m, limits)) out.push_back(MultSet::complement_of_prime(p));
  }
  if (m.ring().kind() == RingDesc::Kind::Integers) out.push_back(MultSet::complement_of_prime(0));
  return out;
}

Int other_prime(const Int& p) { return p == 2 ? Int(3) : Int(2); }

}  // namespace

void Tally::record(bool ok, const std::string& what) {
  ++checks;
  if (ok) {
    ++passed;
  } else if (failures.size() < kKeptFailures) {
    failures.push_back(what);
  }
}

void Tally::merge(const Tally& other) {
  checks += other.checks;
  passed += other.passed;
  skipped += other.skipped;
  for (const auto& f : other.failures) {
    if (failures.size() < kKeptFailures) failures.push_back(f);
  }
}

Int element_bound(const FgModule& m, const Limits& limits) {
  if (m.is_prufer()) return m.prufer_prime() + 1;
  const auto primes = relevant_primes(m, limits);
  return primes.empty() ? Int(2) : primes.back() + 1;
}

void check_radical_identity(const RingDesc& ring, const std::vector<Int>& gens, Tally& t) {
  std::vector<Ideal> ideals;
  for (const auto& g : gens) ideals.emplace_back(ring, g);
  for (const auto& i : ideals) {
    for (const auto& j : ideals) {
      for (const auto& k : ideals) {
        const Ideal lhs = ideal_radical(ideal_intersect(ideal_sum(i, j), ideal_sum(i, k)));
        const Ideal rhs = ideal_radical(ideal_sum(i, ideal_intersect(j, k)));
        t.record(lhs == rhs, ring.to_string() + ": I=" + i.to_string() + " J=" + j.to_string() + " K=" + k.to_string());
      }
    }
  }
}

void check_direct_sum(const FgModule& a, const FgModule& b, const Limits& limits, Tally& t) {
  const std::string what = name_of(a) + " + " + name_of(b);
  guarded(t, what, [&] {
    const FgModule s = direct_sum(a, b);
    if (is_pradical(a, limits).pradical && is_pradical(b, limits).pradical) {
      t.record(is_pradical(s, limits).pradical, what + ": direct sum is not P-radical");
    }
    if (!s.is_finite() || *s.cardinality() > limits.cardinality_cap) {
      t.skip();
      return;
    }
    for (const bool first : {true, false}) {
      const FgModule& part = first ? a : b;
      for (const auto& p : spec_enumerate(part, SpectrumStrategy::Classified, limits).all()) {
        const auto lifted = lift_to_sum(p.sub, a, b, s, first);
        const auto ideal = is_prime_submodule(lifted, s, limits);
        t.record(ideal && *ideal == p.char_ideal, what + ": lift of " + p.sub.describe() + " is not prime");
      }
    }
  });
}

void check_localization(const FgModule& m, const Limits& limits, Tally& t) {
  const auto sets = localization_sets(m, limits);
  for (const auto& s : sets) {
    const std::string what = name_of(m) + " at " + s.to_string();
    guarded(t, what, [&] {
      const auto corr = prime_correspondence(m, s, limits);
      t.record(corr.ok(), what + ": " + (corr.ok() ? "" : corr.violations.front()));
    });
    if (m.is_finite()) {
      guarded(t, what, [&] {
        t.record(localized_iso(localize(m, s, limits), localize_bruteforce(m, s, limits)),
                 what + ": differs from the brute-force localization");
      });
    }
  }
  guarded(t, name_of(m), [&] {
    const auto report = verify_localization_transfer(m, sets, limits);
    for (const auto& c : report.clauses) t.record(c.passed(), name_of(m) + ": " + c.name + " " + c.detail);
  });
  if (m.is_prufer()) {
    const Int& p = m.prufer_prime();
    t.record(localize(m, MultSet::powers_of(p), limits).is_zero(), name_of(m) + ": inverting p must kill M");
    const auto mq = localize(m, MultSet::powers_of(other_prime(p)), limits);
    t.record(mq.special == LocalizedModule::Special::Prufer && mq.carrier.prufer_prime() == p,
             name_of(m) + ": inverting another prime must leave M unchanged");
  }
}

void check_stalks(const FgModule& m, const Limits& limits, Tally& t) {
  if (!m.is_finite()) return;
  guarded(t, name_of(m), [&] {
    for (const auto& p : spec_enumerate(m, SpectrumStrategy::Classified, limits).all()) {
      const auto st = stalk(m, p, limits);
      t.record(st.isomorphic() && Int(st.germ_classes) == *st.local.carrier.cardinality(),
               name_of(m) + ": stalk at " + p.sub.describe());
    }
  });
}

void check_sections_of_basic_opens(const FgModule& m, const Limits& limits, Tally& t) {
  const std::string name = name_of(m);
  if (m.is_prufer()) {
    guarded(t, name, [&] {
      const auto psi = psi_map(m, 1, limits);
      const bool pradical = is_pradical(m, limits).pradical;
      t.record(!pradical && psi.codomain.carrier.is_zero() && !psi.bijective(),
               name + ": global sections should vanish while M does not");
    });
    return;
  }
  if (!m.is_finite()) return;
  guarded(t, name, [&] {
    const bool pradical = is_pradical(m, limits).pradical;
    const Int bound = element_bound(m, limits);
    for (const auto& f : range(0, bound)) {
      const auto psi = psi_map(m, f, limits);
      const std::string what = name + " f=" + to_string(f);
      if (pradical) t.record(psi.bijective(), what + ": psi is not bijective");
      const bool zero_domain = psi.domain.is_zero() || psi.domain.carrier.is_zero();
      t.record(psi.codomain.open.empty() == zero_domain && psi.codomain.open.empty() == (psi.codomain.cardinality() == 1),
               what + ": O(D(fM)) = 0, D(fM) = {} and M_f = 0 disagree");
    }
    // Covers of D(fM) by one or two basic opens that match it exactly.
    for (const auto& f : range(1, bound)) {
      const OpenSet df = basic_open(f, m, limits);
      std::vector<std::vector<Int>> covers{{f}};
      for (const auto& h1 : range(1, bound)) {
        for (const auto& h2 : range(static_cast<long>(h1), bound)) {
          if (open_union(basic_open(h1, m, limits), basic_open(h2, m, limits)) == df) covers.push_back({h1, h2});
        }
      }
      for (const auto& hs : covers) {
        const auto c = cover_decompose(m, f, hs, limits);
        t.record(c.arithmetic_ok && c.cover_exact && c.covered_by_r == std::optional<bool>(true),
                 name + " f=" + to_string(f) + ": cover decomposition failed");
      }
    }
  });
}

void check_iso_criterion(const FgModule& m, const Limits& limits, Tally& t) {
  const std::string name = name_of(m);
  if (m.is_prufer()) {
    guarded(t, name, [&] {
      const Int& p = m.prufer_prime();
      const auto c = iso_criterion(m, p, other_prime(p), limits);
      t.record(c.rad_f.is_unit() && c.rad_g.is_unit() && c.radicals_equal && !c.modules_isomorphic && !c.pradical,
               name + ": the radicals-agree-but-modules-differ example did not reproduce");
    });
    return;
  }
  guarded(t, name, [&] {
    const auto values = range(1, element_bound(m, limits));
    const bool pradical = is_pradical(m, limits).pradical;
    for (const auto& f : values) {
      for (const auto& g : values) {
        const auto c = iso_criterion(m, f, g, limits);
        t.record(c.consistent(), name + " f=" + to_string(f) + " g=" + to_string(g));
        if (pradical) t.record(c.radicals_equal == c.modules_isomorphic, name + ": equivalence fails");
      }
    }
  });
}

void check_sheaf_axioms(const FgModule& m, const Limits& limits, Tally& t) {
  if (!m.is_finite()) return;
  if (relevant_primes(m, limits).size() > 4) {
    t.skip();
    return;
  }
  guarded(t, name_of(m), [&] {
    const auto r = sheaf_axioms_check(m, limits);
    t.record(r.identity, name_of(m) + ": identity axiom");
    t.record(r.gluing, name_of(m) + ": gluing axiom");
    t.record(r.transitivity, name_of(m) + ": restriction transitivity");
    t.record(r.homomorphism, name_of(m) + ": restriction is a homomorphism");
  });
}

void check_spectrum_strategies(const FgModule& m, const Limits& limits, Tally& t) {
  if (!m.is_finite()) return;
  if (*m.cardinality() > limits.bruteforce_cap) {
    t.skip();
    return;
  }
  guarded(t, name_of(m), [&] {
    const auto brute = spec_enumerate(m, SpectrumStrategy::Bruteforce, limits);
    const auto classified = spec_enumerate(m, SpectrumStrategy::Classified, limits);
    bool same = brute.primes() == classified.primes();
    for (const auto& [p, fiber] : brute.fibers) {
      if (!same) break;
      const auto& other = classified.fibers.at(p);
      same = fiber.size() == other.size() && std::equal(fiber.begin(), fiber.end(), other.begin());
    }
    t.record(same, name_of(m) + ": strategies disagree");
  });
}

void check_prime_radicals(const FgModule& m, const Limits& limits, Tally& t) {
  if (!m.is_finite()) return;
  if (*m.cardinality() > limits.bruteforce_cap) {
    t.skip();
    return;
  }
  guarded(t, name_of(m), [&] {
    const ElementIndexer ix(m, limits.cardinality_cap);
    for (const auto& mask : enumerate_subgroups(ix)) {
      const Submodule n = ix.submodule_from_mask(mask);
      const Submodule closed = prime_radical(n, m, RadicalMethod::ClosedForm, limits);
      const Submodule brute = prime_radical(n, m, RadicalMethod::Bruteforce, limits);
      t.record(closed == brute, name_of(m) + ": radical of " + n.describe());
      t.record(variety(n, m, limits) == variety(closed, m, limits), name_of(m) + ": V(N) != V(rad N) for " + n.describe());
    }
  });
}

void check_pradical(const FgModule& m, const Limits& limits, Tally& t) {
  guarded(t, name_of(m), [&] {
    const auto r = is_pradical(m, limits);
    if (m.is_prufer()) {
      t.record(!r.pradical && r.certificate && r.certificate->prime.gen() == m.prufer_prime(),
               name_of(m) + ": expected a certificate at the Prufer prime");
    } else {
      t.record(r.pradical, name_of(m) + ": finite module is not P-radical");
    }
  });
}

// --- Suites -----------------------------------------------------------------

namespace {

struct SuiteDef {
  std::string id;
  std::string title;
};

const std::vector<SuiteDef>& suites() {
  static const std::vector<SuiteDef> defs{
      {"2.1", "radical of sums and intersections of ideals"},
      {"2.3", "direct sums stay P-radical; primes lift to direct sums"},
      {"2.4", "localization: prime correspondence, colon commutation, transfer"},
      {"3.1", "stalks are the localizations at primes"},
      {"3.2", "sections over D(fM) are M_f; cover decompositions"},
      {"4.1", "M_f and M_g agree exactly when the radicals of (fM:M), (gM:M) agree"},
      {"sheaf-axioms", "identity, gluing and restriction axioms"},
  };
  return defs;
}

std::vector<Int> radical_identity_generators(const RingDesc& ring, const std::vector<FgModule>& modules) {
  std::set<Int> gens;
  if (ring.kind() == RingDesc::Kind::IntegersMod) {
    for (const auto& d : divisors(ring.modulus())) gens.insert(d);
    gens.insert(0);
  } else {
    for (const long g : {0L, 1L, 2L, 3L, 4L, 5L, 6L, 8L, 9L, 10L, 12L, 15L, 18L, 30L, 36L}) gens.insert(g);
    for (const auto& m : modules) {
      if (m.is_prufer()) {
        gens.insert(m.prufer_prime());
        gens.insert(m.prufer_prime() * m.prufer_prime());
      } else if (m.is_finite()) {
        gens.insert(m.exponent());
      }
    }
  }
  return {gens.begin(), gens.end()};
}

}  // namespace

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& s : suites()) out.push_back(s.id);
    return out;
  }();
  return ids;
}

SuiteReport run_suite(const std::string& id, const std::vector<CorpusEntry>& modules, const Limits& limits) {
  const auto it = std::find_if(suites().begin(), suites().end(), [&](const SuiteDef& s) { return s.id == id; });
  if (it == suites().end()) throw Error(ErrorKind::InvalidArgument, "unknown suite '" + id + "'");
  SuiteReport report{it->id, it->title, modules.size(), {}};
  Tally& t = report.tally;

  if (id == "2.1") {
    std::map<std::string, std::pair<RingDesc, std::vector<FgModule>>> rings;
    for (const auto& e : modules) {
      auto [pos, fresh] = rings.try_emplace(e.module.ring().to_string(), e.module.ring(), std::vector<FgModule>{});
      pos->second.second.push_back(e.module);
    }
    for (const auto& [_, entry] : rings) {
      check_radical_identity(entry.first, radical_identity_generators(entry.first, entry.second), t);
    }
  } else if (id == "2.3") {
    std::vector<FgModule> finite;
    for (const auto& e : modules) {
      check_pradical(e.module, limits, t);
      if (e.module.is_finite()) finite.push_back(e.module);
    }
    if (finite.size() == 1) {
      // A single instance is paired with itself, the zero module and Z/p.
      const FgModule& m = finite.front();
      std::vector<FgModule> partners{m, FgModule::zero(m.ring())};
      for (const auto& p : relevant_primes(m, limits)) partners.push_back(from_invariants(m.ring(), {p}));
      for (const auto& other : partners) check_direct_sum(m, other, limits, t);
    } else {
      for (std::size_t i = 0; i < finite.size(); ++i) {
        for (std::size_t j = i; j < finite.size(); ++j) {
          if (!(finite[i].ring() == finite[j].ring())) continue;
          check_direct_sum(finite[i], finite[j], limits, t);
        }
      }
    }
  } else {
    for (const auto& e : modules) {
      if (id == "2.4") check_localization(e.module, limits, t);
      if (id == "3.1") check_stalks(e.module, limits, t);
      if (id == "3.2") check_sections_of_basic_opens(e.module, limits, t);
      if (id == "4.1") check_iso_criterion(e.module, limits, t);
      if (id == "sheaf-axioms") check_sheaf_axioms(e.module, limits, t);
    }
  }
  return report;
}

}  // namespace modspec
