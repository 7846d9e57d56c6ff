// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "modspec/verify.hpp"

using namespace modspec;

namespace {

using Clock = std::chrono::steady_clock;

const RingDesc Z = RingDesc::integers();

struct Outcome {
  Tally tally;
  std::string note;
  bool extra_ok = true;  // criterion-specific conditions beyond the tally
};

// Exceptions are failures here; the caps are chosen so nothing is skipped.
void attempt(Tally& t, const std::string& what, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    t.record(false, what + ": " + e.what());
  }
}

long small(const Int& v) { return static_cast<long>(to_i64(v)); }

// --- independent oracles ------------------------------------------------------

std::vector<long> prime_divisors(long n) {
  std::vector<long> out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Generator of √(a) over Z; a ≥ 0.
long long radical_oracle(long long a) {
  if (a == 0) return 0;
  long long r = 1;
  for (long long p = 2; p * p <= a; ++p) {
    if (a % p) continue;
    r *= p;
    while (a % p == 0) a /= p;
  }
  return a > 1 ? r * a : r;
}

// Number of elements of ⊕ Z/e_i whose order divides a power of p (p > 0), or
// whose order is coprime to f (p = 0).
long count_elements(const FgModule& m, long f, long p) {
  std::vector<long> es;
  for (const auto& e : m.factors()) es.push_back(small(e));
  long count = 0;
  std::vector<long> x(es.size(), 0);
  while (true) {
    long order = 1;
    for (std::size_t i = 0; i < es.size(); ++i) order = std::lcm(order, es[i] / std::gcd(x[i], es[i]));
    if (p > 0) {
      long o = order;
      while (o % p == 0) o /= p;
      count += o == 1;
    } else {
      count += std::gcd(order, f) == 1;
    }
    std::size_t i = 0;
    while (i < es.size() && ++x[i] == es[i]) x[i++] = 0;
    if (i == es.size()) break;
  }
  return count;
}

// Over Z/e_1 ⊕ … the colon (hM:M) is generated by lcm_i gcd(h, e_i).
long colon_oracle(const FgModule& m, long h) {
  long g = 1;
  for (const auto& e : m.factors()) g = std::lcm(g, std::gcd(h, small(e)));
  return g;
}

// D(rM) for finite M: the primes of the exponent not dividing r.
std::vector<long> basic_open_oracle(const FgModule& m, long r) {
  std::vector<long> out;
  for (const long p : prime_divisors(small(m.exponent()))) {
    if (r % p) out.push_back(p);
  }
  return out;
}

std::vector<long> as_longs(const OpenSet& u) {
  std::vector<long> out;
  for (const auto& p : u.fibers) out.push_back(small(p));
  return out;
}

std::vector<long> open_union_oracle(const FgModule& m, const std::vector<long>& rs) {
  std::vector<long> out;
  for (const long p : prime_divisors(small(m.exponent()))) {
    for (const long r : rs) {
      if (r % p) {
        out.push_back(p);
        break;
      }
    }
  }
  return out;
}

std::vector<Int> int_range(long lo, const Int& hi) {
  std::vector<Int> out;
  for (long v = lo; v <= small(hi); ++v) out.emplace_back(v);
  return out;
}

Int another_prime(const Int& p) { return p == 2 ? Int(3) : Int(2); }

// --- criteria -------------------------------------------------------------------

struct Corpus {
  std::vector<CorpusEntry> all;
  std::vector<CorpusEntry> finite;
  std::vector<CorpusEntry> prufer;
};

Outcome artinian_rings(const Corpus& c) {
  Outcome o;
  const auto start = Clock::now();
  for (const auto& e : c.all) {
    if (e.module.ring().kind() != RingDesc::Kind::IntegersMod) continue;
    attempt(o.tally, e.name, [&] { o.tally.record(is_pradical(e.module).pradical, e.name + " is not P-radical"); });
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  o.extra_ok = secs < 60;
  o.note = std::to_string(o.tally.checks) + " modules over Z/n";
  return o;
}

Outcome strategy_agreement(const Corpus& c) {
  Outcome o;
  for (const auto& e : c.finite) {
    if (*e.module.cardinality() <= 128) check_spectrum_strategies(e.module, Limits{}, o.tally);
  }
  return o;
}

Outcome prime_radicals(const Corpus& c) {
  Outcome o;
  for (const auto& e : c.finite) {
    if (*e.module.cardinality() <= 64) check_prime_radicals(e.module, Limits{}, o.tally);
  }
  return o;
}

Outcome stalks(const Corpus& c) {
  Outcome o;
  for (const auto& e : c.finite) check_stalks(e.module, Limits{}, o.tally);
  return o;
}

Outcome sections_of_basic_opens(const Corpus& c) {
  Outcome o;
  for (const auto& e : c.finite) {
    check_sections_of_basic_opens(e.module, Limits{}, o.tally);
    attempt(o.tally, e.name, [&] {
      // Global sections recover M itself.
      const SheafSpace global = sections(e.module, whole_spectrum(e.module));
      o.tally.record(global.carrier.factors() == e.module.factors() && global.cardinality() == *e.module.cardinality(),
                     e.name + ": O(Spec M) differs from M");
    });
  }
  return o;
}

Outcome iso_criterion_both_ways(const Corpus& c) {
  Outcome o;
  for (const auto& e : c.finite) check_iso_criterion(e.module, Limits{}, o.tally);
  for (const auto& e : c.prufer) {
    attempt(o.tally, e.name, [&] {
      const Int p = e.module.prufer_prime();
      const Int q = another_prime(p);
      const auto r = iso_criterion(e.module, p, q);
      o.tally.record(r.rad_f.is_unit() && r.rad_g.is_unit() && r.radicals_equal, e.name + ": radicals should both be (1)");
      o.tally.record(!r.modules_isomorphic, e.name + ": M_p and M_q should differ");
      o.tally.record(localize(e.module, MultSet::powers_of(p)).is_zero(), e.name + ": M_p should vanish");
      const auto mq = localize(e.module, MultSet::powers_of(q));
      o.tally.record(mq.special == LocalizedModule::Special::Prufer && mq.carrier.prufer_prime() == p,
                     e.name + ": M_q should be M");
    });
  }
  return o;
}

Outcome prufer_controls(const Corpus& c) {
  Outcome o;
  for (const auto& e : c.prufer) {
    attempt(o.tally, e.name, [&] {
      o.tally.record(spec_enumerate(e.module, SpectrumStrategy::Classified).size() == 0, e.name + ": Spec should be empty");
      const auto pr = is_pradical(e.module);
      o.tally.record(!pr.pradical && pr.certificate && pr.certificate->prime.gen() == e.module.prufer_prime(),
                     e.name + ": expected a failing certificate at p");
      const auto psi = psi_map(e.module, 1);
      o.tally.record(psi.codomain.carrier.is_zero() && psi.codomain.cardinality() == 1, e.name + ": O(Spec M) should be 0");
      o.tally.record(!e.module.is_zero() && !psi.bijective(), e.name + ": M should not be recovered");
    });
  }
  return o;
}

Outcome radical_identity(std::mt19937_64& rng) {
  Outcome o;
  for (long n = 2; n <= 60; ++n) {
    std::vector<Int> ideals;  // one generator per ideal of Z/n
    for (long d = 1; d <= n; ++d) {
      if (n % d == 0) ideals.emplace_back(d);
    }
    attempt(o.tally, "Z/" + std::to_string(n),
            [&] { check_radical_identity(RingDesc::integers_mod(n), ideals, o.tally); });
  }
  std::uniform_int_distribution<long long> gen(0, 1'000'000);
  for (int i = 0; i < 1000; ++i) {
    const long long a = gen(rng);
    const long long b = gen(rng);
    const long long cc = gen(rng);
    const std::string what = "Z: (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(cc) + ")";
    attempt(o.tally, what, [&] {
      const Ideal i1(Z, a), j1(Z, b), k1(Z, cc);
      const Ideal lhs = ideal_radical(ideal_intersect(ideal_sum(i1, j1), ideal_sum(i1, k1)));
      const Ideal rhs = ideal_radical(ideal_sum(i1, ideal_intersect(j1, k1)));
      const long long ab = std::gcd(a, b);
      const long long ac = std::gcd(a, cc);
      const long long left = radical_oracle(ab == 0 || ac == 0 ? 0 : std::lcm(ab, ac));
      const long long bc = b == 0 || cc == 0 ? 0 : std::lcm(b, cc);
      const long long right = radical_oracle(std::gcd(a, bc));
      o.tally.record(lhs == rhs && left == right && lhs.gen() == Int(left), what);
    });
  }
  return o;
}

std::vector<MultSet> localization_sets(const FgModule& m) {
  std::vector<MultSet> out;
  for (const auto& f : int_range(0, element_bound(m))) out.push_back(MultSet::powers_of(f));
  for (const auto& p : relevant_primes(m)) out.push_back(MultSet::complement_of_prime(p));
  return out;
}

Outcome correspondence(const Corpus& c) {
  Outcome o;
  for (const auto& e : c.all) {
    for (const auto& s : localization_sets(e.module)) {
      const std::string what = e.name + " at " + s.to_string();
      attempt(o.tally, what, [&] {
        const auto corr = prime_correspondence(e.module, s);
        o.tally.record(corr.round_trip && corr.bijective && corr.colon_commutes && corr.ok(),
                       what + (corr.ok() ? "" : ": " + corr.violations.front()));
      });
    }
  }
  return o;
}

Outcome direct_sums(const Corpus& c, std::mt19937_64& rng) {
  Outcome o;
  const Limits limits;
  std::uniform_int_distribution<std::size_t> pick(0, c.finite.size() - 1);
  int pairs = 0;
  while (pairs < 200) {
    const auto& a = c.finite[pick(rng)].module;
    const auto& b = c.finite[pick(rng)].module;
    if (!(a.ring() == b.ring()) || *a.cardinality() * *b.cardinality() > limits.cardinality_cap) continue;
    check_direct_sum(a, b, limits, o.tally);
    ++pairs;
  }
  o.note = "200 pairs";
  return o;
}

Outcome localization_oracle(const Corpus& c) {
  Outcome o;
  for (const auto& e : c.finite) {
    for (const auto& s : localization_sets(e.module)) {
      const std::string what = e.name + " at " + s.to_string();
      attempt(o.tally, what, [&] {
        const auto l = localize(e.module, s);
        const bool iso = localized_iso(l, localize_bruteforce(e.module, s));
        const long v = small(s.value);
        const long expected = s.kind == MultSet::Kind::PowersOf ? count_elements(e.module, v, 0)
                                                                : count_elements(e.module, 0, v);
        const Int size = l.is_zero() ? Int(1) : *l.carrier.cardinality();
        o.tally.record(iso && size == expected, what);
      });
    }
  }
  return o;
}

Outcome random_covers(const Corpus& c, std::mt19937_64& rng) {
  Outcome o;
  std::vector<const CorpusEntry*> usable;
  for (const auto& e : c.finite) {
    if (!relevant_primes(e.module).empty()) usable.push_back(&e);
  }
  std::uniform_int_distribution<std::size_t> pick(0, usable.size() - 1);
  std::uniform_int_distribution<int> how_many(1, 3);
  int covers = 0;
  while (covers < 100) {
    const CorpusEntry& e = *usable[pick(rng)];
    const long bound = small(element_bound(e.module));
    std::uniform_int_distribution<long> elem(0, bound);
    const long f = elem(rng);
    std::vector<long> hs(static_cast<std::size_t>(how_many(rng)));
    for (auto& h : hs) h = elem(rng);
    // A valid cover: the D(h_i M) union to exactly D(fM).
    if (open_union_oracle(e.module, hs) != basic_open_oracle(e.module, f)) continue;
    ++covers;
    const std::string what = e.name + " f=" + std::to_string(f);
    attempt(o.tally, what, [&] {
      const auto d = cover_decompose(e.module, f, std::vector<Int>(hs.begin(), hs.end()));
      bool ok = d.arithmetic_ok && d.cover_exact && d.covered_by_r == std::optional<bool>(true);
      // f^n − Σ r_i b_i in R, and r_i ∈ (h_i M : M).
      const Int modulus = e.module.ring().kind() == RingDesc::Kind::IntegersMod ? e.module.ring().modulus() : Int(0);
      Int diff = 1;
      for (unsigned k = 0; k < d.exponent; ++k) diff *= f;
      std::vector<long> rs;
      for (std::size_t i = 0; i < d.terms.size(); ++i) {
        diff -= d.terms[i].r * d.terms[i].b;
        const long col = colon_oracle(e.module, hs[i]);
        ok = ok && d.terms[i].r % col == 0 && d.colon_ideals[i].gen() == (modulus == 0 ? Int(col) : Int(std::gcd(col, small(modulus))));
        // Reducing mod the exponent keeps divisibility by its primes.
        const Int exp = e.module.exponent();
        rs.push_back(small(((d.terms[i].r % exp) + exp) % exp));
      }
      if (modulus != 0) diff %= modulus;
      ok = ok && diff == 0;
      // D(fM) = ∪ D(r_i M), by the oracle and by the library.
      OpenSet lib_union;
      for (const auto& t : d.terms) lib_union = open_union(lib_union, basic_open(t.r, e.module));
      ok = ok && open_union_oracle(e.module, rs) == basic_open_oracle(e.module, f) &&
           as_longs(lib_union) == basic_open_oracle(e.module, f);
      o.tally.record(ok, what);
    });
  }
  o.note = "100 covers";
  return o;
}

Outcome sheaf_axioms(const Corpus& c) {
  Outcome o;
  for (const auto& e : c.finite) {
    if (relevant_primes(e.module).size() <= 4) check_sheaf_axioms(e.module, Limits{}, o.tally);
  }
  return o;
}

}  // namespace

int main() {
  Corpus c;
  c.all = generate_corpus();
  for (const auto& e : c.all) (e.module.is_finite() ? c.finite : c.prufer).push_back(e);
  std::mt19937_64 rng(0x5eed2026);

  struct Criterion {
    std::string title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"modules over Z/n are P-radical", [&] { return artinian_rings(c); }},
      {"brute-force and classified spectra agree (|M| <= 128)", [&] { return strategy_agreement(c); }},
      {"prime radicals match the brute-force intersection (|M| <= 64)", [&] { return prime_radicals(c); }},
      {"stalks are isomorphic to M_(p)", [&] { return stalks(c); }},
      {"M_f -> O(D(fM)) is bijective, O(Spec M) = M", [&] { return sections_of_basic_opens(c); }},
      {"radicals of colon ideals decide M_f = M_g; Prufer counterexample", [&] { return iso_criterion_both_ways(c); }},
      {"Prufer groups: empty spectrum, not P-radical, no global sections", [&] { return prufer_controls(c); }},
      {"radical identity for sums and intersections of ideals", [&] { return radical_identity(rng); }},
      {"prime correspondence under localization", [&] { return correspondence(c); }},
      {"direct sums stay P-radical and primes lift", [&] { return direct_sums(c, rng); }},
      {"localize agrees with the brute-force localization", [&] { return localization_oracle(c); }},
      {"random covers decompose with f^n = sum r_i b_i", [&] { return random_covers(c, rng); }},
      {"sheaf identity, gluing and restriction axioms", [&] { return sheaf_axioms(c); }},
  };

  int failed = 0;
  const auto total_start = Clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.tally.record(false, std::string("uncaught: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool pass = o.tally.ok() && o.tally.checks > 0 && o.tally.skipped == 0 && o.extra_ok;
    failed += !pass;
    std::printf("%s %2zu  %-66s %zu/%zu checks, %zu skipped, %.1fs%s%s\n", pass ? "PASS" : "FAIL", i + 1,
                criteria[i].title.c_str(), o.tally.passed, o.tally.checks, o.tally.skipped, secs,
                o.note.empty() ? "" : ", ", o.note.c_str());
    for (const auto& f : o.tally.failures) std::printf("       %s\n", f.c_str());
    std::fflush(stdout);
  }
  const double total = std::chrono::duration<double>(Clock::now() - total_start).count();
  std::printf("%d of %zu criteria failed, %.1fs total\n", failed, criteria.size(), total);
  return failed == 0 ? 0 : 1;
}
