#include "modspec/localization.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace modspec {

// --- MultSet ----------------------------------------------------------------

Locus MultSet::locus() const {
  return {kind == Kind::PowersOf ? Locus::Kind::PowersOf : Locus::Kind::ComplementOfPrime, value};
}

bool MultSet::degenerate(const RingDesc& ring) const {
  if (kind == Kind::ComplementOfPrime) return false;
  const Int m = ring.effective_modulus();
  if (m == 1) return true;
  const Int f = ring.reduce(value);
  if (m == 0) return f == 0;
  return strip_common_primes(m, f) == 1;
}

bool MultSet::meets(const Ideal& ideal) const {
  if (ideal.is_unit()) return true;
  if (kind == Kind::PowersOf) return radical_membership_witness(value, ideal).has_value();
  return !ideal.subset_of(Ideal(ideal.ring(), value));
}

std::vector<std::int64_t> MultSet::image_mod(const RingDesc& ring, std::int64_t e) const {
  std::set<std::int64_t> out;
  const auto mod = [e](const Int& x) { return to_i64(floor_mod(x, Int(e))); };
  if (kind == Kind::PowersOf) {
    const std::int64_t f = mod(ring.reduce(value));
    std::int64_t x = 1 % e;
    while (out.insert(x).second) x = static_cast<std::int64_t>((static_cast<__int128>(x) * f) % e);
    return {out.begin(), out.end()};
  }
  const std::int64_t p = to_i64(value);
  if (ring.kind() == RingDesc::Kind::IntegersMod) {
    const std::int64_t n = to_i64(ring.modulus());
    for (std::int64_t s = 0; s < n; ++s) {
      if (s % p != 0) out.insert(s % e);
    }
  } else if (p == 0) {
    for (std::int64_t s = 1; s <= e; ++s) out.insert(s % e);
  } else {
    // Residues mod e·p decide both s mod e and whether p | s.
    for (std::int64_t s = 1; s <= e * p; ++s) {
      if (s % p != 0) out.insert(s % e);
    }
  }
  return {out.begin(), out.end()};
}

std::string MultSet::to_string() const {
  return (kind == Kind::PowersOf ? "PowersOf(" : "ComplementOfPrime(") + modspec::to_string(value) + ")";
}

// --- LocalizedModule --------------------------------------------------------

std::string LocalizedModule::describe() const {
  std::ostringstream os;
  os << source.describe() << " localized at " << set.to_string() << " = " << carrier.describe();
  return os.str();
}

ModElement LocalizedModule::fraction(const ModElement& m, const Int& s) const {
  if (!(m.parent() == source)) throw Error(ErrorKind::InvalidArgument, "element is not in the source module");
  if (special == Special::Zero) return ModElement::zero(carrier);
  if (special == Special::Prufer) {
    const Int& den = m.coords()[1];
    const auto inv = inverse_mod(s, den);
    if (!inv) throw Error(ErrorKind::InvalidArgument, "denominator does not act invertibly");
    return {carrier, {m.coords()[0] * *inv, den}};
  }
  if (!carrier.is_finite()) throw Error(ErrorKind::UnsupportedModule, "fractions need a finite localization");
  IntVector c(carrier.dimension(), Int(0));
  for (std::size_t j = 0; j < c.size(); ++j) {
    const Int& e = carrier.factors()[j];
    const auto inv = inverse_mod(s, e);
    if (!inv) throw Error(ErrorKind::InvalidArgument, to_string(s) + " does not act invertibly on M_S");
    c[j] = m.coords()[source_coordinate[j]] * *inv;
  }
  return {carrier, std::move(c)};
}

LocalizedModule localize(const FgModule& m, const MultSet& s, const Limits& /*limits*/) {
  if (m.ring().kind() == RingDesc::Kind::IntegersLocalized) {
    throw Error(ErrorKind::UnsupportedModule, "module is already over a localized ring");
  }
  const RingDesc ring = RingDesc::localized(m.ring(), s.locus());
  LocalizedModule out{m, s, ring, LocalizedModule::Special::Zero, FgModule::zero(ring), {}};
  if (m.is_prufer()) {
    const Int& p = m.prufer_prime();
    const bool survives = s.kind == MultSet::Kind::PowersOf ? (s.value != 0 && s.value % p != 0) : s.value == p;
    if (survives) {
      out.special = LocalizedModule::Special::Prufer;
      out.carrier = m;
    }
    return out;
  }
  if (ring.is_zero_ring()) return out;
  IntVector kept;
  for (std::size_t i = 0; i < m.factors().size(); ++i) {
    const Int c = ring.canonical_generator(m.factors()[i]);
    if (c == 1) continue;
    kept.push_back(c);
    out.source_coordinate.push_back(i);
  }
  for (std::size_t j = 0; j < m.free_rank(); ++j) out.source_coordinate.push_back(m.factors().size() + j);
  out.carrier = from_invariants(ring, kept, m.free_rank());
  if (out.carrier.factors() != kept) {
    throw Error(ErrorKind::Violation, "localized factors lost their divisibility chain");
  }
  if (!out.carrier.is_zero()) out.special = LocalizedModule::Special::Standard;
  return out;
}

LocalizedModule localize_bruteforce(const FgModule& m, const MultSet& s, const Limits& limits) {
  if (!m.is_finite()) throw Error(ErrorKind::UnsupportedModule, "brute-force localization needs a finite module");
  const ElementIndexer ix(m, limits.cardinality_cap);
  const std::int64_t e = to_i64(m.exponent());
  const auto image = s.image_mod(m.ring(), e);
  if (static_cast<std::int64_t>(image.size()) * ix.size() > 64 * limits.cardinality_cap) {
    throw Error(ErrorKind::CapExceeded, "too many fractions to enumerate");
  }
  // Some u ∈ S kills z iff the product of the whole (closed) image does.
  std::int64_t u_star = 1 % e;
  for (const auto t : image) u_star = static_cast<std::int64_t>((static_cast<__int128>(u_star) * t) % e);
  const auto kills = [&](std::int64_t x) { return ix.scale(x, u_star) == 0; };

  // Class representatives (x, s); a new pair joins the first class it matches.
  std::vector<std::pair<std::int64_t, std::int64_t>> reps;
  for (const auto t : image) {
    for (std::int64_t x = 0; x < ix.size(); ++x) {
      bool found = false;
      for (const auto& [y, r] : reps) {
        // (x, t) ~ (y, r) iff u*(r·x − t·y) = 0
        if (kills(ix.add(ix.scale(x, r), ix.negate(ix.scale(y, t))))) {
          found = true;
          break;
        }
      }
      if (!found) reps.emplace_back(x, t);
    }
  }
  // d·(x/t) = 0 iff u*·d·x = 0. Counting d-torsion for prime powers d
  // recovers the invariant factors.
  std::map<Int, std::vector<unsigned>> partitions;  // prime -> exponents of its cyclic factors
  for (const auto& p : relevant_primes(m, limits)) {
    std::vector<std::int64_t> counts{1};
    for (Int q = p; e % q == 0; q *= p) {
      std::int64_t c = 0;
      for (const auto& [x, t] : reps) {
        if (kills(ix.scale(x, to_i64(q)))) ++c;
      }
      counts.push_back(c);
    }
    // counts[k] = p^{Σ_i min(k, a_i)}; successive ratios give #{i : a_i ≥ k}.
    std::vector<unsigned> at_least;
    for (std::size_t k = 1; k < counts.size(); ++k) {
      unsigned v = 0;
      for (std::int64_t r = counts[k] / counts[k - 1]; r > 1; r /= to_i64(p)) ++v;
      at_least.push_back(v);
    }
    auto& parts = partitions[p];
    for (std::size_t k = 0; k < at_least.size(); ++k) {
      const unsigned exactly = at_least[k] - (k + 1 < at_least.size() ? at_least[k + 1] : 0);
      for (unsigned i = 0; i < exactly; ++i) parts.push_back(static_cast<unsigned>(k + 1));
    }
  }
  std::size_t t = 0;
  for (const auto& [p, parts] : partitions) t = std::max(t, parts.size());
  IntVector factors(t, Int(1));
  for (auto& [p, parts] : partitions) {
    std::sort(parts.begin(), parts.end());
    // Largest exponents go to the last factors.
    for (std::size_t i = 0; i < parts.size(); ++i) factors[t - parts.size() + i] *= pow(p, parts[i]);
  }
  Int order = 1;
  for (const auto& f : factors) order *= f;
  if (order != static_cast<std::int64_t>(reps.size())) {
    throw Error(ErrorKind::Violation, "fraction classes do not form a group of the counted shape");
  }
  const RingDesc ring = RingDesc::localized(m.ring(), s.locus());
  LocalizedModule out{m, s, ring, LocalizedModule::Special::Zero, FgModule::zero(ring), {}};
  if (reps.size() > 1) {
    out.special = LocalizedModule::Special::Standard;
    out.carrier = from_invariants(ring, factors);
  }
  return out;
}

bool localized_iso(const LocalizedModule& a, const LocalizedModule& b) {
  if (a.special != b.special) return false;
  if (a.special == LocalizedModule::Special::Zero) return true;
  if (a.special == LocalizedModule::Special::Prufer) return a.carrier.prufer_prime() == b.carrier.prufer_prime();
  if (a.factors() != b.factors() || a.free_rank() != b.free_rank()) return false;
  if (a.free_rank() == 0) return true;
  if (a.set.kind != b.set.kind) return false;
  if (a.set.kind == MultSet::Kind::ComplementOfPrime) return a.set.value == b.set.value;
  return prime_divisors(a.set.value) == prime_divisors(b.set.value);
}

Ideal extend_ideal(const Ideal& i, const MultSet& s) {
  return {RingDesc::localized(i.ring(), s.locus()), i.gen()};
}

Submodule contract(const Submodule& q, const LocalizedModule& ms, const Limits& limits) {
  if (!(q.parent() == ms.carrier)) throw Error(ErrorKind::InvalidArgument, "Q is not a submodule of M_S");
  const ElementIndexer ix(ms.source, limits.cardinality_cap);
  std::vector<char> mask(static_cast<std::size_t>(ix.size()), 0);
  for (std::int64_t i = 0; i < ix.size(); ++i) {
    mask[static_cast<std::size_t>(i)] = q.contains(ms.image(ix.element(i))) ? 1 : 0;
  }
  return ix.submodule_from_mask(mask);
}

Submodule extend_submodule(const Submodule& p, const LocalizedModule& ms) {
  if (!(p.parent() == ms.source)) throw Error(ErrorKind::InvalidArgument, "P is not a submodule of M");
  if (ms.special != LocalizedModule::Special::Standard || ms.source.is_prufer()) {
    return p.is_full() ? Submodule::full(ms.carrier) : Submodule::zero(ms.carrier);
  }
  std::vector<ModElement> images;
  for (const auto& g : p.generators()) images.push_back(ms.image(g));
  return submodule_from_generators(ms.carrier, images);
}

// --- Prime correspondence ---------------------------------------------------

PrimeCorrespondence prime_correspondence(const FgModule& m, const MultSet& s, const Limits& limits) {
  PrimeCorrespondence out{localize(m, s, limits), {}, 0, true, true, true, true, {}};
  if (m.is_prufer()) return out;  // primeless on both sides
  if (!m.is_finite()) throw Error(ErrorKind::UnsupportedModule, "prime correspondence needs a finite module");
  const LocalizedModule& ms = out.ms;
  const SpectrumView source = spec_enumerate(m, SpectrumStrategy::Both, limits);
  const SpectrumView target = spec_enumerate(ms.carrier, SpectrumStrategy::Both, limits);
  const auto targets = target.all();
  out.target_size = targets.size();
  const auto complain = [&](bool& flag, const std::string& what) {
    flag = false;
    out.violations.push_back(what);
  };

  std::set<Submodule> hit;
  for (const auto& prime : source.all()) {
    const Submodule ps = extend_submodule(prime.sub, ms);
    const bool avoids = !s.meets(prime.char_ideal);
    if (avoids == ps.is_full()) {
      complain(out.bijective, "(P:M) ∩ S = ∅ disagrees with P_S ≠ M_S at P = " + prime.sub.describe());
    }
    if (!avoids) continue;
    const auto it = std::find_if(targets.begin(), targets.end(), [&](const PrimeSubmodule& q) { return q.sub == ps; });
    if (it == targets.end()) {
      complain(out.bijective, "P_S is not prime for P = " + prime.sub.describe());
      continue;
    }
    if (!hit.insert(ps).second) complain(out.bijective, "two primes share the image " + ps.describe());
    if (!(contract(ps, ms, limits) == prime.sub)) {
      complain(out.round_trip, "(P_S)^c differs from P = " + prime.sub.describe());
    }
    if (!(extend_ideal(prime.char_ideal, s) == it->char_ideal)) {
      complain(out.colon_commutes, "(P:M)_S differs from (P_S:M_S) at P = " + prime.sub.describe());
    }
    out.pairs.push_back({prime, *it});
  }
  if (hit.size() != targets.size()) complain(out.bijective, "some prime of M_S is not of the form P_S");
  for (const auto& q : targets) {
    const Submodule qc = contract(q.sub, ms, limits);
    if (!(extend_submodule(qc, ms) == q.sub)) complain(out.round_trip, "(Q^c)_S differs from Q = " + q.sub.describe());
  }
  for (const auto& a : out.pairs) {
    for (const auto& b : out.pairs) {
      if (a.prime.sub.contains(b.prime.sub) != a.localized.sub.contains(b.localized.sub)) {
        complain(out.order_preserving, "inclusion not preserved between " + b.prime.sub.describe() + " and " +
                                           a.prime.sub.describe());
      }
    }
  }
  return out;
}

// --- Transfer statements ----------------------------------------------------

bool TransferReport::passed() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const TransferClause& c) { return c.passed(); });
}

namespace {

/// True when √[p](qM) ≠ M for every prime q ⊇ Ann(M).
bool radicals_proper(const FgModule& m, const Limits& limits) {
  if (m.is_prufer()) return false;  // V(Ann) is nonempty, √[p] of anything is M
  for (const auto& q : relevant_primes(m, limits)) {
    const auto n = ideal_times_module(Ideal(m.ring(), q), m);
    if (prime_radical(n, m, RadicalMethod::ClosedForm, limits).is_full()) return false;
  }
  return true;
}

Ideal intersect_all(const RingDesc& ring, const std::vector<Ideal>& ideals) {
  Ideal acc = Ideal::unit(ring);
  for (const auto& i : ideals) acc = ideal_intersect(acc, i);
  return acc;
}

/// Primes of R examined for V(Ann(M)): the relevant primes, or for the
/// Prüfer group its own prime and the smallest other one.
std::vector<Int> local_primes(const FgModule& m, const Limits& limits) {
  if (!m.is_prufer()) return relevant_primes(m, limits);
  return {m.prufer_prime(), m.prufer_prime() == 2 ? Int(3) : Int(2)};
}

}  // namespace

TransferReport verify_localization_transfer(const FgModule& m, const std::vector<MultSet>& witnesses,
                                            const Limits& limits) {
  if (!m.is_finite() && !m.is_prufer()) {
    throw Error(ErrorKind::UnsupportedModule, "transfer checks need a finite module or a Prufer group");
  }
  TransferReport report;
  const bool m_pradical = is_pradical(m, limits).pradical;
  const SpectrumView spec = spec_enumerate(m, SpectrumStrategy::Both, limits);

  for (const auto& s : witnesses) {
    const LocalizedModule ms = localize(m, s, limits);
    const bool proper = radicals_proper(ms.carrier, limits);

    TransferClause preserve{"localization preserves P-radical", "S = " + s.to_string(), m_pradical && proper, false};
    preserve.conclusion = is_pradical(ms.carrier, limits).pradical;
    report.clauses.push_back(preserve);

    if (m.is_prufer()) continue;
    // ∩_{P ∈ V(𝒫M)} (P:M)_S = (∩_{P ∈ V(𝒫M)} (P:M))_S for 𝒫 ⊇ Ann(M).
    TransferClause commute{"localization commutes with the prime intersection", "S = " + s.to_string(), proper,
                           true};
    const RingDesc rs = RingDesc::localized(m.ring(), s.locus());
    for (const auto& p : relevant_primes(m, limits)) {
      const Ideal c = colon(ideal_times_module(Ideal(m.ring(), p), m), m);
      std::vector<Ideal> local, global;
      for (const auto& prime : spec.all()) {
        if (!c.subset_of(prime.char_ideal)) continue;
        local.push_back(extend_ideal(prime.char_ideal, s));
        global.push_back(prime.char_ideal);
      }
      const Ideal lhs = intersect_all(rs, local);
      const Ideal rhs = extend_ideal(intersect_all(m.ring(), global), s);
      commute.conclusion = commute.conclusion && lhs == rhs;
    }
    report.clauses.push_back(commute);

    // {(P:M)_S : P ∈ V(IM), (P:M) ∩ S = ∅} = {(Q:M_S) : Q ∈ V(I_S M_S)}.
    TransferClause varieties{"characteristic ideals of V(IM) correspond", "S = " + s.to_string(), true, true};
    const SpectrumView local_spec = spec_enumerate(ms.carrier, SpectrumStrategy::Both, limits);
    for (const auto& d : divisors(m.exponent())) {
      const Ideal i(m.ring(), d);
      const Ideal ci = colon(ideal_times_module(i, m), m);
      std::set<Int> lhs, rhs;
      for (const auto& prime : spec.all()) {
        if (ci.subset_of(prime.char_ideal) && !s.meets(prime.char_ideal)) {
          lhs.insert(extend_ideal(prime.char_ideal, s).gen());
        }
      }
      const Ideal is = extend_ideal(i, s);
      const Ideal cis = colon(ideal_times_module(is, ms.carrier), ms.carrier);
      for (const auto& q : local_spec.all()) {
        if (cis.subset_of(q.char_ideal)) rhs.insert(q.char_ideal.gen());
      }
      varieties.conclusion = varieties.conclusion && lhs == rhs;
    }
    report.clauses.push_back(varieties);
  }

  // Local-to-global: M_(p) nonzero and P-radical for every 𝒫 ⊇ Ann(M).
  TransferClause at_primes{"P-radical at every prime implies P-radical", "primes of V(Ann(M))", true, m_pradical};
  TransferClause at_maximals{"P-radical at maximal ideals with matching annihilators implies P-radical",
                             "maximal ideals of V(Ann(M))", true, m_pradical};
  for (const auto& p : local_primes(m, limits)) {
    const MultSet s = MultSet::complement_of_prime(p);
    const LocalizedModule mp = localize(m, s, limits);
    const bool local_pradical = is_pradical(mp.carrier, limits).pradical;
    at_primes.hypothesis = at_primes.hypothesis && !mp.is_zero() && local_pradical;
    const Ideal ann_local = mp.special == LocalizedModule::Special::Standard || mp.is_zero()
                                ? Ideal(mp.ring, mp.carrier.exponent())
                                : Ideal::zero(mp.ring);
    at_maximals.hypothesis =
        at_maximals.hypothesis && local_pradical && ann_local == extend_ideal(annihilator(m), s);
  }
  if (m.is_prufer()) {
    // (0) also lies in V(Ann(M)) and is not maximal; M_(0) = 0.
    at_primes.hypothesis = false;
  }
  report.clauses.push_back(at_primes);
  report.clauses.push_back(at_maximals);
  return report;
}

}  // namespace modspec
