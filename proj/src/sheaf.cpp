#include "modspec/sheaf.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace modspec {

namespace {

void require_finite_or_empty(const FgModule& m, const OpenSet& u) {
  if (!u.empty() && !m.is_finite()) {
    throw Error(ErrorKind::UnsupportedModule, "sections over a nonempty open need a finite module");
  }
}

/// Stalk indexers per fiber, shared by every open of one module.
class FiberIndex {
 public:
  FiberIndex(const FgModule& m, const std::vector<Int>& universe, const Limits& limits) {
    for (const auto& p : universe) {
      locals_.emplace(p, localize(m, MultSet::complement_of_prime(p), limits));
      indexers_.emplace(p, ElementIndexer(locals_.at(p).carrier, limits.cardinality_cap));
    }
  }
  [[nodiscard]] const ElementIndexer& at(const Int& p) const { return indexers_.at(p); }
  [[nodiscard]] const LocalizedModule& local(const Int& p) const { return locals_.at(p); }

  /// Every section over u as value indices aligned with u.fibers.
  [[nodiscard]] std::vector<std::vector<std::int64_t>> sections(const OpenSet& u, const Limits& limits) const {
    std::int64_t total = 1;
    for (const auto& p : u.fibers) {
      total *= at(p).size();
      if (total > limits.cardinality_cap) throw Error(ErrorKind::CapExceeded, "section space exceeds the cap");
    }
    std::vector<std::vector<std::int64_t>> out;
    out.reserve(static_cast<std::size_t>(total));
    for (std::int64_t code = 0; code < total; ++code) {
      std::vector<std::int64_t> s;
      std::int64_t rest = code;
      for (const auto& p : u.fibers) {
        s.push_back(rest % at(p).size());
        rest /= at(p).size();
      }
      out.push_back(std::move(s));
    }
    return out;
  }

 private:
  std::map<Int, LocalizedModule> locals_;
  std::map<Int, ElementIndexer> indexers_;
};

/// Values of s on the fibers of w (w ⊆ u).
std::vector<std::int64_t> restrict_indices(const std::vector<std::int64_t>& s, const OpenSet& u, const OpenSet& w) {
  std::vector<std::int64_t> out;
  for (const auto& p : w.fibers) {
    const auto it = std::lower_bound(u.fibers.begin(), u.fibers.end(), p);
    out.push_back(s[static_cast<std::size_t>(it - u.fibers.begin())]);
  }
  return out;
}

std::uint64_t fiber_bits(const OpenSet& u) {
  std::uint64_t bits = 0;
  for (const auto& p : u.fibers) {
    const auto it = std::lower_bound(u.universe.begin(), u.universe.end(), p);
    bits |= 1ULL << (it - u.universe.begin());
  }
  return bits;
}

}  // namespace

// --- Sections ---------------------------------------------------------------

Int SheafSpace::cardinality() const {
  Int c = 1;
  for (const auto& s : stalks) c *= *s.carrier.cardinality();
  return c;
}

SheafSpace sections(const FgModule& m, const OpenSet& u, const Limits& limits) {
  require_finite_or_empty(m, u);
  const auto universe = relevant_primes(m, limits);
  for (const auto& p : u.fibers) {
    if (!std::binary_search(universe.begin(), universe.end(), p)) {
      throw Error(ErrorKind::InvalidArgument, "(" + to_string(p) + ") is not a fiber of Spec(M)");
    }
  }
  SheafSpace space{m, OpenSet{universe, u.fibers}, {}, FgModule::zero(m.ring())};
  IntVector factors;
  for (const auto& p : u.fibers) {
    space.stalks.push_back(localize(m, MultSet::complement_of_prime(p), limits));
    const auto& f = space.stalks.back().factors();
    factors.insert(factors.end(), f.begin(), f.end());
  }
  if (!factors.empty()) space.carrier = from_invariants(m.ring(), factors);
  return space;
}

Section zero_section(const SheafSpace& space) {
  Section s{space.open, {}};
  for (const auto& st : space.stalks) s.values.push_back(ModElement::zero(st.carrier));
  return s;
}

Section section_add(const Section& a, const Section& b) {
  if (!(a.open == b.open)) throw Error(ErrorKind::InvalidArgument, "sections over different opens");
  Section out{a.open, {}};
  for (std::size_t i = 0; i < a.values.size(); ++i) out.values.push_back(a.values[i] + b.values[i]);
  return out;
}

Section section_scale(const Section& s, const Int& r) {
  Section out{s.open, {}};
  for (const auto& v : s.values) out.values.push_back(v.scaled(r));
  return out;
}

Section restrict(const Section& s, const OpenSet& v) {
  if (!v.subset_of(s.open)) throw Error(ErrorKind::InvalidArgument, "restriction target is not inside the open");
  Section out{OpenSet{s.open.universe, v.fibers}, {}};
  for (const auto& p : v.fibers) {
    const auto it = std::lower_bound(s.open.fibers.begin(), s.open.fibers.end(), p);
    out.values.push_back(s.values[static_cast<std::size_t>(it - s.open.fibers.begin())]);
  }
  return out;
}

std::vector<Section> all_sections(const SheafSpace& space, const Limits& limits) {
  if (space.cardinality() > limits.cardinality_cap) throw Error(ErrorKind::CapExceeded, "section space exceeds the cap");
  std::vector<ElementIndexer> ix;
  for (const auto& st : space.stalks) ix.emplace_back(st.carrier, limits.cardinality_cap);
  const auto total = to_i64(space.cardinality());
  std::vector<Section> out;
  for (std::int64_t code = 0; code < total; ++code) {
    Section s{space.open, {}};
    std::int64_t rest = code;
    for (const auto& x : ix) {
      s.values.push_back(x.element(rest % x.size()));
      rest /= x.size();
    }
    out.push_back(std::move(s));
  }
  return out;
}

// --- Stalks -----------------------------------------------------------------

StalkResult stalk(const FgModule& m, const PrimeSubmodule& prime, const Limits& limits) {
  const Int p = prime.char_ideal.gen();
  StalkResult out{prime, localize(m, MultSet::complement_of_prime(p), limits)};
  const auto universe = relevant_primes(m, limits);
  const FiberIndex fx(m, universe, limits);
  const ElementIndexer& target = fx.at(p);

  std::vector<OpenSet> neighborhoods;
  std::size_t pairs = 0;
  for (auto& u : all_open_sets(universe)) {
    if (!u.contains(p)) continue;
    std::size_t size = 1;
    for (const auto& q : u.fibers) size *= static_cast<std::size_t>(fx.at(q).size());
    pairs += size;
    neighborhoods.push_back(std::move(u));
  }
  out.germs_enumerated = pairs <= static_cast<std::size_t>(limits.cardinality_cap);
  if (!out.germs_enumerated) neighborhoods = {OpenSet{universe, {p}}};

  struct Germ {
    std::size_t open;
    std::vector<std::int64_t> values;
  };
  std::vector<Germ> reps;
  std::vector<std::int64_t> rep_value;  // φ of each class
  const auto equivalent = [&](const Germ& a, const Germ& b) {
    const OpenSet& u = neighborhoods[a.open];
    const OpenSet& v = neighborhoods[b.open];
    const OpenSet uv = open_intersection(u, v);
    for (const auto& w : neighborhoods) {
      if (!w.subset_of(uv)) continue;
      if (restrict_indices(a.values, u, w) == restrict_indices(b.values, v, w)) return true;
    }
    return false;
  };
  for (std::size_t k = 0; k < neighborhoods.size(); ++k) {
    const OpenSet& u = neighborhoods[k];
    const auto at_p = static_cast<std::size_t>(std::lower_bound(u.fibers.begin(), u.fibers.end(), p) - u.fibers.begin());
    for (auto& s : fx.sections(u, limits)) {
      ++out.germ_pairs;
      const std::int64_t value = s[at_p];
      Germ g{k, std::move(s)};
      const auto it = std::find_if(reps.begin(), reps.end(), [&](const Germ& r) { return equivalent(r, g); });
      if (it == reps.end()) {
        reps.push_back(std::move(g));
        rep_value.push_back(value);
      } else if (rep_value[static_cast<std::size_t>(it - reps.begin())] != value) {
        out.well_defined = false;
      }
    }
  }
  out.germ_classes = reps.size();
  const std::set<std::int64_t> values(rep_value.begin(), rep_value.end());
  out.injective = values.size() == rep_value.size();
  out.surjective = static_cast<std::int64_t>(values.size()) == target.size();
  return out;
}

// --- ψ ----------------------------------------------------------------------

Section psi_section(const SheafSpace& space, const ModElement& m, const Int& denominator) {
  Section s{space.open, {}};
  for (const auto& st : space.stalks) s.values.push_back(st.fraction(m, denominator));
  return s;
}

PsiResult psi_map(const FgModule& m, const Int& f, const Limits& limits) {
  const OpenSet u = m.is_prufer() ? OpenSet{} : basic_open(f, m, limits);
  PsiResult out{localize(m, MultSet::powers_of(f), limits), sections(m, u, limits)};
  if (m.is_prufer()) {
    // Spec(M) = ∅, so 𝒪(D(fM)) = 0 and ψ is injective only when M_f = 0.
    out.symbolic = true;
    out.injective = out.domain.is_zero();
    return out;
  }
  const ElementIndexer source(m, limits.cardinality_cap);
  const ElementIndexer domain(out.domain.carrier, limits.cardinality_cap);
  std::vector<ElementIndexer> stalks;
  for (const auto& st : out.codomain.stalks) stalks.emplace_back(st.carrier, limits.cardinality_cap);

  // Denominators f^n for n up to the period of f modulo the exponent.
  const Int e = m.exponent();
  std::vector<Int> denominators;
  std::set<Int> seen;
  for (Int d = floor_mod(Int(1), e == 1 ? Int(2) : e); seen.insert(d).second; d = floor_mod(d * f, e == 1 ? Int(2) : e)) {
    denominators.push_back(d);
  }
  std::map<std::int64_t, std::vector<std::int64_t>> image;
  std::set<std::vector<std::int64_t>> hit;
  for (std::int64_t i = 0; i < source.size(); ++i) {
    const ModElement x = source.element(i);
    for (const auto& d : denominators) {
      ++out.pairs_checked;
      const std::int64_t key = domain.index(out.domain.fraction(x, d));
      std::vector<std::int64_t> section;
      for (std::size_t j = 0; j < stalks.size(); ++j) {
        section.push_back(stalks[j].index(out.codomain.stalks[j].fraction(x, d)));
      }
      const auto [it, fresh] = image.emplace(key, section);
      if (!fresh && it->second != section) out.well_defined = false;
      hit.insert(std::move(section));
    }
  }
  out.injective = hit.size() == image.size() && static_cast<std::int64_t>(image.size()) == domain.size();
  out.surjective = Int(hit.size()) == out.codomain.cardinality();
  return out;
}

// --- Covers -----------------------------------------------------------------

CoverDecomposition cover_decompose(const FgModule& m, const Int& f, const std::vector<Int>& hs, const Limits& limits) {
  if (hs.empty()) throw Error(ErrorKind::InvalidArgument, "cover needs at least one h");
  const OpenSet df = m.is_prufer() ? OpenSet{} : basic_open(f, m, limits);
  OpenSet cover{df.universe, {}};
  for (const auto& h : hs) {
    if (!m.is_prufer()) cover = open_union(cover, basic_open(h, m, limits));
  }
  if (!df.subset_of(cover)) {
    throw Error(ErrorKind::CoverPrecondition, "D(fM) is not contained in the union of the D(h_i M)");
  }
  CoverDecomposition out;
  for (const auto& h : hs) out.colon_ideals.push_back(colon(scalar_multiple_submodule(h, m), m));
  const BezoutDecomposition d = bezout_decompose(f, out.colon_ideals);
  out.exponent = d.exponent;
  out.terms = d.terms;
  out.cover_exact = df == cover;
  out.arithmetic_ok = verify_bezout(f, out.colon_ideals, d);
  if (out.cover_exact) {
    OpenSet by_r{df.universe, {}};
    for (const auto& t : d.terms) {
      if (!m.is_prufer()) by_r = open_union(by_r, basic_open(t.r, m, limits));
    }
    out.covered_by_r = by_r == df;
  }
  return out;
}

IsoCriterion iso_criterion(const FgModule& m, const Int& f, const Int& g, const Limits& limits) {
  IsoCriterion out{ideal_radical(colon(scalar_multiple_submodule(f, m), m), limits.factor_bound),
                   ideal_radical(colon(scalar_multiple_submodule(g, m), m), limits.factor_bound)};
  out.radicals_equal = out.rad_f == out.rad_g;
  out.modules_isomorphic =
      localized_iso(localize(m, MultSet::powers_of(f), limits), localize(m, MultSet::powers_of(g), limits));
  out.pradical = is_pradical(m, limits).pradical;
  return out;
}

// --- Sheaf axioms -----------------------------------------------------------

SheafAxiomReport sheaf_axioms_check(const FgModule& m, const Limits& limits) {
  if (!m.is_finite()) throw Error(ErrorKind::UnsupportedModule, "sheaf axioms are checked on finite modules");
  const auto universe = relevant_primes(m, limits);
  if (universe.size() > 4) throw Error(ErrorKind::CapExceeded, "more than four fibers");
  const FiberIndex fx(m, universe, limits);
  const auto opens = all_open_sets(universe);
  SheafAxiomReport report;
  report.opens = opens.size();

  for (const auto& u : opens) {
    const SheafSpace space = sections(m, u, limits);
    const auto secs = all_sections(space, limits);
    report.sections_checked += secs.size();
    std::vector<OpenSet> inside;
    for (const auto& v : opens) {
      if (v.subset_of(u)) inside.push_back(v);
    }

    // Transitivity and additivity of restriction.
    const std::size_t sample = std::min<std::size_t>(secs.size(), 16);
    for (const auto& v : inside) {
      for (const auto& s : secs) {
        const Section sv = restrict(s, v);
        for (const auto& w : inside) {
          if (w.subset_of(v) && !(restrict(sv, w) == restrict(s, w))) report.transitivity = false;
        }
        for (std::size_t j = 0; j < sample; ++j) {
          if (!(restrict(section_add(s, secs[j]), v) == section_add(sv, restrict(secs[j], v)))) {
            report.homomorphism = false;
          }
        }
        for (const Int& r : {Int(0), Int(2), Int(3), Int(-1)}) {
          if (!(restrict(section_scale(s, r), v) == section_scale(sv, r))) report.homomorphism = false;
        }
      }
    }

    // Covers: subsets of the nonempty opens inside u whose union is u.
    std::vector<OpenSet> members;
    for (const auto& v : inside) {
      if (!v.empty()) members.push_back(v);
    }
    const std::uint64_t u_bits = fiber_bits(u);
    std::vector<std::uint64_t> member_bits;
    for (const auto& v : members) member_bits.push_back(fiber_bits(v));
    const auto u_sections = fx.sections(u, limits);
    std::vector<std::uint64_t> zero_bits;  // fibers where s vanishes
    for (const auto& s : u_sections) {
      std::uint64_t z = 0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == 0) z |= fiber_bits(OpenSet{u.universe, {u.fibers[i]}});
      }
      zero_bits.push_back(z);
    }
    for (std::uint64_t choice = 0; choice < (1ULL << members.size()); ++choice) {
      std::uint64_t covered = 0;
      std::vector<std::size_t> cover;
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (choice & (1ULL << i)) {
          covered |= member_bits[i];
          cover.push_back(i);
        }
      }
      if (covered != u_bits) continue;
      ++report.covers;

      // Identity: vanishing on every member forces s = 0.
      for (std::size_t k = 0; k < u_sections.size(); ++k) {
        const bool vanishes_on_cover = std::all_of(cover.begin(), cover.end(), [&](std::size_t i) {
          return (member_bits[i] & ~zero_bits[k]) == 0;
        });
        if (vanishes_on_cover && zero_bits[k] != u_bits) report.identity = false;
      }

      // Gluing: compatible families (s_i ∈ 𝒪(V_i), agreeing on overlaps)
      // by backtracking; each must glue to exactly one section of u.
      std::map<Int, std::int64_t> fixed;
      std::set<std::vector<std::int64_t>> glued;
      std::size_t families = 0;
      std::vector<std::vector<std::vector<std::int64_t>>> member_sections;
      for (const auto i : cover) member_sections.push_back(fx.sections(members[i], limits));
      const auto extend = [&](auto&& self, std::size_t depth) -> void {
        if (depth == cover.size()) {
          ++families;
          std::vector<std::int64_t> s;
          for (const auto& p : u.fibers) s.push_back(fixed.at(p));
          if (!glued.insert(s).second) report.gluing = false;
          for (std::size_t j = 0; j < cover.size(); ++j) {
            // The glued section restricts to the family member.
            std::vector<std::int64_t> r = restrict_indices(s, u, members[cover[j]]);
            std::vector<std::int64_t> own;
            for (const auto& p : members[cover[j]].fibers) own.push_back(fixed.at(p));
            if (r != own) report.gluing = false;
          }
          return;
        }
        const OpenSet& v = members[cover[depth]];
        for (const auto& t : member_sections[depth]) {
          bool compatible = true;
          for (std::size_t i = 0; i < v.fibers.size() && compatible; ++i) {
            const auto it = fixed.find(v.fibers[i]);
            compatible = it == fixed.end() || it->second == t[i];
          }
          if (!compatible) continue;
          std::vector<Int> added;
          for (std::size_t i = 0; i < v.fibers.size(); ++i) {
            if (fixed.emplace(v.fibers[i], t[i]).second) added.push_back(v.fibers[i]);
          }
          self(self, depth + 1);
          for (const auto& p : added) fixed.erase(p);
        }
      };
      if (u.empty()) {
        families = 1;  // the empty family glues to the zero section
      } else {
        extend(extend, 0);
      }
      if (families != u_sections.size()) report.gluing = false;
    }
  }
  return report;
}

}  // namespace modspec
