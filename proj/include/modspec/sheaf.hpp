#pragma once

#include <optional>
#include <vector>

#include "modspec/localization.hpp"

namespace modspec {

/// 𝒪(U) for an open U of Spec(M): one value in M_(p) per fiber (p) ⊆ U.
/// Every fiber is open, so these are exactly the locally constant sections.
struct SheafSpace {
  FgModule source;
  OpenSet open;
  std::vector<LocalizedModule> stalks;  // M_(p), aligned with open.fibers
  /// R-module isomorphic to Π M_(p); the zero module for U = ∅.
  FgModule carrier;

  [[nodiscard]] Int cardinality() const;
};

struct Section {
  OpenSet open;
  std::vector<ModElement> values;  // aligned with open.fibers

  friend bool operator==(const Section& a, const Section& b) { return a.open == b.open && a.values == b.values; }
};

SheafSpace sections(const FgModule& m, const OpenSet& u, const Limits& limits = {});

Section zero_section(const SheafSpace& space);
Section section_add(const Section& a, const Section& b);
/// (r·s)(P) = r·s(P)
Section section_scale(const Section& s, const Int& r);
/// s|_V. Throws InvalidArgument when V ⊄ U.
Section restrict(const Section& s, const OpenSet& v);
/// Every section of a finite section space.
std::vector<Section> all_sections(const SheafSpace& space, const Limits& limits = {});

struct StalkResult {
  PrimeSubmodule prime;
  LocalizedModule local;        // M_(p)
  bool germs_enumerated = false;  // false when the minimal-open shortcut was used
  std::size_t germ_pairs = 0;     // pairs ⟨U, s⟩ examined
  std::size_t germ_classes = 0;
  bool well_defined = true;  // φ(⟨U, s⟩) = s(P) is constant on classes
  bool injective = true;
  bool surjective = true;

  [[nodiscard]] bool isomorphic() const { return well_defined && injective && surjective; }
};

/// Germs at P modulo ⟨U, s⟩ ~ ⟨V, t⟩ iff s and t agree on some open
/// W ∋ P inside U ∩ V, with φ: germ ↦ value at P checked against M_(p).
/// Above `limits.cardinality_cap` germ pairs only the fiber itself is used.
StalkResult stalk(const FgModule& m, const PrimeSubmodule& p, const Limits& limits = {});

struct PsiResult {
  LocalizedModule domain;  // M_f
  SheafSpace codomain;     // 𝒪(D(fM))
  std::size_t pairs_checked = 0;
  bool symbolic = false;  // Prüfer source, decided from the empty spectrum
  bool well_defined = true;
  bool injective = true;
  bool surjective = true;

  [[nodiscard]] bool bijective() const { return well_defined && injective && surjective; }
};

/// ψ(m/f^n) = the section with value m/f^n at every fiber of D(fM),
/// checked by enumerating the pairs (m, n).
PsiResult psi_map(const FgModule& m, const Int& f, const Limits& limits = {});

/// ψ_f(m/f^n) evaluated as a section, for naturality checks.
Section psi_section(const SheafSpace& space, const ModElement& m, const Int& denominator);

struct CoverDecomposition {
  std::vector<Ideal> colon_ideals;  // (h_i M : M)
  unsigned exponent = 1;            // n
  std::vector<BezoutTerm> terms;    // r_i ∈ (h_i M : M), b_i
  bool cover_exact = false;         // D(fM) = ∪ D(h_i M)
  bool arithmetic_ok = false;       // f^n − Σ r_i b_i = 0 and r_i ∈ (h_i M : M)
  /// D(fM) = ∪ D(r_i M); only asserted for exact covers.
  std::optional<bool> covered_by_r;
};

/// Requires D(fM) ⊆ ∪ D(h_i M) (throws CoverPrecondition otherwise).
CoverDecomposition cover_decompose(const FgModule& m, const Int& f, const std::vector<Int>& hs,
                                   const Limits& limits = {});

struct IsoCriterion {
  Ideal rad_f;  // √(fM:M)
  Ideal rad_g;
  bool radicals_equal = false;
  bool modules_isomorphic = false;
  bool pradical = false;
  /// The equivalence may only fail for modules that are not P-radical.
  [[nodiscard]] bool consistent() const { return !pradical || radicals_equal == modules_isomorphic; }
};

IsoCriterion iso_criterion(const FgModule& m, const Int& f, const Int& g, const Limits& limits = {});

struct SheafAxiomReport {
  std::size_t opens = 0;
  std::size_t covers = 0;
  std::size_t sections_checked = 0;
  bool identity = true;
  bool gluing = true;
  bool transitivity = true;
  bool homomorphism = true;

  [[nodiscard]] bool passed() const { return identity && gluing && transitivity && homomorphism; }
};

/// Identity and gluing over every open cover of every open, restriction
/// transitivity and additivity. M finite with at most four fibers.
SheafAxiomReport sheaf_axioms_check(const FgModule& m, const Limits& limits = {});

}  // namespace modspec
