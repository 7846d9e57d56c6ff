#pragma once

#include <string>
#include <vector>

#include "modspec/corpus.hpp"
#include "modspec/sheaf.hpp"

namespace modspec {

/// Pass/fail counts for a batch of property checks. Only the first few
/// failure messages are kept.
struct Tally {
  std::size_t checks = 0;
  std::size_t passed = 0;
  std::size_t skipped = 0;  // instances outside the enumeration caps
  std::vector<std::string> failures;

  void record(bool ok, const std::string& what);
  void skip() { ++skipped; }
  void merge(const Tally& other);
  [[nodiscard]] bool ok() const { return checks == passed; }
};

/// Largest relevant prime + 1 (at least 2); the Prüfer prime + 1 for Prüfer groups.
Int element_bound(const FgModule& m, const Limits& limits = {});

/// √((I+J) ∩ (I+K)) = √(I + (J∩K)) over all triples drawn from `gens`.
void check_radical_identity(const RingDesc& ring, const std::vector<Int>& gens, Tally& t);
/// The direct sum stays P-radical, and P ⊕ M2, M1 ⊕ Q are prime with the
/// same characteristic ideal for P ∈ Spec(M1), Q ∈ Spec(M2).
void check_direct_sum(const FgModule& a, const FgModule& b, const Limits& limits, Tally& t);
/// Prime correspondence, brute-force localization agreement and the transfer
/// statements for S = powers of f (0 ≤ f ≤ L) and the complements of the
/// relevant primes.
void check_localization(const FgModule& m, const Limits& limits, Tally& t);
/// Every germ space at every prime is isomorphic to M_(p) through φ.
void check_stalks(const FgModule& m, const Limits& limits, Tally& t);
/// ψ: M_f → 𝒪(D(fM)) bijective for 0 ≤ f ≤ L on P-radical M; the Prüfer
/// negative control; cover decompositions for exact covers.
void check_sections_of_basic_opens(const FgModule& m, const Limits& limits, Tally& t);
/// √(fM:M) = √(gM:M) iff M_f ≅ M_g for 1 ≤ f, g ≤ L on P-radical M; the
/// Prüfer counterexample where only the radicals agree.
void check_iso_criterion(const FgModule& m, const Limits& limits, Tally& t);
void check_sheaf_axioms(const FgModule& m, const Limits& limits, Tally& t);
/// Brute-force and classified spectra agree fiber by fiber.
void check_spectrum_strategies(const FgModule& m, const Limits& limits, Tally& t);
/// Closed-form √[p]N equals the intersection of primes containing N, for
/// every submodule N.
void check_prime_radicals(const FgModule& m, const Limits& limits, Tally& t);
void check_pradical(const FgModule& m, const Limits& limits, Tally& t);

struct SuiteReport {
  std::string id;
  std::string title;
  std::size_t modules = 0;
  Tally tally;
  [[nodiscard]] bool ok() const { return tally.ok(); }
};

/// Suite identifiers accepted by `run_suite`, in canonical order (without "all").
const std::vector<std::string>& suite_ids();

/// Runs one suite over the given modules. "all" is expanded by the caller.
SuiteReport run_suite(const std::string& id, const std::vector<CorpusEntry>& modules, const Limits& limits = {});

}  // namespace modspec
